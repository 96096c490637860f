"""Conflict graphs over packets (S-IDNC) and (receiver, packet) pairs (G-IDNC).

Adjacency is kept as per-vertex integer bitmasks: graphs here are small
(K up to a few hundred) and bitmask intersection is what the clique and
coloring algorithms spend their time on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .state import StateFeedbackMatrix


class CodingSet(tuple):
    """Sorted, de-duplicated packet indices XORed into one coded transmission."""

    def __new__(cls, packets):
        pk = tuple(sorted(set(int(p) for p in packets)))
        if not pk:
            raise ValueError("coding set must be nonempty")
        return super().__new__(cls, pk)

    def __getnewargs__(self):
        return (tuple(self),)

    def __repr__(self):
        return f"CodingSet({list(self)})"


@dataclass(frozen=True)
class Solution:
    """Ordered list of coding sets; order matters for decoding delay."""

    coding_sets: tuple

    def __post_init__(self):
        object.__setattr__(
            self,
            "coding_sets",
            tuple(c if isinstance(c, CodingSet) else CodingSet(c) for c in self.coding_sets),
        )

    @property
    def size(self) -> int:
        return len(self.coding_sets)

    def diversities(self, packets: int) -> list:
        """Number of coding sets containing each packet (d_k)."""
        d = [0] * packets
        for cs in self.coding_sets:
            for k in cs:
                d[k] += 1
        return d

    def covered_packets(self) -> set:
        out = set()
        for cs in self.coding_sets:
            out.update(cs)
        return out

    def canonical(self) -> frozenset:
        """Order-insensitive identity, used to merge duplicate solutions."""
        return frozenset(self.coding_sets)

    def __iter__(self):
        return iter(self.coding_sets)

    def __len__(self):
        return len(self.coding_sets)


class DenseGraph:
    """Undirected graph on vertices 0..n-1 with bitmask adjacency rows."""

    def __init__(self, masks):
        self._masks = tuple(int(m) for m in masks)
        n = len(self._masks)
        for i, m in enumerate(self._masks):
            if m >> n:
                raise ValueError("adjacency mask out of range")
            if m & (1 << i):
                raise ValueError("self-loop")
        self.vertex_count = n

    @classmethod
    def from_matrix(cls, adjacency):
        adj = np.asarray(adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be square")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        adj = adj.copy()
        np.fill_diagonal(adj, False)
        masks = [sum(1 << j for j in np.flatnonzero(row)) for row in adj]
        return cls(masks)

    @property
    def masks(self) -> tuple:
        return self._masks

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self._masks) // 2

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self._masks[i] >> j & 1)

    def neighbors(self, i: int) -> list:
        return _bits(self._masks[i])

    def degree(self, i: int) -> int:
        return self._masks[i].bit_count()

    def degrees(self) -> list:
        return [m.bit_count() for m in self._masks]

    def adjacency_matrix(self) -> np.ndarray:
        n = self.vertex_count
        adj = np.zeros((n, n), dtype=bool)
        for i, m in enumerate(self._masks):
            for j in _bits(m):
                adj[i, j] = True
        return adj

    def complement_masks(self) -> list:
        full = (1 << self.vertex_count) - 1
        return [(full ^ m) & ~(1 << i) for i, m in enumerate(self._masks)]

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and self.vertex_count == other.vertex_count
            and self._masks == other._masks
        )

    def __hash__(self):
        return hash((type(self).__name__, self._masks))


class SIdncGraph(DenseGraph):
    """K packets; edge = the two packets can be XORed (no receiver wants both)."""

    def __repr__(self):
        return f"SIdncGraph(K={self.vertex_count}, M0={self.edge_count})"


class GIdncGraph(DenseGraph):
    """One vertex per outstanding (receiver, packet) want."""

    def __init__(self, masks, pairs, packets: int):
        super().__init__(masks)
        self.pairs = tuple((int(n), int(k)) for n, k in pairs)
        self.packets = int(packets)
        if len(self.pairs) != self.vertex_count:
            raise ValueError("one (receiver, packet) pair required per vertex")

    def vertices_of_packet(self, k: int) -> list:
        return [i for i, (_, pk) in enumerate(self.pairs) if pk == k]

    def __eq__(self, other):
        return (
            isinstance(other, GIdncGraph)
            and self.pairs == other.pairs
            and self.masks == other.masks
        )

    def __hash__(self):
        return hash((self.pairs, self.masks))

    def __repr__(self):
        return f"GIdncGraph(T={self.vertex_count}, K={self.packets})"


def _bits(mask: int) -> list:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def build_sidnc_graph(sfm: StateFeedbackMatrix) -> SIdncGraph:
    """Edge (i, j) iff no receiver wants both packets.

    Packets wanted by nobody end up adjacent to everything: they never
    constrain coding.
    """
    a = sfm.entries.astype(np.int32)
    conflicts = a.T @ a  # (i, j) counts receivers wanting both
    adj = conflicts == 0
    np.fill_diagonal(adj, False)
    masks = [sum(1 << j for j in np.flatnonzero(row)) for row in adj]
    return SIdncGraph(masks)


def complement(g: DenseGraph) -> SIdncGraph:
    """Same vertices, opposite adjacency, no self-loops."""
    return SIdncGraph(g.complement_masks())


def build_gidnc_graph(sfm: StateFeedbackMatrix) -> GIdncGraph:
    """One vertex per 1-entry, ordered by (receiver, packet).

    v(m, i) ~ v(n, j) iff i == j, or p_i is not wanted by n and p_j is not
    wanted by m.
    """
    a = sfm.entries
    pairs = [(int(n), int(k)) for n in range(sfm.receivers) for k in range(sfm.packets) if a[n, k]]
    t = len(pairs)
    masks = [0] * t
    for u in range(t):
        m, i = pairs[u]
        for v in range(u + 1, t):
            n, j = pairs[v]
            if i == j or (not a[n, i] and not a[m, j]):
                masks[u] |= 1 << v
                masks[v] |= 1 << u
    return GIdncGraph(masks, pairs, sfm.packets)


def affiliated_sidnc_graph(g: GIdncGraph) -> SIdncGraph:
    """Collapse a G-IDNC graph back to a K-vertex packet graph.

    Packets i and j are joined iff every vertex representing i is adjacent
    to every vertex representing j; packets with no vertices are joined to
    everything (the condition holds vacuously).
    """
    k = g.packets
    verts = [0] * k
    for idx, (_, pk) in enumerate(g.pairs):
        verts[pk] |= 1 << idx
    masks = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            ok = all(g.masks[v] & verts[j] == verts[j] for v in _bits(verts[i]))
            if ok:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return SIdncGraph(masks)


def is_clique(g: DenseGraph, vertices) -> bool:
    vs = sorted(set(int(v) for v in vertices))
    for v in vs:
        if not 0 <= v < g.vertex_count:
            raise IndexError(f"vertex {v} out of range")
    for a_idx, v in enumerate(vs):
        for w in vs[a_idx + 1 :]:
            if not g.adjacent(v, w):
                return False
    return True


@dataclass
class SolutionReport:
    """Outcome of validate_solution: violations are reported, not raised."""

    ok: bool
    violations: list = field(default_factory=list)


def validate_solution(sfm: StateFeedbackMatrix, solution: Solution) -> SolutionReport:
    """Check every coding set is an S-IDNC clique and wanted coverage is full."""
    violations = []
    for idx, cs in enumerate(solution.coding_sets):
        bad = sfm.conflicting_receivers(cs)
        if bad:
            violations.append(
                f"coding set {idx} {list(cs)} conflicts at receivers {bad}"
            )
        if any(not 0 <= k < sfm.packets for k in cs):
            violations.append(f"coding set {idx} {list(cs)} has out-of-range packets")
    wanted = {k for k in range(sfm.packets) if sfm.target_set(k)}
    missing = sorted(wanted - solution.covered_packets())
    if missing:
        violations.append(f"wanted packets not covered: {missing}")
    return SolutionReport(ok=not violations, violations=violations)


def sidnc_graph_to_dot(g: SIdncGraph) -> str:
    """DOT export with 'p<k>' labels and lexicographic edge order."""
    lines = ["graph sidnc {"]
    for i in range(g.vertex_count):
        lines.append(f'  p{i} [label="p{i}"];')
    for i in range(g.vertex_count):
        for j in _bits(g.masks[i]):
            if j > i:
                lines.append(f"  p{i} -- p{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def gidnc_graph_to_dot(g: GIdncGraph) -> str:
    """DOT export with 'v<n>,<k>' labels and lexicographic edge order."""

    def name(idx):
        n, k = g.pairs[idx]
        return f"v{n}_{k}"

    lines = ["graph gidnc {"]
    for idx in range(g.vertex_count):
        n, k = g.pairs[idx]
        lines.append(f'  {name(idx)} [label="v{n},{k}"];')
    for i in range(g.vertex_count):
        for j in _bits(g.masks[i]):
            if j > i:
                lines.append(f"  {name(i)} -- {name(j)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
