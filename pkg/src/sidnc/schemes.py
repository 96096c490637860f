"""Coded transmission phase under different feedback schemes.

Fully-online: feedback after every slot, the solution is recomputed from
scratch each time and its most-wanted coding set is sent.  Semi-online:
the sender transmits a whole solution per round and only then collects
feedback; receiver-side state still evolves slot by slot.  RLNC and a
degree-greedy G-IDNC stand-in serve as baselines.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algorithms import (
    _greedy_clique,
    bron_kerbosch,
    heuristic_solution_search,
    hybrid_solution_search,
    minimum_cover_from_coloring,
    optimal_solution_search,
)
from .analytics import DecodingTimes, apdd
from .errors import BranchLimitExceeded, InvalidSolution
from .graphs import CodingSet, Solution, build_gidnc_graph, build_sidnc_graph, validate_solution
from .state import ErasureChannel, StateFeedbackMatrix, receive_coded

FULLY_ONLINE = "fully-online"
SEMI_ONLINE = "semi-online"
RLNC = "rlnc"
GIDNC_FULLY_ONLINE = "gidnc-fully-online"
GIDNC_SEMI_ONLINE = "gidnc-semi-online"
SCHEMES = (FULLY_ONLINE, SEMI_ONLINE, RLNC, GIDNC_FULLY_ONLINE, GIDNC_SEMI_ONLINE)

OPTIMAL = "optimal"
HYBRID = "hybrid"
HEURISTIC = "heuristic"
ALGORITHMS = (OPTIMAL, HYBRID, HEURISTIC)

DEFAULT_SLOT_CAP_FACTOR = 50


@dataclass(frozen=True)
class SchemeSpec:
    """What to run: feedback scheme, coding algorithm, slot budget."""

    scheme: str = FULLY_ONLINE
    algorithm: str = HEURISTIC  # ignored for RLNC
    slot_cap: int | None = None  # default 50 * K
    validate: bool = False  # raise InvalidSolution on any bad computed solution

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")

    def cap_for(self, packets: int) -> int:
        return self.slot_cap if self.slot_cap is not None else DEFAULT_SLOT_CAP_FACTOR * packets


@dataclass(frozen=True)
class SlotRecord:
    slot: int  # 1-based within the coded phase
    coding_set: tuple
    received: tuple  # per-receiver reception flag
    decoded: tuple  # (receiver, packet) pairs decoded this slot


@dataclass
class TransmissionLog:
    receivers: int
    packets: int
    initial_wants: int
    slots: list = field(default_factory=list)
    completed: bool = True
    round_lengths: list | None = None  # semi-online only
    solution_sizes: list = field(default_factory=list)

    @property
    def completion_time(self) -> int:
        """Last slot at which an outstanding want was cleared (U_T)."""
        return max((rec.slot for rec in self.slots if rec.decoded), default=0)

    @property
    def decoding_times(self) -> DecodingTimes:
        times = {}
        for rec in self.slots:
            for n, k in rec.decoded:
                times[(n, k)] = rec.slot
        return DecodingTimes(times)

    @property
    def apdd_value(self) -> float:
        """Realized APDD of the coded phase (D_T)."""
        return apdd(self.decoding_times)


def order_for_transmission(solution: Solution, sfm: StateFeedbackMatrix) -> Solution:
    """Descending number of targeted receivers, ties lexicographic."""
    tk = sfm.target_counts
    ordered = sorted(
        solution.coding_sets, key=lambda cs: (-sum(int(tk[k]) for k in cs), cs)
    )
    return Solution(tuple(ordered))


def compute_solution(
    sfm: StateFeedbackMatrix,
    algorithm: str,
    erasure_prob: float,
    secondary: str = "delay",
) -> Solution:
    """S-IDNC solution for the current SFM.

    For the optimal algorithm, equal-size candidates are disambiguated by
    the secondary criterion: smallest erasure-free APDD under the
    transmission ordering ("delay", fully-online) or largest one-round
    success probability ("success", semi-online); ties lexicographic.
    """
    g = build_sidnc_graph(sfm)
    if algorithm == HEURISTIC:
        return heuristic_solution_search(g)
    tk = [int(t) for t in sfm.target_counts]
    wanted = [k for k in range(sfm.packets) if tk[k]]
    family = bron_kerbosch(g)
    if algorithm == HYBRID:
        return hybrid_solution_search(family, wanted)
    try:
        candidates = optimal_solution_search(family, wanted, branch_cap=50_000)
    except BranchLimitExceeded:
        # Too many equal-size covers to enumerate: keep the size exact via a
        # coloring-based cover and skip the secondary tie-break.
        fallback = minimum_cover_from_coloring(g, wanted)
        return order_for_transmission(fallback, sfm)
    # Candidates are valid by construction, so the secondary criteria are
    # evaluated without re-validation (this loop dominates per-slot cost).
    if secondary == "success":

        def success_key(s: Solution):
            p = 1.0
            for k in wanted:
                d = sum(1 for cs in s.coding_sets if k in cs)
                p *= (1.0 - erasure_prob**d) ** tk[k]
            return (-p, s.coding_sets)

        return min(candidates, key=success_key)

    total = sfm.total_wants

    def delay_key(s: Solution):
        ordered = sorted(s.coding_sets, key=lambda cs: (-sum(tk[k] for k in cs), cs))
        seen = set()
        cost = 0
        for slot, cs in enumerate(ordered, start=1):
            for k in cs:
                if k not in seen:
                    seen.add(k)
                    cost += slot * tk[k]
        return (cost / total, tuple(ordered))

    best = min(candidates, key=delay_key)
    return order_for_transmission(best, sfm)


def _checked(solution: Solution, sfm: StateFeedbackMatrix, spec: SchemeSpec) -> Solution:
    if spec.validate:
        report = validate_solution(sfm, solution)
        if not report.ok:
            raise InvalidSolution("; ".join(report.violations))
    return solution


def run_fully_online(
    sfm: StateFeedbackMatrix, spec: SchemeSpec, channel: ErasureChannel
) -> TransmissionLog:
    """One coded slot per feedback cycle; sends the most wanted set of S_m."""
    log = TransmissionLog(sfm.receivers, sfm.packets, sfm.total_wants)
    cap = spec.cap_for(sfm.packets)
    current = sfm
    slot = 0
    while not current.is_complete and slot < cap:
        solution = _checked(
            compute_solution(current, spec.algorithm, channel.erasure_prob, "delay"),
            current,
            spec,
        )
        log.solution_sizes.append(solution.size)
        tk = current.target_counts
        coded = min(
            solution.coding_sets, key=lambda cs: (-sum(int(tk[k]) for k in cs), cs)
        )
        slot += 1
        received = channel.received(current.receivers)
        current, decoded = receive_coded(current, coded, received)
        log.slots.append(
            SlotRecord(slot, tuple(coded), tuple(bool(b) for b in received), tuple(decoded))
        )
    log.completed = current.is_complete
    return log


def run_semi_online(
    sfm: StateFeedbackMatrix,
    spec: SchemeSpec,
    channel: ErasureChannel,
    max_rounds: int | None = None,
) -> TransmissionLog:
    """Whole solution per round; the sender's plan never reads mid-round state."""
    log = TransmissionLog(sfm.receivers, sfm.packets, sfm.total_wants, round_lengths=[])
    cap = spec.cap_for(sfm.packets)
    current = sfm
    slot = 0
    while not current.is_complete and slot < cap:
        if max_rounds is not None and len(log.round_lengths) >= max_rounds:
            break
        plan_sfm = current  # snapshot; feedback arrives only at round end
        solution = _checked(
            compute_solution(plan_sfm, spec.algorithm, channel.erasure_prob, "success"),
            plan_sfm,
            spec,
        )
        ordered = order_for_transmission(solution, plan_sfm)
        log.solution_sizes.append(ordered.size)
        length = 0
        for coded in ordered.coding_sets:
            if slot >= cap:
                break
            slot += 1
            length += 1
            received = channel.received(current.receivers)
            current, decoded = receive_coded(current, coded, received)
            log.slots.append(
                SlotRecord(slot, tuple(coded), tuple(bool(b) for b in received), tuple(decoded))
            )
        log.round_lengths.append(length)
    log.completed = current.is_complete
    return log


def run_rlnc(
    sfm: StateFeedbackMatrix, spec: SchemeSpec, channel: ErasureChannel
) -> TransmissionLog:
    """Feedback-free dense-coded baseline.

    Every received slot is innovative; receiver n block-decodes all of its
    wants at its |W_n|-th successful reception.
    """
    log = TransmissionLog(sfm.receivers, sfm.packets, sfm.total_wants)
    cap = spec.cap_for(sfm.packets)
    wants = sfm.wants_sets
    need = [len(w) for w in wants]
    got = [0] * sfm.receivers
    all_packets = tuple(range(sfm.packets))
    slot = 0
    while any(g < n for g, n in zip(got, need)) and slot < cap:
        slot += 1
        received = channel.received(sfm.receivers)
        decoded = []
        for n in range(sfm.receivers):
            if received[n] and got[n] < need[n]:
                got[n] += 1
                if got[n] == need[n]:
                    decoded.extend((n, k) for k in wants[n])
        log.slots.append(
            SlotRecord(slot, all_packets, tuple(bool(b) for b in received), tuple(decoded))
        )
    log.completed = all(g >= n for g, n in zip(got, need))
    return log


def _gidnc_coding_set(graph, vertices) -> CodingSet:
    return CodingSet(sorted({graph.pairs[v][1] for v in vertices}))


def run_gidnc(
    sfm: StateFeedbackMatrix, spec: SchemeSpec, channel: ErasureChannel
) -> TransmissionLog:
    """Degree-greedy G-IDNC baseline (stand-in for published heuristics).

    Fully-online: grow one greedy clique of the per-slot G-IDNC graph.
    Semi-online: transmit a greedy clique partition of the round-start
    graph, ordered like the S-IDNC rounds.
    """
    if spec.scheme == GIDNC_SEMI_ONLINE:
        return _run_gidnc_semi(sfm, spec, channel)
    log = TransmissionLog(sfm.receivers, sfm.packets, sfm.total_wants)
    cap = spec.cap_for(sfm.packets)
    current = sfm
    slot = 0
    while not current.is_complete and slot < cap:
        graph = build_gidnc_graph(current)
        verts = _greedy_clique(graph.masks, (1 << graph.vertex_count) - 1)
        coded = _gidnc_coding_set(graph, verts)
        slot += 1
        received = channel.received(current.receivers)
        current, decoded = receive_coded(current, coded, received)
        log.slots.append(
            SlotRecord(slot, tuple(coded), tuple(bool(b) for b in received), tuple(decoded))
        )
    log.completed = current.is_complete
    return log


def _run_gidnc_semi(sfm, spec, channel) -> TransmissionLog:
    log = TransmissionLog(sfm.receivers, sfm.packets, sfm.total_wants, round_lengths=[])
    cap = spec.cap_for(sfm.packets)
    current = sfm
    slot = 0
    while not current.is_complete and slot < cap:
        plan_sfm = current
        graph = build_gidnc_graph(plan_sfm)
        remaining = (1 << graph.vertex_count) - 1
        sets = []
        while remaining:
            verts = _greedy_clique(graph.masks, remaining)
            sets.append(_gidnc_coding_set(graph, verts))
            remaining &= ~sum(1 << v for v in verts)
        tk = plan_sfm.target_counts
        sets.sort(key=lambda cs: (-sum(int(tk[k]) for k in cs), cs))
        log.solution_sizes.append(len(sets))
        length = 0
        for coded in sets:
            if slot >= cap:
                break
            slot += 1
            length += 1
            received = channel.received(current.receivers)
            current, decoded = receive_coded(current, coded, received)
            log.slots.append(
                SlotRecord(slot, tuple(coded), tuple(bool(b) for b in received), tuple(decoded))
            )
        log.round_lengths.append(length)
    log.completed = current.is_complete
    return log


def run_scheme(
    sfm: StateFeedbackMatrix, spec: SchemeSpec, channel: ErasureChannel
) -> TransmissionLog:
    if spec.scheme == FULLY_ONLINE:
        return run_fully_online(sfm, spec, channel)
    if spec.scheme == SEMI_ONLINE:
        return run_semi_online(sfm, spec, channel)
    if spec.scheme == RLNC:
        return run_rlnc(sfm, spec, channel)
    return run_gidnc(sfm, spec, channel)


def export_trace(log: TransmissionLog) -> str:
    """Tab-separated per-slot trace: slot, packets, reception bits, decodes."""
    lines = []
    for rec in log.slots:
        packets = ",".join(str(k) for k in rec.coding_set)
        bits = "".join("1" if b else "0" for b in rec.received)
        events = " ".join(f"{n}:{k}" for n, k in rec.decoded)
        lines.append(f"{rec.slot}\t{packets}\t{bits}\t{events}")
    return "\n".join(lines) + ("\n" if lines else "")
