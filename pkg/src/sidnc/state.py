"""Packet reception state and the erasure broadcast channel.

The sender's knowledge of the receivers is an N x K binary state feedback
matrix (SFM): entry (n, k) is 1 while receiver n still wants packet k.
Packets and receivers are 0-indexed throughout the library.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConflictingCodingSet


@dataclass(frozen=True)
class BroadcastConfig:
    """Parameters of one broadcast run: block size, audience, channel, RNG."""

    packets: int = 15
    receivers: int = 10
    erasure_prob: float = 0.2
    seed: int = 1
    trials: int = 1000

    def __post_init__(self):
        if self.packets < 1:
            raise ValueError("packets must be >= 1")
        if self.receivers < 1:
            raise ValueError("receivers must be >= 1")
        if not 0.0 <= self.erasure_prob < 1.0:
            raise ValueError("erasure_prob must be in [0, 1)")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


class ErasureChannel:
    """I.i.d. Bernoulli packet erasures.

    One draw is consumed per (slot, receiver), receivers in ascending order
    within a slot.  Streams are derived from (master seed, stream ids) via
    numpy's SeedSequence, so identical ids replay identical erasure patterns.
    """

    def __init__(self, erasure_prob: float, rng: np.random.Generator):
        if not 0.0 <= erasure_prob < 1.0:
            raise ValueError("erasure_prob must be in [0, 1)")
        self.erasure_prob = erasure_prob
        self._rng = rng

    @classmethod
    def for_trial(cls, erasure_prob: float, seed: int, *stream: int) -> "ErasureChannel":
        """Independent substream for one Monte-Carlo trial.

        ``stream`` is any tuple of non-negative ints (e.g. receiver-count
        index, trial index); equal arguments yield bit-identical channels.
        """
        ss = np.random.SeedSequence([int(seed), *map(int, stream)])
        return cls(erasure_prob, np.random.default_rng(ss))

    def with_erasure_prob(self, erasure_prob: float) -> "ErasureChannel":
        """Same underlying stream, different erasure probability."""
        return ErasureChannel(erasure_prob, self._rng)

    def erased(self, count: int) -> np.ndarray:
        """Boolean erasure flags for one slot, ``count`` receivers."""
        return self._rng.random(count) < self.erasure_prob

    def received(self, count: int) -> np.ndarray:
        return ~self.erased(count)


class StateFeedbackMatrix:
    """Immutable N x K wants matrix with derived Wants/Target views."""

    def __init__(self, entries):
        arr = np.asarray(entries)
        if arr.ndim != 2:
            raise ValueError("SFM must be 2-dimensional")
        arr = arr.astype(bool).copy()
        arr.setflags(write=False)
        self._a = arr

    @property
    def entries(self) -> np.ndarray:
        return self._a

    @property
    def receivers(self) -> int:
        return self._a.shape[0]

    @property
    def packets(self) -> int:
        return self._a.shape[1]

    def wants_set(self, n: int) -> tuple:
        """Packets receiver n is still missing."""
        return tuple(int(k) for k in np.flatnonzero(self._a[n]))

    @property
    def wants_sets(self) -> tuple:
        return tuple(self.wants_set(n) for n in range(self.receivers))

    def target_set(self, k: int) -> tuple:
        """Receivers still missing packet k."""
        return tuple(int(n) for n in np.flatnonzero(self._a[:, k]))

    @property
    def target_sets(self) -> tuple:
        return tuple(self.target_set(k) for k in range(self.packets))

    @property
    def target_counts(self) -> np.ndarray:
        return self._a.sum(axis=0)

    @property
    def total_wants(self) -> int:
        """Number of outstanding (receiver, packet) pairs."""
        return int(self._a.sum())

    @property
    def is_complete(self) -> bool:
        return not self._a.any()

    def conflicting_receivers(self, packets) -> list:
        """Receivers wanting two or more of the given packets."""
        cols = sorted(set(packets))
        return [int(n) for n in np.flatnonzero(self._a[:, cols].sum(axis=1) >= 2)]

    def __eq__(self, other):
        return isinstance(other, StateFeedbackMatrix) and np.array_equal(self._a, other._a)

    def __hash__(self):
        return hash(self._a.tobytes())

    def __repr__(self):
        return f"StateFeedbackMatrix({self.receivers}x{self.packets}, wants={self.total_wants})"


def systematic_phase(config: BroadcastConfig, channel: ErasureChannel) -> StateFeedbackMatrix:
    """Broadcast each packet uncoded once and collect the resulting SFM.

    Entry (n, k) is set when receiver n's copy of packet k was erased.
    Exactly K*N Bernoulli draws are consumed, slot-major (packet k first,
    then receivers 0..N-1).
    """
    n, k = config.receivers, config.packets
    a = np.empty((n, k), dtype=bool)
    for col in range(k):
        a[:, col] = channel.erased(n)
    return StateFeedbackMatrix(a)


def apply_reception(sfm: StateFeedbackMatrix, coding_set, received_by) -> StateFeedbackMatrix:
    """Update the SFM after one coded S-IDNC transmission.

    Every receiver in ``received_by`` that wants exactly one packet of the
    coding set decodes that packet; all other entries are unchanged.
    Raises ConflictingCodingSet if the set is not an S-IDNC clique for
    this SFM (some receiver wants two of its packets).
    """
    conflicts = sfm.conflicting_receivers(coding_set)
    if conflicts:
        raise ConflictingCodingSet(
            f"receivers {conflicts} want two or more packets of {sorted(coding_set)}"
        )
    new_sfm, _ = receive_coded(sfm, coding_set, received_by)
    return new_sfm


def receive_coded(sfm: StateFeedbackMatrix, coding_set, received_by):
    """Decode rule shared by S- and G-IDNC: |M ∩ W_n| == 1 clears that entry.

    ``received_by`` may be an iterable of receiver indices or a boolean
    mask of length N.  Returns (updated SFM, decode events [(n, k), ...]).
    No clique precondition is checked here; G-IDNC callers rely on that.
    """
    mask = np.zeros(sfm.receivers, dtype=bool)
    rb = np.asarray(list(received_by) if not isinstance(received_by, np.ndarray) else received_by)
    if rb.dtype == bool:
        mask[: len(rb)] = rb
    else:
        for n in rb:
            mask[int(n)] = True

    cols = sorted(set(int(k) for k in coding_set))
    a = np.array(sfm.entries)
    decoded = []
    for n in np.flatnonzero(mask):
        wanted = [k for k in cols if a[n, k]]
        if len(wanted) == 1:
            a[n, wanted[0]] = False
            decoded.append((int(n), wanted[0]))
    return StateFeedbackMatrix(a), decoded


def fig1_sfm() -> StateFeedbackMatrix:
    """Canonical 5x6 test fixture used throughout the suite.

    Wants sets (0-based): R0={0,4,5}, R1={1,5}, R2={2,3,4}, R3={3,5},
    R4={2,4}; 12 outstanding wants in total.
    """
    a = np.zeros((5, 6), dtype=bool)
    wants = [(0, 4, 5), (1, 5), (2, 3, 4), (3, 5), (2, 4)]
    for n, row in enumerate(wants):
        for k in row:
            a[n, k] = True
    return StateFeedbackMatrix(a)


def format_sfm(sfm: StateFeedbackMatrix) -> str:
    """Textual fixture format: 'K N' header, then N rows of K 0/1 digits."""
    lines = [f"{sfm.packets} {sfm.receivers}"]
    for n in range(sfm.receivers):
        lines.append(" ".join("1" if v else "0" for v in sfm.entries[n]))
    return "\n".join(lines) + "\n"


def parse_sfm(text: str) -> StateFeedbackMatrix:
    lines = [ln for ln in (ln.strip() for ln in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty SFM text")
    try:
        k, n = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"bad SFM header {lines[0]!r}") from exc
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} SFM rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        vals = [int(tok) for tok in ln.split()]
        if len(vals) != k or any(v not in (0, 1) for v in vals):
            raise ValueError(f"bad SFM row {ln!r}")
        rows.append(vals)
    return StateFeedbackMatrix(np.array(rows, dtype=bool))


def load_sfm(path) -> StateFeedbackMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_sfm(fh.read())
