"""Closed-form throughput and decoding-delay quantities.

Covers the average packet decoding delay (APDD) and its solution-order
form, the completion-time bounds (Geller lower bound, stair-case and
max-degree upper bounds, clique lower bound), the random-graph throughput
model, and the one-round success probability of a semi-online solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algorithms import clique_number
from .errors import EmptyDomain, InvalidSolution
from .graphs import SIdncGraph, Solution, validate_solution
from .state import StateFeedbackMatrix


@dataclass(frozen=True)
class DecodingTimes:
    """Slot index (1-based) at which each wanted (receiver, packet) decodes."""

    times: dict  # (n, k) -> slot

    def __post_init__(self):
        if any(t < 1 for t in self.times.values()):
            raise ValueError("decoding times are 1-based slot indices")


def apdd(times: DecodingTimes) -> float:
    """Arithmetic mean of the decoding times."""
    if not times.times:
        raise EmptyDomain("no decoding events")
    return sum(times.times.values()) / len(times.times)


def solution_decoding_times(sfm: StateFeedbackMatrix, solution: Solution) -> DecodingTimes:
    """Erasure-free playback: packet k decodes at the first set containing it."""
    report = validate_solution(sfm, solution)
    if not report.ok:
        raise InvalidSolution("; ".join(report.violations))
    first = {}
    for idx, cs in enumerate(solution.coding_sets, start=1):
        for k in cs:
            first.setdefault(k, idx)
    times = {}
    for k in range(sfm.packets):
        for n in sfm.target_set(k):
            times[(n, k)] = first[k]
    return DecodingTimes(times)


def solution_apdd(sfm: StateFeedbackMatrix, solution: Solution) -> float:
    """Erasure-free APDD of an ordered solution."""
    return apdd(solution_decoding_times(sfm, solution))


def geller_lower_bound(packets: int, edges: int) -> int:
    """ceil(K^2 / (K + 2*M0)) completion-time lower bound."""
    _check_edge_range(packets, edges)
    return math.ceil(packets**2 / (packets + 2 * edges))


def staircase_upper_bound(packets: int, edges: int) -> int:
    """Achievable stair-case completion-time upper bound in K and M0.

    K when the graph has no edges, then K - j where j is the smallest
    integer with M0 <= j*K - j*(j+1)/2.
    """
    _check_edge_range(packets, edges)
    if edges == 0:
        return packets
    j = 1
    while edges > j * packets - j * (j + 1) // 2:
        j += 1
    return packets - j


def _check_edge_range(packets: int, edges: int):
    if packets < 1:
        raise ValueError("packets must be >= 1")
    if not 0 <= edges <= packets * (packets - 1) // 2:
        raise ValueError("edge count out of range")


def degree_upper_bound(gbar: SIdncGraph) -> int:
    """Max degree of the complement graph plus one."""
    return max(gbar.degrees(), default=0) + 1


def clique_lower_bound(gbar: SIdncGraph) -> int:
    """Largest-clique size of the complement graph (exact, capped)."""
    return clique_number(gbar)


def conflict_probability(receivers: int, erasure_prob: float) -> float:
    """Probability two packets conflict after the systematic phase:
    1 - (1 - Pe^2)^N."""
    return 1.0 - (1.0 - erasure_prob**2) ** receivers


def expected_edge_count(packets: int, receivers: int, erasure_prob: float) -> float:
    """Mean complement-graph edge count under the random-graph model."""
    return packets * (packets - 1) / 2 * conflict_probability(receivers, erasure_prob)


def completion_coefficient(packets: int, erasure_prob: float) -> float:
    """Per-receiver slope c(K, Pe) of the expected minimum completion time.

    Natural logarithms; the vanishing o(1) correction is taken as zero, so
    this is an indicative level, not a sharp prediction.
    """
    if packets < 2:
        raise ValueError("model needs K >= 2")
    return packets / math.log(packets) * 0.5 * math.log(1.0 / (1.0 - erasure_prob**2))


@dataclass(frozen=True)
class ThroughputModel:
    """Random-graph model of the minimum completion time, linear in N."""

    packets: int
    receivers: int
    erasure_prob: float

    @property
    def conflict_probability(self) -> float:
        return conflict_probability(self.receivers, self.erasure_prob)

    @property
    def coefficient(self) -> float:
        return completion_coefficient(self.packets, self.erasure_prob)

    @property
    def expected_min_completion(self) -> float:
        return self.coefficient * self.receivers

    @property
    def expected_edge_count(self) -> float:
        return expected_edge_count(self.packets, self.receivers, self.erasure_prob)


def expected_min_completion(model: ThroughputModel) -> float:
    return model.expected_min_completion


def round_success_probability(
    sfm: StateFeedbackMatrix, solution: Solution, erasure_prob: float
):
    """Probability one semi-online round clears every want.

    prod_k (1 - Pe^d_k)^T_k over packets; packets nobody wants contribute
    a factor of one.  Returns (probability, per-packet diversity vector).
    """
    report = validate_solution(sfm, solution)
    if not report.ok:
        raise InvalidSolution("; ".join(report.violations))
    d = solution.diversities(sfm.packets)
    tk = sfm.target_counts
    p = 1.0
    for k in range(sfm.packets):
        if tk[k]:
            p *= (1.0 - erasure_prob ** d[k]) ** int(tk[k])
    return p, d


def apdd_upper_bound(min_completion: int) -> float:
    """(U_s + 1) / 2 bound on the minimum APDD."""
    if min_completion < 1:
        raise ValueError("completion time must be >= 1")
    return (min_completion + 1) / 2
