"""Conflict-graph construction, the packet-pair graph, and solution checks."""

import numpy as np
import pytest

from sidnc import (
    CodingSet,
    Solution,
    StateFeedbackMatrix,
    affiliated_sidnc_graph,
    build_gidnc_graph,
    build_sidnc_graph,
    complement,
    fig1_sfm,
    is_clique,
    validate_solution,
)
from sidnc.fixtures import FIG1_EDGES, graph_from_edges
from sidnc.graphs import gidnc_graph_to_dot, sidnc_graph_to_dot

from helpers import induced_subgraph_masks, random_sfm


def edge_set(graph):
    return {
        (i, j)
        for i in range(graph.vertex_count)
        for j in range(i + 1, graph.vertex_count)
        if graph.adjacent(i, j)
    }


def test_fixture_conflict_graph_edges():
    g = build_sidnc_graph(fig1_sfm())
    assert g.vertex_count == 6
    assert edge_set(g) == set(FIG1_EDGES)
    assert g.edge_count == 7


def test_conflict_graph_of_completed_broadcast_is_complete():
    sfm = StateFeedbackMatrix(np.zeros((3, 5), dtype=bool))
    g = build_sidnc_graph(sfm)
    assert g.edge_count == 5 * 4 // 2


def test_single_greedy_receiver_blocks_all_coding():
    sfm = StateFeedbackMatrix(np.ones((1, 6), dtype=bool))
    g = build_sidnc_graph(sfm)
    assert g.edge_count == 0


def test_unwanted_packet_is_universal_vertex():
    a = np.zeros((2, 4), dtype=bool)
    a[0, 0] = a[0, 1] = a[1, 2] = True  # packet 3 wanted by nobody
    g = build_sidnc_graph(StateFeedbackMatrix(a))
    assert all(g.adjacent(3, j) for j in range(3))


def test_complement_edge_counts_and_involution():
    g = build_sidnc_graph(fig1_sfm())
    gbar = complement(g)
    assert gbar.edge_count == 15 - 7
    assert edge_set(complement(gbar)) == edge_set(g)
    complete = graph_from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert complement(complete).edge_count == 0


def test_pair_graph_fixture_properties():
    g = build_gidnc_graph(fig1_sfm())
    assert g.vertex_count == 12
    idx = {pair: i for i, pair in enumerate(g.pairs)}
    # receivers 0, 4, 3 can jointly decode packets 0, 2, 3 in one slot
    trio = [idx[(0, 0)], idx[(4, 2)], idx[(3, 3)]]
    assert is_clique(g, trio)


def test_pair_graph_single_entry():
    a = np.zeros((3, 3), dtype=bool)
    a[1, 2] = True
    g = build_gidnc_graph(StateFeedbackMatrix(a))
    assert g.vertex_count == 1
    assert g.pairs == ((1, 2),)
    assert g.edge_count == 0


def test_pair_graph_vertex_count_equals_outstanding_wants():
    rng = np.random.default_rng(3)
    for _ in range(50):
        sfm = random_sfm(rng, 8, 5, 0.35)
        assert build_gidnc_graph(sfm).vertex_count == sfm.total_wants


def test_collapsed_pair_graph_recovers_packet_graph():
    sfm = fig1_sfm()
    assert affiliated_sidnc_graph(build_gidnc_graph(sfm)) == build_sidnc_graph(sfm)


def test_collapsed_pair_graph_identity_on_random_instances():
    rng = np.random.default_rng(17)
    for _ in range(500):
        sfm = random_sfm(rng, 8, 5, 0.35)
        collapsed = affiliated_sidnc_graph(build_gidnc_graph(sfm))
        assert collapsed == build_sidnc_graph(sfm)


def test_collapsed_graph_of_single_receiver_is_edgeless():
    sfm = StateFeedbackMatrix(np.ones((1, 5), dtype=bool))
    g = affiliated_sidnc_graph(build_gidnc_graph(sfm))
    assert g.edge_count == 0


def test_collapsed_graph_makes_unrepresented_packet_universal():
    a = np.zeros((2, 4), dtype=bool)
    a[0, 0] = a[1, 1] = True  # packets 2, 3 have no pair-graph vertices
    g = affiliated_sidnc_graph(build_gidnc_graph(StateFeedbackMatrix(a)))
    assert all(g.adjacent(2, j) for j in range(4) if j != 2)
    assert all(g.adjacent(3, j) for j in range(4) if j != 3)


def test_column_restriction_yields_induced_subgraph():
    rng = np.random.default_rng(29)
    for _ in range(40):
        sfm = random_sfm(rng, 8, 5, 0.4)
        g = build_sidnc_graph(sfm)
        keep = sorted(
            rng.choice(sfm.packets, size=max(1, sfm.packets // 2), replace=False)
        )
        restricted = build_sidnc_graph(StateFeedbackMatrix(sfm.entries[:, keep]))
        assert list(restricted.masks) == induced_subgraph_masks(g, keep)


def test_packet_clique_lifts_to_pair_graph_clique():
    from sidnc.algorithms import bron_kerbosch

    rng = np.random.default_rng(31)
    for _ in range(40):
        sfm = random_sfm(rng, 7, 5, 0.35)
        gs = build_sidnc_graph(sfm)
        gg = build_gidnc_graph(sfm)
        idx = {pair: i for i, pair in enumerate(gg.pairs)}
        cliques = bron_kerbosch(gs).cliques
        cs = cliques[int(rng.integers(0, len(cliques)))]
        lifted = [idx[(n, k)] for k in cs for n in sfm.target_set(k)]
        if lifted:
            assert is_clique(gg, lifted)


def test_is_clique_on_fixture_graph():
    g = build_sidnc_graph(fig1_sfm())
    assert is_clique(g, (0, 1, 2))
    assert not is_clique(g, (2, 3))
    with pytest.raises(IndexError):
        is_clique(g, (0, 99))


def test_validate_solution_accepts_disjoint_cover():
    report = validate_solution(
        fig1_sfm(), Solution(((0, 3), (1, 4), (2, 5)))
    )
    assert report.ok
    assert report.violations == []


def test_validate_solution_reports_conflicts_and_gaps():
    report = validate_solution(fig1_sfm(), Solution(((2, 3), (0, 1))))
    assert not report.ok
    assert any("conflicts" in v for v in report.violations)
    assert any("not covered" in v for v in report.violations)


def test_coding_set_normalizes_and_rejects_empty():
    assert CodingSet((3, 1, 3, 2)) == (1, 2, 3)
    with pytest.raises(ValueError):
        CodingSet(())


def test_solution_metadata():
    s = Solution(((0, 1, 3), (2, 5), (1, 4)))
    assert s.size == 3
    assert s.diversities(6) == [1, 2, 1, 1, 1, 1]
    assert s.covered_packets() == {0, 1, 2, 3, 4, 5}
    assert s.canonical() == Solution(((1, 4), (2, 5), (0, 1, 3))).canonical()


def test_dot_exports_are_deterministic():
    sfm = fig1_sfm()
    dot = sidnc_graph_to_dot(build_sidnc_graph(sfm))
    assert dot == sidnc_graph_to_dot(build_sidnc_graph(sfm))
    assert dot.count(" -- ") == 7
    assert dot.count("[label=") == 6
    gdot = gidnc_graph_to_dot(build_gidnc_graph(sfm))
    assert gdot.count("[label=") == 12
    assert 'label="v0,0"' in gdot


def test_graph_equality_is_structural():
    g1 = graph_from_edges(4, [(0, 1), (2, 3)])
    g2 = graph_from_edges(4, [(2, 3), (0, 1)])
    g3 = graph_from_edges(4, [(0, 1)])
    assert g1 == g2
    assert g1 != g3
