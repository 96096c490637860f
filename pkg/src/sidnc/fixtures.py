"""Small hand-checked instances shared by the tests and the fixture CLI."""

from __future__ import annotations

from .graphs import SIdncGraph
from .state import fig1_sfm  # noqa: F401  (re-exported alongside the graphs)

# 0-based edges of the canonical 5x6 fixture's packet conflict graph.
FIG1_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (1, 4), (2, 5))


def graph_from_edges(vertex_count: int, edges) -> SIdncGraph:
    masks = [0] * vertex_count
    for i, j in edges:
        masks[i] |= 1 << j
        masks[j] |= 1 << i
    return SIdncGraph(masks)


def branching_example_graph() -> SIdncGraph:
    """6-vertex graph whose five maximal cliques exercise the optimal search.

    Maximal cliques: (0,2), (1,2,4), (2,3), (3,5), (4,5); the minimum
    cover has size 3.
    """
    edges = ((0, 2), (1, 2), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5))
    return graph_from_edges(6, edges)
