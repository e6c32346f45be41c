"""The explicit constructions: 5x3, 5x5 and 6x4 graphs and the rank-15 form on 5x5."""

from __future__ import annotations

from .graph import AugmentedGraph, Edge2, Edge3

BUILTIN_IDS = ("g53", "g55", "g64", "q55")

# K4 edges label the rows of the 6x4 graph, in this order
K4_ROWS = ("12", "13", "14", "23", "24", "34")


def _k4(label: str, v: int) -> tuple[int, int]:
    return (K4_ROWS.index(label) + 1, v)


def g53() -> AugmentedGraph:
    return AugmentedGraph.build(
        5, 3,
        e1=[(1, 1), (1, 2), (2, 1), (2, 3), (3, 2), (3, 3), (4, 1), (5, 2)],
        e2=[Edge2((1, 3), (4, 2))],
        e3=[Edge3((2, 2), (3, 1), (5, 3))],
    )


E1_55 = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 4), (3, 2), (3, 4), (3, 5), (4, 3), (4, 5), (5, 1), (5, 5)]
E2_55 = [Edge2((1, 4), (5, 2)), Edge2((2, 3), (4, 2))]
T_55 = Edge3((2, 2), (4, 4), (5, 3))


def g55() -> AugmentedGraph:
    return AugmentedGraph.build(5, 5, e1=E1_55, e2=E2_55, e3=[T_55, Edge3((2, 5), (3, 3), (4, 1))])


def p55_base() -> AugmentedGraph:
    """The 14-edge graph whose form is extended by the extra three-term square."""
    return AugmentedGraph.build(5, 5, e1=E1_55, e2=E2_55)


def q55_graph() -> AugmentedGraph:
    """Q = P_G + (x2y2 + x4y4 + x5y3)^2 read as a graph with one 3-edge."""
    return AugmentedGraph.build(5, 5, e1=E1_55, e2=E2_55, e3=[T_55])


def g64() -> AugmentedGraph:
    e1 = [_k4(e, int(v)) for e in K4_ROWS for v in e]
    e2 = [Edge2(_k4("12", 3), _k4("13", 4)), Edge2(_k4("24", 1), _k4("34", 2))]
    e3 = [
        Edge3(_k4("13", 2), _k4("24", 3), _k4("34", 1)),
        Edge3(_k4("12", 4), _k4("14", 2), _k4("23", 1)),
    ]
    return AugmentedGraph.build(6, 4, e1=e1, e2=e2, e3=e3)


def row_label(gid: str, row: int) -> str:
    return K4_ROWS[row - 1] if gid == "g64" else str(row)


GRAPHS = {"g53": g53, "g55": g55, "g64": g64, "q55": q55_graph}
CLAIMED_RANK = {"g53": 10, "g55": 16, "g64": 16, "q55": 15}
CITATIONS = {
    "g53": ["5x3 construction: z3L(5,3) >= 10", "5x3 optimality: z3L(5,3) = 10"],
    "g55": ["5x5 construction: z3L(5,5) >= 16"],
    "g64": ["6x4 construction: z3L(6,4) >= 16", "6x4 direct orthogonality replay"],
    "q55": ["rank-15 form on 5x5: BSR(5,5) >= 15"],
}
RANK_THEOREM = "sos(P_G) = |E1| + |E2| + |E3| for simple generalized cycle-free G"
