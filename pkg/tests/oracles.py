"""Brute-force reference computations, deliberately independent of the search engine.

They enumerate raw subsets and set partitions and judge each graph with
``condition_reports`` (the readable validators), never the bitmask DFS.
"""

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import networkx as nx

from zarank3.conditions import ConditionConfig, all_passed, condition_reports
from zarank3.graph import AugmentedGraph, Cell, DegenerateEdgeError, Edge2, Edge3


def c4_free_rows(rows) -> bool:
    return all(bin(a & b).count("1") <= 1 for a, b in combinations(rows, 2))


def brute_z(m, n) -> int:
    best = 0
    for rows in combinations_with_replacement(range(1 << n), m):
        if c4_free_rows(rows):
            best = max(best, sum(bin(r).count("1") for r in rows))
    return best


def brute_extremal_rowsets(m, n):
    z = brute_z(m, n)
    out = []
    for rows in combinations_with_replacement(range(1 << n), m):
        if sum(bin(r).count("1") for r in rows) == z and c4_free_rows(rows):
            out.append(rows)
    return z, out


def rows_to_e1(rows, n):
    return frozenset(Cell(i + 1, c + 1) for i, r in enumerate(rows) for c in range(n) if r >> c & 1)


def nx_graph(g: AugmentedGraph) -> nx.Graph:
    G = nx.Graph()
    for i in range(1, g.m + 1):
        G.add_node(("r", i), side=0)
    for j in range(1, g.n + 1):
        G.add_node(("c", j), side=1)
    for c in g.e1:
        G.add_edge(("r", c.row), ("c", c.col))
    return G


def nx_representatives(graphs):
    reps = []
    for g in graphs:
        G = nx_graph(g)
        if not any(nx.is_isomorphic(G, H, node_match=lambda a, b: a["side"] == b["side"]) for _, H in reps):
            reps.append((g, G))
    return [g for g, _ in reps]


def nx_classes(graphs):
    return len(nx_representatives(graphs))


def set_partitions_small(cells, max_block=3):
    """All ways to split ``cells`` into blocks of size at most ``max_block`` (3)."""
    cells = list(cells)
    if not cells:
        yield []
        return
    first, rest = cells[0], cells[1:]
    for sub in set_partitions_small(rest, max_block):
        yield [(first,)] + sub
    if max_block < 2:
        return
    for i, b in enumerate(rest):
        rem = rest[:i] + rest[i + 1:]
        for sub in set_partitions_small(rem, max_block):
            yield [(first, b)] + sub
    if max_block < 3:
        return
    for i, j in combinations(range(len(rest)), 2):
        rem = [x for k, x in enumerate(rest) if k not in (i, j)]
        for sub in set_partitions_small(rem, max_block):
            yield [(first, rest[i], rest[j])] + sub


def brute_best_augmentation(m, n, e1, allow_e3, config=ConditionConfig()):
    e1 = frozenset(Cell(*c) for c in e1)
    free = [Cell(i, j) for i in range(1, m + 1) for j in range(1, n + 1) if Cell(i, j) not in e1]
    best = 0
    for part in set_partitions_small(free, 3 if allow_e3 else 2):
        e2 = [Edge2(*b) for b in part if len(b) == 2]
        triples = [b for b in part if len(b) == 3]
        if len(e2) + len(triples) <= best:
            continue
        try:
            e3 = [Edge3(*b) for b in triples]
        except DegenerateEdgeError:
            continue
        g = AugmentedGraph.build(m, n, e1, e2, e3)
        if all_passed(condition_reports(g, config)):
            best = len(e2) + len(e3)
    return best


def all_c4_free_e1(m, n):
    cells = [Cell(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    for mask in range(1 << len(cells)):
        e1 = [c for k, c in enumerate(cells) if mask >> k & 1]
        rows = [sum(1 << (c.col - 1) for c in e1 if c.row == i) for i in range(1, m + 1)]
        if c4_free_rows(rows):
            yield e1


def brute_z3a(m, n):
    return max(len(e1) + brute_best_augmentation(m, n, e1, True) for e1 in all_c4_free_e1(m, n))


def brute_limited(m, n, allow_e3, by_class=False):
    """Max over extremal E1 of z + best augmentation.

    ``by_class`` keeps one E1 per networkx isomorphism class; the augmentation
    optimum is invariant under relabeling, so the answer is unchanged.
    """
    z, rowsets = brute_extremal_rowsets(m, n)
    graphs = [AugmentedGraph(m, n, rows_to_e1(r, n)) for r in rowsets]
    if by_class:
        graphs = nx_representatives(graphs)
    return max(z + brute_best_augmentation(m, n, g.e1, allow_e3) for g in graphs)


def fraction_rank(rows) -> int:
    """Plain Gauss-Jordan over Fractions."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    rank, ncols = 0, len(a[0])
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(len(a)):
            if r != rank and a[r][col] != 0:
                f = a[r][col] / a[rank][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def expand_by_polynomial(d):
    """Expand a decomposition symbolically and read off monomial coefficients."""
    import sympy

    xs = sympy.symbols(f"x1:{d.m + 1}")
    ys = sympy.symbols(f"y1:{d.n + 1}")
    total = 0
    for f in d.forms:
        total += sum(v * xs[c.row - 1] * ys[c.col - 1] for c, v in f.coeffs.items()) ** 2
    poly = sympy.Poly(sympy.expand(total), *xs, *ys)
    out = {}
    for exps, coeff in poly.terms():
        rows = [i + 1 for i, e in enumerate(exps[: d.m]) for _ in range(e)]
        cols = [j + 1 for j, e in enumerate(exps[d.m:]) for _ in range(e)]
        out[(tuple(rows), tuple(cols))] = int(coeff)
    return out
