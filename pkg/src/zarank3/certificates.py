"""Rank certificates for P_G and exact replays of the orthogonal-vector arguments."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from . import builtins
from .conditions import (
    DEFAULT_CONFIG,
    ConditionConfig,
    all_passed,
    condition_reports,
)
from .forms import (
    BilinearForm,
    MonomialKey,
    SosDecomposition,
    build_form,
    canonical_decomposition,
    expand,
    independent_rank,
    integer_rank,
)
from .graph import AugmentedGraph, Cell, is_simple, occupied_cells


class ExpansionMismatchError(ValueError):
    pass


class VectorAssignment:
    """Cell -> coefficient column across the decomposition; absent cells get the zero vector."""

    def __init__(self, d: SosDecomposition):
        self.r = len(d.forms)
        cols: dict[Cell, list[int]] = {}
        for t, f in enumerate(d.forms):
            for c, v in f.coeffs.items():
                cols.setdefault(c, [0] * self.r)[t] = v
        self._vec = {c: tuple(v) for c, v in cols.items()}

    def __getitem__(self, c) -> tuple[int, ...]:
        return self._vec.get(Cell(*c), (0,) * self.r)

    def support(self) -> list[Cell]:
        return sorted(self._vec)

    def dot(self, a, b) -> int:
        return sum(x * y for x, y in zip(self[a], self[b]))


def vector_assignment(d: SosDecomposition) -> VectorAssignment:
    return VectorAssignment(d)


def content_hash(g: AugmentedGraph) -> str:
    return hashlib.sha256(g.to_json().encode()).hexdigest()


def _partners(g: AugmentedGraph) -> dict[Cell, frozenset]:
    out: dict[Cell, frozenset] = {}
    for e in list(g.e2) + list(g.e3):
        for c in e.cells:
            out[c] = frozenset(e.cells) - {c}
    return out


@dataclass
class GramReport:
    expansion_matches: bool
    strict_pattern: bool
    sum_relations: bool
    strict_violations: list = field(default_factory=list)
    sum_violations: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.strict_pattern:
            return "strict pattern holds"
        if self.sum_relations:
            return "only sum relations hold"
        return "relations violated"

    def to_dict(self) -> dict:
        return {
            "expansion_matches": self.expansion_matches,
            "strict_pattern": self.strict_pattern,
            "sum_relations": self.sum_relations,
            "verdict": self.verdict,
            "strict_violations": self.strict_violations,
            "sum_violations": self.sum_violations,
        }


def check_gram_pattern(g: AugmentedGraph, d: SosDecomposition) -> GramReport:
    """Check the vector relations a decomposition of P_G must satisfy.

    Strict pattern: every occupied cell has a unit vector, co-edged cells have
    dot product 1 and all other occupied pairs are orthogonal. Sum relations:
    the per-monomial identities with unoccupied cells read as zero vectors,
    e.g. v_ij.v_kl + v_il.v_kj = 1 for a nondegenerate 2-edge.
    """
    target = build_form(g)
    if expand(d) != target:
        raise ExpansionMismatchError("decomposition does not expand to P_G")
    va = vector_assignment(d)
    occ = sorted(occupied_cells(g))
    occ_set = set(occ)
    partners = _partners(g)

    def vec(c):
        return va[c] if c in occ_set else (0,) * va.r

    def dot(a, b):
        return sum(x * y for x, y in zip(vec(a), vec(b)))

    strict, sums = [], []
    for c in occ:
        nv = dot(c, c)
        if nv != 1:
            strict.append({"cells": [list(c)], "expected": 1, "actual": nv})
            sums.append({"cells": [list(c)], "expected": 1, "actual": nv})
    for a, b in combinations(occ, 2):
        want = 1 if b in partners.get(a, ()) else 0
        got = dot(a, b)
        if got != want:
            strict.append({"cells": [list(a), list(b)], "expected": want, "actual": got})
        # the monomial x_a x_c y_b y_d has coefficient 2 * (sum of its two pair dots)
        if a.row != b.row and a.col != b.col:
            o1, o2 = Cell(a.row, b.col), Cell(b.row, a.col)
            if tuple(sorted((o1, o2))) < (a, b) and o1 in occ_set and o2 in occ_set:
                continue  # same monomial, checked from the other pair
            total = got + dot(o1, o2)
        else:
            total = got
        key_coeff = target.coeffs.get(MonomialKey.of(a, b), 0)
        if 2 * total != key_coeff:
            sums.append({"cells": [list(a), list(b)], "expected": key_coeff // 2, "actual": total})
    return GramReport(True, not strict, not sums, strict, sums)


@dataclass
class RankCertificate:
    graph: AugmentedGraph
    claimed_rank: Optional[int]
    condition_reports: list
    decomposition_rank: Optional[int]
    expansion_verified: bool
    graph_hash: str
    config: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return (
            all_passed(self.condition_reports)
            and self.expansion_verified
            and self.claimed_rank is not None
            and self.decomposition_rank == self.claimed_rank == self.graph.edge_count
        )

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "valid": self.valid,
            "claimed_rank": self.claimed_rank,
            "edge_counts": [len(self.graph.e1), len(self.graph.e2), len(self.graph.e3)],
            "conditions": [r.to_dict() for r in self.condition_reports],
            "rank_check": {"independent_rank": self.decomposition_rank},
            "expansion_check": self.expansion_verified,
            "hash": self.graph_hash,
            "config": self.config,
        }


def certify_sos_rank(g: AugmentedGraph, config: ConditionConfig = DEFAULT_CONFIG) -> RankCertificate:
    reports = condition_reports(g, config)
    cfg = {"literal_def32": config.literal_def32}
    if not is_simple(g) or g.edge_count == 0:
        return RankCertificate(g, None, reports, None, False, content_hash(g), cfg)
    d = canonical_decomposition(g)
    expanded = expand(d) == build_form(g)
    rank = independent_rank(d)
    claimed = g.edge_count if all_passed(reports) and expanded and rank == g.edge_count else None
    return RankCertificate(g, claimed, reports, rank, expanded, content_hash(g), cfg)


def three_edge_replay(g: AugmentedGraph, d: SosDecomposition) -> dict:
    """Exact replay of the forced-equality and orthogonality facts for every 3-edge.

    Base vectors are those of E1 cells and 2-edge halves; for each 3-edge the
    three half vectors must coincide (u), be unit, be orthogonal to every base
    vector and to the other u's, and extend the base span by one dimension.
    """
    va = vector_assignment(d)
    base_cells = sorted(g.e1) + sorted(c for e in g.e2 for c in e.cells)
    base = [va[c] for c in base_cells]
    base_dim = integer_rank([list(v) for v in base])
    us = []
    out = {"base_cells": len(base_cells), "base_dimension": base_dim, "three_edges": []}
    for e in g.sorted_e3():
        vs = [va[c] for c in e.cells]
        u = vs[0]
        bad = [list(c) for c, v in zip(base_cells, base) if sum(x * y for x, y in zip(u, v))]
        out["three_edges"].append({
            "edge": [list(c) for c in e.cells],
            "u": list(u),
            "halves_equal": all(v == u for v in vs),
            "norm_squared": sum(x * x for x in u),
            "orthogonal_to_base": not bad,
            "non_orthogonal_cells": bad,
        })
        us.append(u)
    out["u_dots"] = [
        {"pair": [i, j], "dot": sum(x * y for x, y in zip(us[i], us[j]))} for i, j in combinations(range(len(us)), 2)
    ]
    out["total_dimension"] = integer_rank([list(v) for v in base] + [list(u) for u in us])
    out["ok"] = (
        all(t["halves_equal"] and t["norm_squared"] == 1 and t["orthogonal_to_base"] for t in out["three_edges"])
        and all(x["dot"] == 0 for x in out["u_dots"])
        and out["total_dimension"] == base_dim + len(us)
    )
    return out


def verify_q55() -> dict:
    """Replay the rank-15 5x5 form: expansion, independence, base dimension 14, u outside the base span."""
    base = builtins.p55_base()
    qg = builtins.q55_graph()
    d = canonical_decomposition(qg)
    t_square = SosDecomposition(5, 5, (BilinearForm.unit_sum(5, 5, builtins.T_55.cells),))
    q_form = build_form(base) + expand(t_square)
    replay = three_edge_replay(qg, d)
    t = replay["three_edges"][0]
    va = vector_assignment(d)
    u_equalities = va[(2, 2)] == va[(4, 4)] == va[(5, 3)]
    report = {
        "squares": len(d),
        "expansion_equal": expand(d) == q_form,
        "independent_rank": independent_rank(d),
        "base_dimension": replay["base_dimension"],
        "u_forced_equal": u_equalities and t["halves_equal"],
        "u_orthogonal_to_base": t["orthogonal_to_base"],
        "u_outside_base_span": replay["total_dimension"] == replay["base_dimension"] + 1,
        "stacked_rank": replay["total_dimension"],
        "T_text": expand(t_square).to_text(),
    }
    report["ok"] = (
        report["expansion_equal"]
        and report["independent_rank"] == 15
        and report["base_dimension"] == 14
        and report["u_forced_equal"]
        and report["u_orthogonal_to_base"]
        and report["u_outside_base_span"]
    )
    return report
