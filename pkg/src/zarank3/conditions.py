"""Validators for generalized cycle-freeness, one per condition, with witnesses."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .graph import (
    AugmentedGraph,
    Cell,
    Edge2,
    Edge3,
    EdgeNotInGraphError,
    is_simple,
    occupied_cells,
)


class Condition(str, enum.Enum):
    C4_FREE = "C4Free"
    TWO_EDGE = "TwoEdgeRestriction"
    THREE_EDGE_SATURATION = "ThreeEdgeSaturation"
    THREE_EDGE_EXTENSION = "ThreeEdgeExtension"
    SIMPLICITY = "Simplicity"
    NON_DEGENERACY = "NonDegeneracy"
    EXTRA = "Extra"


@dataclass(frozen=True)
class ConditionReport:
    condition: Condition
    passed: bool
    subject: Optional[str] = None
    witness: Optional[dict] = None
    note: Optional[str] = None

    def to_dict(self) -> dict:
        d = {"condition": self.condition.value, "passed": self.passed}
        if self.subject is not None:
            d["subject"] = self.subject
        if self.witness is not None:
            d["witness"] = self.witness
        if self.note is not None:
            d["note"] = self.note
        return d


@dataclass(frozen=True)
class ConditionConfig:
    """``literal_def32`` counts only E1 cells and 2-edge halves as occupied opposite cells.

    ``extra`` holds user-supplied checks ``g -> ConditionReport``; the search
    prunes on them, so each must stay failed once failed (adding edges never
    repairs a violation).
    """

    literal_def32: bool = True
    extra: tuple = field(default=())


DEFAULT_CONFIG = ConditionConfig()


def _cells(cs: Iterable[Cell]) -> list[list[int]]:
    return [list(c) for c in sorted(cs)]


def is_c4_free(m: int, n: int, e1: Iterable) -> ConditionReport:
    rows: dict[int, set[int]] = {}
    for r, s in e1:
        rows.setdefault(r, set()).add(s)
    for r1, r2 in itertools.combinations(sorted(rows), 2):
        common = sorted(rows[r1] & rows[r2])
        if len(common) >= 2:
            return ConditionReport(
                Condition.C4_FREE,
                False,
                witness={"rows": [r1, r2], "cols": common[:2]},
            )
    return ConditionReport(Condition.C4_FREE, True)


def check_simplicity(g: AugmentedGraph) -> ConditionReport:
    if is_simple(g):
        return ConditionReport(Condition.SIMPLICITY, True)
    seen, dup = set(), set()
    for c in g.cell_list():
        (dup if c in seen else seen).add(c)
    return ConditionReport(Condition.SIMPLICITY, False, witness={"cells": _cells(dup)})


def check_non_degeneracy(g: AugmentedGraph) -> ConditionReport:
    # Edge3 refuses degenerate triples at construction; re-checked for reports.
    for e in g.sorted_e3():
        if len(set(e.rows)) < 3 or len(set(e.cols)) < 3:
            return ConditionReport(Condition.NON_DEGENERACY, False, str(e), {"edge": _cells(e.cells)})
    return ConditionReport(Condition.NON_DEGENERACY, True)


def _occupied_for_opposite(g: AugmentedGraph, literal: bool) -> set[Cell]:
    if not literal:
        return occupied_cells(g)
    occ = set(g.e1)
    for e in g.e2:
        occ.update(e.cells)
    return occ


def check_2edge(g: AugmentedGraph, e: Edge2, config: ConditionConfig = DEFAULT_CONFIG) -> ConditionReport:
    if e not in g.e2:
        raise EdgeNotInGraphError(f"2-edge {e} is not in the graph")
    opp = e.opposite_cells()
    if opp is None:
        return ConditionReport(Condition.TWO_EDGE, True, str(e), note=f"{e.degeneracy.value}; vacuous")
    occ = _occupied_for_opposite(g, config.literal_def32)
    hit = [c for c in opp if c in occ]
    if len(hit) > 1:
        return ConditionReport(
            Condition.TWO_EDGE,
            False,
            str(e),
            witness={"clause": "opposite-occupied", "edge": _cells(e.cells), "cells": _cells(hit)},
        )
    for t in g.sorted_e3():
        if set(opp) <= set(t.cells):
            return ConditionReport(
                Condition.TWO_EDGE,
                False,
                str(e),
                witness={"clause": "same-3-edge", "edge": _cells(e.cells), "cells": _cells(opp), "three_edge": _cells(t.cells)},
            )
    return ConditionReport(Condition.TWO_EDGE, True, str(e))


def check_3edge_saturation(g: AugmentedGraph, e: Edge3) -> ConditionReport:
    if e not in g.e3:
        raise EdgeNotInGraphError(f"3-edge {e} is not in the graph")
    occ = occupied_cells(g)
    sat = e.saturation_set()
    free = [c for c in sat if c not in occ]
    if free:
        return ConditionReport(
            Condition.THREE_EDGE_SATURATION, True, str(e), note=f"{6 - len(free)} of 6 occupied"
        )
    return ConditionReport(
        Condition.THREE_EDGE_SATURATION, False, str(e), witness={"edge": _cells(e.cells), "cells": _cells(sat)}
    )


def check_3edge_extension(g: AugmentedGraph, e: Edge3) -> ConditionReport:
    if e not in g.e3:
        raise EdgeNotInGraphError(f"3-edge {e} is not in the graph")
    occ = occupied_cells(g)
    sat = e.saturation_set()
    free = [c for c in sat if c not in occ]
    if free:
        return ConditionReport(
            Condition.THREE_EDGE_EXTENSION, True, str(e), note=f"vacuous: {free[0]} in O unoccupied"
        )
    rows, cols = set(e.rows), set(e.cols)
    for c in sorted(occ):
        if c.row not in rows or c.col not in cols:
            return ConditionReport(
                Condition.THREE_EDGE_EXTENSION,
                False,
                str(e),
                witness={"edge": _cells(e.cells), "cells": _cells(sat), "outside": list(c)},
            )
    return ConditionReport(Condition.THREE_EDGE_EXTENSION, True, str(e), note="no occupied cell outside R x C")


def condition_reports(g: AugmentedGraph, config: ConditionConfig = DEFAULT_CONFIG) -> list[ConditionReport]:
    reports = [check_simplicity(g), check_non_degeneracy(g), is_c4_free(g.m, g.n, g.e1)]
    reports += [check_2edge(g, e, config) for e in g.sorted_e2()]
    for e in g.sorted_e3():
        reports.append(check_3edge_saturation(g, e))
        reports.append(check_3edge_extension(g, e))
    for hook in config.extra:
        r = hook(g)
        if isinstance(r, bool):
            r = ConditionReport(Condition.EXTRA, r, getattr(hook, "__name__", None))
        reports.append(r)
    return reports


def is_generalized_cycle_free(g: AugmentedGraph, config: ConditionConfig = DEFAULT_CONFIG) -> list[ConditionReport]:
    """All condition reports; the graph passes iff every report passed (see ``all_passed``)."""
    return condition_reports(g, config)


def all_passed(reports: Sequence[ConditionReport]) -> bool:
    return all(r.passed for r in reports)


def passes(g: AugmentedGraph, config: ConditionConfig = DEFAULT_CONFIG) -> bool:
    return all_passed(condition_reports(g, config))


def replay_witness(g: AugmentedGraph, report: ConditionReport, config: ConditionConfig = DEFAULT_CONFIG) -> bool:
    """Re-evaluate a failing report's witness against ``g``; True iff the violation is exhibited."""
    w = report.witness
    if report.passed or w is None:
        return False
    if report.condition is Condition.C4_FREE:
        (r1, r2), (s1, s2) = w["rows"], w["cols"]
        return all((r, s) in g.e1 for r in (r1, r2) for s in (s1, s2)) and r1 != r2 and s1 != s2
    if report.condition is Condition.SIMPLICITY:
        cl = g.cell_list()
        return all(cl.count(Cell(*c)) > 1 for c in w["cells"])
    if report.condition is Condition.TWO_EDGE:
        e = Edge2(*[tuple(c) for c in w["edge"]])
        named = {Cell(*c) for c in w["cells"]}
        if e not in g.e2 or e.opposite_cells() is None or named != set(e.opposite_cells()):
            return False
        if w["clause"] == "opposite-occupied":
            return named <= _occupied_for_opposite(g, config.literal_def32)
        t = Edge3(*[tuple(c) for c in w["three_edge"]])
        return t in g.e3 and named <= set(t.cells)
    if report.condition in (Condition.THREE_EDGE_SATURATION, Condition.THREE_EDGE_EXTENSION):
        e = Edge3(*[tuple(c) for c in w["edge"]])
        occ = occupied_cells(g)
        ok = e in g.e3 and {Cell(*c) for c in w["cells"]} == set(e.saturation_set()) and all(
            Cell(*c) in occ for c in w["cells"]
        )
        if report.condition is Condition.THREE_EDGE_EXTENSION:
            out = Cell(*w["outside"])
            ok = ok and out in occ and (out.row not in e.rows or out.col not in e.cols)
        return ok
    return False
