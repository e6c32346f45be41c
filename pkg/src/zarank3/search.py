"""Exhaustive and branch-and-bound computation of z, z_L, z_3L and z_3A.

Two layers:

* a row-by-row DFS over C4-free 1-edge sets (rows as column bitmasks, used
  column pairs as a bitset), with rows sorted by nonincreasing degree and
  fresh columns introduced in order, followed by isomorphism dedupe through
  ``canonical_code``;
* an augmentation DFS that walks free cells in row-major order and, for the
  first undecided cell, tries every 2-edge, then every 3-edge, then leaving
  the cell free. Conditions are checked incrementally with cell bitmasks.

Every condition only forbids occupied cells, so once an edge is violated no
later addition repairs it; pruning on violation is exact.
"""

from __future__ import annotations

import enum
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional

from .conditions import ConditionConfig, all_passed, condition_reports
from .graph import AugmentedGraph, Cell, DimensionGuardError, Edge2, Edge3, canonical_code

MAX_SIDE = 8
Z3A_MAX_CELLS = 25
WITNESS_GUARD = 64
RAW_WITNESS_CAP = 4000

# reference values for comparison only; searches never read them as bounds
PAPER_VALUES = {
    ("Z", 5, 3): 8,
    ("Z", 5, 5): 12,
    ("ZL", 5, 3): 9,
    ("ZL", 5, 5): 14,
    ("ZL", 6, 4): 14,
    ("Z3L", 5, 3): 10,
}
PAPER_LOWER_BOUNDS = {
    ("Z3L", 5, 5): 16,
    ("Z3L", 6, 4): 16,
}


class Statistic(str, enum.Enum):
    Z = "Z"
    ZL = "ZL"
    Z3L = "Z3L"
    Z3A = "Z3A"


@dataclass(frozen=True)
class SearchConfig:
    literal_def32: bool = True
    symmetry: bool = True
    budget_nodes: Optional[int] = None  # per search task (one E1 class)
    budget_seconds: Optional[float] = None
    threads: int = 1
    seed: Optional[int] = None
    max_witnesses: int = 8
    extra: tuple = field(default=(), compare=False)

    def conditions(self) -> ConditionConfig:
        return ConditionConfig(literal_def32=self.literal_def32, extra=self.extra)

    def snapshot(self) -> dict:
        d = asdict(self)
        d["extra"] = [getattr(h, "__name__", repr(h)) for h in self.extra]
        d["five_cell_condition"] = "not enforced"
        d["condition2_semantics"] = "literal-def32" if self.literal_def32 else "occupancy"
        return d


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("ZRK_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class SearchResult:
    statistic: Statistic
    m: int
    n: int
    value: int
    witnesses: list
    exhaustive: bool
    nodes_explored: int
    config: dict
    witness_classes: int = 0
    witnesses_truncated: bool = False
    e1_classes: int = 0
    max_e2: Optional[int] = None
    flags: list = field(default_factory=list)
    paper_value: Optional[int] = None
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic.value,
            "m": self.m,
            "n": self.n,
            "value": self.value,
            "exhaustive": self.exhaustive,
            "nodes_explored": self.nodes_explored,
            "witness_classes": self.witness_classes,
            "witnesses_truncated": self.witnesses_truncated,
            "e1_classes": self.e1_classes,
            "max_e2": self.max_e2,
            "flags": list(self.flags),
            "paper_value": self.paper_value,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "config": self.config,
            "elapsed_seconds": round(self.elapsed, 3),
        }

    def deterministic_view(self) -> dict:
        d = self.to_dict()
        for k in ("nodes_explored", "elapsed_seconds"):
            d.pop(k)
        d["config"] = {k: v for k, v in d["config"].items() if k != "threads"}
        return d


class _Budget(Exception):
    pass


def _check_dims(m: int, n: int, max_side: int = MAX_SIDE) -> None:
    if not (1 <= m <= max_side and 1 <= n <= max_side):
        raise DimensionGuardError(f"{m}x{n} exceeds the search guard (sides <= {max_side})")


# --- C4-free layer ---------------------------------------------------------

@lru_cache(maxsize=None)
def _pair_masks(n: int) -> tuple:
    index = {p: k for k, p in enumerate(combinations(range(n), 2))}
    out = []
    for mask in range(1 << n):
        bits = [c for c in range(n) if mask >> c & 1]
        pm = 0
        for p in combinations(bits, 2):
            pm |= 1 << index[p]
        out.append(pm)
    return tuple(out)


@lru_cache(maxsize=None)
def _pair_bound(k: int, pairs: int, cap: int) -> int:
    """Max total degree of k rows, each <= cap, spending at most ``pairs`` column pairs."""
    if k == 0:
        return 0
    degs = [0] * k
    total = 0
    while True:
        i = min(range(k), key=degs.__getitem__)
        d = degs[i]
        if d >= cap or d > pairs:
            break
        pairs -= d
        degs[i] += 1
        total += 1
    return total


class _C4Search:
    """Row DFS collecting every C4-free 1-edge set with at least ``floor`` edges (or the maximum)."""

    def __init__(self, m, n, symmetry=True, floor=None, row_bounds=None, budget_nodes=None, deadline=None, raw_cap=None):
        self.m, self.n = m, n
        self.symmetry = symmetry
        self.floor = floor
        self.best = -1 if floor is None else floor
        self.row_bounds = row_bounds or [min(k * n, 10**9) for k in range(m + 1)]
        self.pm = _pair_masks(n)
        self.masks = sorted(range(1 << n), key=lambda x: (-x.bit_count(), x))
        self.npairs = n * (n - 1) // 2
        self.found: list[tuple[int, ...]] = []
        self.nodes = 0
        self.budget_nodes = budget_nodes
        self.deadline = deadline
        self.raw_cap = raw_cap
        self.complete = True

    def run(self):
        try:
            self._dfs([], 0, 0, self.n, 0)
        except _Budget:
            self.complete = False
        return self

    def _tick(self):
        self.nodes += 1
        if self.budget_nodes is not None and self.nodes > self.budget_nodes:
            raise _Budget
        if self.deadline is not None and self.nodes & 1023 == 0 and time.time() > self.deadline:
            raise _Budget

    def _record(self, rows, edges):
        if self.floor is None and edges > self.best:
            self.best = edges
            self.found = []
        if self.raw_cap is None or len(self.found) < self.raw_cap:
            self.found.append(tuple(rows))

    def _dfs(self, rows, edges, used, cap, touched):
        self._tick()
        k = self.m - len(rows)
        if k == 0:
            if edges >= self.best:
                self._record(rows, edges)
            return
        pairs_left = self.npairs - used.bit_count()
        ub = edges + min(self.row_bounds[k], k * cap, _pair_bound(k, pairs_left, cap))
        if ub < self.best:
            return
        for mask in self.masks:
            d = mask.bit_count()
            if self.symmetry:
                if d > cap:
                    continue
                fresh = mask >> touched
                if fresh & (fresh + 1):
                    continue
            if self.pm[mask] & used:
                continue
            nt = touched + (mask >> touched).bit_length() if self.symmetry else touched
            rows.append(mask)
            self._dfs(rows, edges + d, used | self.pm[mask], d if self.symmetry else cap, nt)
            rows.pop()


@lru_cache(maxsize=None)
def _z_row_bounds(m: int, n: int) -> tuple:
    bounds = [0]
    for k in range(1, m + 1):
        s = _C4Search(k, n, symmetry=True, row_bounds=bounds + [k * n]).run()
        bounds.append(s.best)
    return tuple(bounds)


def _rows_to_cells(rows, n) -> frozenset:
    return frozenset(Cell(i + 1, c + 1) for i, mask in enumerate(rows) for c in range(n) if mask >> c & 1)


def _dedupe(graphs: Iterable[AugmentedGraph], guard: int = WITNESS_GUARD) -> list[tuple[bytes, AugmentedGraph]]:
    seen: dict[bytes, AugmentedGraph] = {}
    for g in graphs:
        code = canonical_code(g, guard=guard)
        if code not in seen:
            seen[code] = g
    return sorted(seen.items(), key=lambda kv: kv[0])


def zarankiewicz(m: int, n: int, config: SearchConfig = SearchConfig()) -> SearchResult:
    _check_dims(m, n)
    t0 = time.time()
    deadline = t0 + config.budget_seconds if config.budget_seconds else None
    bounds = list(_z_row_bounds(m - 1, n)) + [m * n] if m > 1 else [0, n]
    s = _C4Search(m, n, symmetry=config.symmetry, row_bounds=bounds, budget_nodes=config.budget_nodes,
                  deadline=deadline, raw_cap=RAW_WITNESS_CAP).run()
    graphs = [AugmentedGraph(m, n, _rows_to_cells(r, n)) for r in s.found]
    classes = _dedupe(graphs)
    res = SearchResult(
        Statistic.Z, m, n, max(s.best, 0), [g for _, g in classes[: config.max_witnesses]], s.complete,
        s.nodes, config.snapshot(), witness_classes=len(classes),
        witnesses_truncated=len(s.found) >= RAW_WITNESS_CAP or len(classes) > config.max_witnesses,
    )
    res.elapsed = time.time() - t0
    return _annotate(res)


def enumerate_extremal_c4free(m: int, n: int, symmetry: bool = True) -> list[frozenset]:
    """Every maximum C4-free 1-edge set, one per isomorphism class (all labeled ones if not ``symmetry``)."""
    _check_dims(m, n)
    return [g.e1 for g in _extremal_graphs(m, n, symmetry)]


def _extremal_graphs(m, n, symmetry=True) -> list[AugmentedGraph]:
    bounds = list(_z_row_bounds(m - 1, n)) + [m * n] if m > 1 else [0, n]
    s = _C4Search(m, n, symmetry=symmetry, row_bounds=bounds).run()
    graphs = [AugmentedGraph(m, n, _rows_to_cells(r, n)) for r in s.found]
    if not symmetry:
        return sorted(graphs, key=lambda g: g.sorted_e1())
    return [g for _, g in _dedupe(graphs)]


def _c4free_graphs(m, n, floor, symmetry=True) -> list[AugmentedGraph]:
    bounds = list(_z_row_bounds(m - 1, n)) + [m * n] if m > 1 else [0, n]
    s = _C4Search(m, n, symmetry=symmetry, floor=floor, row_bounds=bounds).run()
    graphs = [AugmentedGraph(m, n, _rows_to_cells(r, n)) for r in s.found]
    if not symmetry:
        return sorted(graphs, key=lambda g: (-len(g.e1), g.sorted_e1()))
    out = [g for _, g in _dedupe(graphs)]
    return sorted(out, key=lambda g: (-len(g.e1), canonical_code(g, WITNESS_GUARD)))


# --- augmentation layer ----------------------------------------------------

class _Augmenter:
    def __init__(self, m, n, e1, allow_e3, literal=False, extra=(), lower=0, budget_nodes=None, deadline=None,
                 raw_cap=RAW_WITNESS_CAP):
        self.m, self.n = m, n
        self.e1 = frozenset(e1)
        self.allow_e3 = allow_e3
        self.literal = literal
        self.extra = extra
        self.budget_nodes = budget_nodes
        self.deadline = deadline
        self.raw_cap = raw_cap
        self.nodes = 0
        self.complete = True
        self.best = lower
        self.found: list[tuple] = []
        self.max_e2 = -1

        e1mask = 0
        for c in self.e1:
            e1mask |= 1 << self._idx(c)
        self.e1mask = e1mask
        self.free = [i for i in range(m * n) if not e1mask >> i & 1]
        self.pairs: dict[int, list] = {a: [] for a in self.free}
        self.triples: dict[int, list] = {a: [] for a in self.free}
        for a, b in combinations(self.free, 2):
            (ra, ca), (rb, cb) = divmod(a, n), divmod(b, n)
            opp = 0
            if ra != rb and ca != cb:
                opp = 1 << (ra * n + cb) | 1 << (rb * n + ca)
            self.pairs[a].append((b, opp))
        if allow_e3:
            for a, b, c in combinations(self.free, 3):
                rc = [divmod(x, n) for x in (a, b, c)]
                if len({r for r, _ in rc}) < 3 or len({s for _, s in rc}) < 3:
                    continue
                mask = 1 << a | 1 << b | 1 << c
                sat = 0
                for r, _ in rc:
                    for _, s in rc:
                        sat |= 1 << (r * n + s)
                sat &= ~mask
                self.triples[a].append((b, c, mask, sat))

    def _idx(self, c) -> int:
        return (c[0] - 1) * self.n + (c[1] - 1)

    def _cell(self, i) -> Cell:
        r, s = divmod(i, self.n)
        return Cell(r + 1, s + 1)

    def run(self):
        self.used = 0
        self.occ = self.e1mask
        self.occ12 = self.e1mask
        self.e2: list[tuple] = []  # (a, b, opp)
        self.e3: list[tuple] = []  # (a, b, c, mask, sat)
        try:
            self._dfs(0, len(self.free))
        except _Budget:
            self.complete = False
        return self

    def _tick(self):
        self.nodes += 1
        if self.budget_nodes is not None and self.nodes > self.budget_nodes:
            raise _Budget
        if self.deadline is not None and self.nodes & 1023 == 0 and time.time() > self.deadline:
            raise _Budget

    def _ok_after_e2(self, opp, new_occ, new_occ12) -> bool:
        ref = new_occ12 if self.literal else new_occ
        if opp and (opp & ref).bit_count() > 1:
            return False
        for t in self.e3:
            if opp and opp & t[3] == opp:
                return False
            if t[4] & new_occ == t[4]:
                return False
        for e in self.e2:
            if e[2] and (e[2] & ref).bit_count() > 1:
                return False
        return True

    def _ok_after_e3(self, mask, sat, new_occ) -> bool:
        # Condition 4 can only fail when O is fully occupied, which Condition 3 already forbids.
        if sat & new_occ == sat:
            return False
        for t in self.e3:
            if t[4] & new_occ == t[4]:
                return False
        for e in self.e2:
            opp = e[2]
            if not opp:
                continue
            if opp & mask == opp:
                return False
            if not self.literal and (opp & new_occ).bit_count() > 1:
                return False
        return True

    def _graph(self) -> AugmentedGraph:
        c = self._cell
        return AugmentedGraph(
            self.m, self.n, self.e1,
            frozenset(Edge2(c(a), c(b)) for a, b, _ in self.e2),
            frozenset(Edge3(c(a), c(b), c(x)) for a, b, x, _, _ in self.e3),
        )

    def _extra_ok(self) -> bool:
        if not self.extra:
            return True
        g = self._graph()
        for hook in self.extra:
            r = hook(g)
            if not (r if isinstance(r, bool) else r.passed):
                return False
        return True

    def _record(self, count):
        if count > self.best:
            self.best = count
            self.found = []
        if len(self.found) < self.raw_cap:
            self.found.append((tuple(e[:2] for e in self.e2), tuple(e[:3] for e in self.e3)))
        self.max_e2 = max(self.max_e2, len(self.e2))

    def _dfs(self, p, left):
        self._tick()
        free, used = self.free, self.used
        while p < len(free) and used >> free[p] & 1:
            p += 1
        count = len(self.e2) + len(self.e3)
        if count + left // 2 < self.best:
            return
        if p == len(free):
            self._record(count)
            return
        a = free[p]
        abit = 1 << a
        for b, opp in self.pairs[a]:
            bbit = 1 << b
            if used & bbit:
                continue
            new_occ = self.occ | abit | bbit
            new_occ12 = self.occ12 | abit | bbit
            if not self._ok_after_e2(opp, new_occ, new_occ12):
                continue
            saved = (self.used, self.occ, self.occ12)
            self.used = used | abit | bbit
            self.occ, self.occ12 = new_occ, new_occ12
            self.e2.append((a, b, opp))
            if self._extra_ok():
                self._dfs(p + 1, left - 2)
            self.e2.pop()
            self.used, self.occ, self.occ12 = saved
        for b, c, mask, sat in self.triples[a]:
            if used & mask & ~abit:
                continue
            new_occ = self.occ | mask
            if not self._ok_after_e3(mask, sat, new_occ):
                continue
            saved = (self.used, self.occ)
            self.used = used | mask
            self.occ = new_occ
            self.e3.append((a, b, c, mask, sat))
            if self._extra_ok():
                self._dfs(p + 1, left - 3)
            self.e3.pop()
            self.used, self.occ = saved
        self._dfs(p + 1, left - 1)

    def witness_graphs(self) -> list[AugmentedGraph]:
        c = self._cell
        out = []
        for e2, e3 in self.found:
            out.append(AugmentedGraph(
                self.m, self.n, self.e1,
                frozenset(Edge2(c(a), c(b)) for a, b in e2),
                frozenset(Edge3(c(a), c(b), c(x)) for a, b, x in e3),
            ))
        return out


@dataclass
class _TaskResult:
    e1_size: int
    best: int  # best augmentation count, -1 if nothing reached the lower bound
    graphs: list
    nodes: int
    complete: bool
    truncated: bool
    max_e2: int


def _augment_task(args) -> _TaskResult:
    m, n, e1, allow_e3, literal, extra, lower, budget_nodes, deadline = args
    aug = _Augmenter(m, n, e1, allow_e3, literal, extra, lower, budget_nodes, deadline).run()
    best = aug.best if aug.found else -1
    return _TaskResult(len(e1), best, aug.witness_graphs(), aug.nodes, aug.complete,
                       len(aug.found) >= aug.raw_cap, aug.max_e2)


def _run_tasks(tasks: list, threads: int) -> list[_TaskResult]:
    if threads <= 1 or len(tasks) <= 1:
        return [_augment_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(_augment_task, tasks))


def max_augmentation(m: int, n: int, e1, allow_e3: bool, config: SearchConfig = SearchConfig()) -> SearchResult:
    """Best |E2|+|E3| over a fixed C4-free E1; ``value`` is the augmentation count, not the total."""
    _check_dims(m, n)
    e1 = frozenset(Cell(*c) for c in e1)
    t0 = time.time()
    deadline = t0 + config.budget_seconds if config.budget_seconds else None
    r = _augment_task((m, n, e1, allow_e3, config.literal_def32, config.extra, 0, config.budget_nodes, deadline))
    classes = _dedupe(r.graphs)
    _revalidate([g for _, g in classes], config)
    stat = Statistic.Z3L if allow_e3 else Statistic.ZL
    res = SearchResult(stat, m, n, max(r.best, 0), [g for _, g in classes[: config.max_witnesses]], r.complete,
                       r.nodes, config.snapshot(), witness_classes=len(classes),
                       witnesses_truncated=r.truncated or len(classes) > config.max_witnesses,
                       e1_classes=1, max_e2=r.max_e2)
    res.elapsed = time.time() - t0
    return res


def _revalidate(graphs, config: SearchConfig) -> None:
    cc = config.conditions()
    for g in graphs:
        if not all_passed(condition_reports(g, cc)):
            raise AssertionError(f"search produced an invalid witness: {g.to_json()}")


def _combine(stat, m, n, e1_graphs, allow_e3, config, lower_total, t0, deadline) -> SearchResult:
    tasks = []
    cells = m * n
    for g in e1_graphs:
        k = len(g.e1)
        if k + (cells - k) // 2 < lower_total:
            continue
        lower = max(0, lower_total - k)
        tasks.append((m, n, g.e1, allow_e3, config.literal_def32, config.extra, lower, config.budget_nodes, deadline))
    results = _run_tasks(tasks, config.threads)
    best_total = -1
    for r in results:
        if r.best >= 0:
            best_total = max(best_total, r.e1_size + r.best)
    graphs = [g for r in results if r.best >= 0 and r.e1_size + r.best == best_total for g in r.graphs]
    classes = _dedupe(graphs)
    _revalidate([g for _, g in classes], config)
    res = SearchResult(
        stat, m, n, max(best_total, 0), [g for _, g in classes[: config.max_witnesses]],
        all(r.complete for r in results),
        sum(r.nodes for r in results), config.snapshot(), witness_classes=len(classes),
        witnesses_truncated=any(r.truncated for r in results) or len(classes) > config.max_witnesses,
        e1_classes=len(e1_graphs), max_e2=max((r.max_e2 for r in results), default=None),
    )
    res.elapsed = time.time() - t0
    return _annotate(res)


def _limited(stat, m, n, allow_e3, config) -> SearchResult:
    _check_dims(m, n)
    t0 = time.time()
    deadline = t0 + config.budget_seconds if config.budget_seconds else None
    e1_graphs = _extremal_graphs(m, n, config.symmetry)
    z = len(e1_graphs[0].e1)
    return _combine(stat, m, n, e1_graphs, allow_e3, config, z, t0, deadline)


def z3_limited(m: int, n: int, config: SearchConfig = SearchConfig()) -> SearchResult:
    return _limited(Statistic.Z3L, m, n, True, config)


def z_limited(m: int, n: int, config: SearchConfig = SearchConfig()) -> SearchResult:
    return _limited(Statistic.ZL, m, n, False, config)


def z3_full(m: int, n: int, config: SearchConfig = SearchConfig(), max_cells: int = Z3A_MAX_CELLS) -> SearchResult:
    _check_dims(m, n)
    if m * n > max_cells:
        raise DimensionGuardError(f"z3a limited to m*n <= {max_cells}, got {m}x{n}")
    t0 = time.time()
    lim = z3_limited(m, n, config)
    deadline = t0 + config.budget_seconds if config.budget_seconds else None
    lower = lim.value
    floor = max(0, 2 * lower - m * n)
    e1_graphs = _c4free_graphs(m, n, floor, config.symmetry)
    res = _combine(Statistic.Z3A, m, n, e1_graphs, True, config, lower, t0, deadline)
    res.exhaustive = res.exhaustive and lim.exhaustive
    res.nodes_explored += lim.nodes_explored
    return res


def _annotate(res: SearchResult) -> SearchResult:
    key = (res.statistic.value, res.m, res.n)
    if key in PAPER_VALUES:
        res.paper_value = PAPER_VALUES[key]
        if res.value > res.paper_value:
            res.flags.append("exceeds-paper-value")
        elif res.value < res.paper_value and res.exhaustive:
            res.flags.append("below-paper-value")
    elif key in PAPER_LOWER_BOUNDS:
        res.paper_value = PAPER_LOWER_BOUNDS[key]
        if res.value < res.paper_value:
            res.flags.append("below-paper-lower-bound")
    return res


COMPUTE = {
    Statistic.Z: zarankiewicz,
    Statistic.ZL: z_limited,
    Statistic.Z3L: z3_limited,
    Statistic.Z3A: z3_full,
}


def compute(stat: Statistic | str, m: int, n: int, config: SearchConfig = SearchConfig()) -> SearchResult:
    stat = Statistic(stat.upper() if isinstance(stat, str) else stat)
    return COMPUTE[stat](m, n, config)
