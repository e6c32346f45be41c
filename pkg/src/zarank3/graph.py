"""Augmented bipartite graphs with 1-, 2- and 3-edges over an m x n grid of cells.

Cells are 1-based ``(row, col)`` pairs. Edges are stored in canonical
(sorted) order so set semantics and serialization are deterministic.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from typing import NamedTuple

CANONICAL_GUARD = 49


class GraphError(ValueError):
    pass


class DegenerateEdgeError(GraphError):
    """A 3-edge repeats a row or a column."""


class SimplicityError(GraphError):
    """Some cell is used by more than one edge."""


class DimensionGuardError(GraphError):
    pass


class EdgeNotInGraphError(GraphError):
    pass


class Cell(NamedTuple):
    row: int
    col: int

    def __str__(self) -> str:
        return f"({self.row},{self.col})"


def _cell(c) -> Cell:
    if isinstance(c, Cell):
        return c
    r, s = c
    return Cell(int(r), int(s))


class Degeneracy(str, enum.Enum):
    NONE = "nondegenerate"
    ROW = "row-degenerate"
    COLUMN = "column-degenerate"


@dataclass(frozen=True, order=True)
class Edge2:
    a: Cell
    b: Cell

    def __post_init__(self):
        a, b = _cell(self.a), _cell(self.b)
        if a == b:
            raise GraphError(f"2-edge needs two distinct cells, got {a} twice")
        if b < a:
            a, b = b, a
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def cells(self) -> tuple[Cell, Cell]:
        return (self.a, self.b)

    @property
    def degeneracy(self) -> Degeneracy:
        if self.a.row == self.b.row:
            return Degeneracy.ROW
        if self.a.col == self.b.col:
            return Degeneracy.COLUMN
        return Degeneracy.NONE

    def opposite_cells(self) -> tuple[Cell, Cell] | None:
        """The cells (i,l) and (k,j) of a nondegenerate 2-edge (i,j;k,l), else None."""
        if self.degeneracy is not Degeneracy.NONE:
            return None
        return (Cell(self.a.row, self.b.col), Cell(self.b.row, self.a.col))

    def __str__(self) -> str:
        return f"({self.a.row},{self.a.col};{self.b.row},{self.b.col})"


@dataclass(frozen=True, order=True)
class Edge3:
    a: Cell
    b: Cell
    c: Cell

    def __post_init__(self):
        cells = sorted({_cell(self.a), _cell(self.b), _cell(self.c)})
        if len(cells) != 3:
            raise GraphError("3-edge needs three distinct cells")
        if len({x.row for x in cells}) != 3 or len({x.col for x in cells}) != 3:
            raise DegenerateEdgeError(
                "degenerate 3-edge " + ";".join(f"{x.row},{x.col}" for x in cells)
            )
        for name, v in zip("abc", cells):
            object.__setattr__(self, name, v)

    @property
    def cells(self) -> tuple[Cell, Cell, Cell]:
        return (self.a, self.b, self.c)

    @property
    def rows(self) -> tuple[int, ...]:
        return tuple(sorted(x.row for x in self.cells))

    @property
    def cols(self) -> tuple[int, ...]:
        return tuple(sorted(x.col for x in self.cells))

    def saturation_set(self) -> tuple[Cell, ...]:
        """The six cells of R x C that are not halves of this edge."""
        own = set(self.cells)
        return tuple(
            Cell(r, s) for r in self.rows for s in self.cols if Cell(r, s) not in own
        )

    def __str__(self) -> str:
        return "(" + ";".join(f"{x.row},{x.col}" for x in self.cells) + ")"


@dataclass(frozen=True)
class AugmentedGraph:
    m: int
    n: int
    e1: frozenset = field(default_factory=frozenset)
    e2: frozenset = field(default_factory=frozenset)
    e3: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise GraphError(f"invalid dimensions {self.m}x{self.n}")
        e1 = frozenset(_cell(c) for c in self.e1)
        e2 = frozenset(e if isinstance(e, Edge2) else Edge2(*e) for e in self.e2)
        e3 = frozenset(e if isinstance(e, Edge3) else Edge3(*e) for e in self.e3)
        object.__setattr__(self, "e1", e1)
        object.__setattr__(self, "e2", e2)
        object.__setattr__(self, "e3", e3)
        for c in self.cell_list():
            if not (1 <= c.row <= self.m and 1 <= c.col <= self.n):
                raise GraphError(f"cell {c} outside the {self.m}x{self.n} grid")

    @classmethod
    def build(cls, m: int, n: int, e1=(), e2=(), e3=()) -> "AugmentedGraph":
        return cls(m, n, frozenset(e1), frozenset(e2), frozenset(e3))

    def cell_list(self) -> list[Cell]:
        """E1 followed by the halves of E2 and E3, duplicates kept."""
        out = list(self.e1)
        for e in self.e2:
            out.extend(e.cells)
        for e in self.e3:
            out.extend(e.cells)
        return out

    @property
    def edge_count(self) -> int:
        return len(self.e1) + len(self.e2) + len(self.e3)

    def sorted_e1(self) -> list[Cell]:
        return sorted(self.e1)

    def sorted_e2(self) -> list[Edge2]:
        return sorted(self.e2)

    def sorted_e3(self) -> list[Edge3]:
        return sorted(self.e3)

    def without(self, edge) -> "AugmentedGraph":
        if isinstance(edge, Edge2):
            return AugmentedGraph(self.m, self.n, self.e1, self.e2 - {edge}, self.e3)
        if isinstance(edge, Edge3):
            return AugmentedGraph(self.m, self.n, self.e1, self.e2, self.e3 - {edge})
        return AugmentedGraph(self.m, self.n, self.e1 - {_cell(edge)}, self.e2, self.e3)

    def permuted(self, row_perm, col_perm) -> "AugmentedGraph":
        """Relabel rows by ``row_perm[i-1]`` and columns by ``col_perm[j-1]`` (1-based images)."""

        def f(c: Cell) -> Cell:
            return Cell(row_perm[c.row - 1], col_perm[c.col - 1])

        return AugmentedGraph(
            self.m,
            self.n,
            frozenset(f(c) for c in self.e1),
            frozenset(Edge2(f(e.a), f(e.b)) for e in self.e2),
            frozenset(Edge3(f(e.a), f(e.b), f(e.c)) for e in self.e3),
        )

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "e1": [list(c) for c in self.sorted_e1()],
            "e2": [[list(c) for c in e.cells] for e in self.sorted_e2()],
            "e3": [[list(c) for c in e.cells] for e in self.sorted_e3()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "AugmentedGraph":
        try:
            m, n = int(d["m"]), int(d["n"])
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"graph needs integer 'm' and 'n': {exc}") from None
        try:
            e1 = [tuple(c) for c in d.get("e1", [])]
            e2, e3 = [], []
            for e in d.get("e2", []):
                if len(e) != 2:
                    raise GraphError(f"2-edge must list two cells: {e}")
                e2.append(Edge2(*[tuple(c) for c in e]))
            for e in d.get("e3", []):
                if len(e) != 3:
                    raise GraphError(f"3-edge must list three cells: {e}")
                e3.append(Edge3(*[tuple(c) for c in e]))
            return cls.build(m, n, e1, e2, e3)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"malformed graph: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "AugmentedGraph":
        return cls.from_dict(json.loads(text))


def occupied_cells(g: AugmentedGraph) -> set[Cell]:
    return set(g.cell_list())


def is_simple(g: AugmentedGraph) -> bool:
    cells = g.cell_list()
    return len(cells) == len(set(cells))


class CellStatus(enum.Enum):
    FREE = 0
    ONE = 1
    TWO_HALF = 2
    THREE_HALF = 3


class OccupancyGrid:
    """Per-cell status of a simple graph; each occupied cell names its owning edge."""

    def __init__(self, g: AugmentedGraph):
        if not is_simple(g):
            raise SimplicityError("occupancy grid requires a simple graph")
        self.m, self.n = g.m, g.n
        self._owner: dict[Cell, object] = {}
        self._status: dict[Cell, CellStatus] = {}
        for c in g.e1:
            self._status[c] = CellStatus.ONE
            self._owner[c] = c
        for e in g.e2:
            for c in e.cells:
                self._status[c] = CellStatus.TWO_HALF
                self._owner[c] = e
        for e in g.e3:
            for c in e.cells:
                self._status[c] = CellStatus.THREE_HALF
                self._owner[c] = e

    def status(self, c) -> CellStatus:
        return self._status.get(_cell(c), CellStatus.FREE)

    def owner(self, c):
        return self._owner.get(_cell(c))

    def is_occupied(self, c) -> bool:
        return _cell(c) in self._status

    def to_graph(self) -> AugmentedGraph:
        e1, e2, e3 = set(), set(), set()
        for c, st in self._status.items():
            if st is CellStatus.ONE:
                e1.add(c)
            elif st is CellStatus.TWO_HALF:
                e2.add(self._owner[c])
            else:
                e3.add(self._owner[c])
        return AugmentedGraph.build(self.m, self.n, e1, e2, e3)

    def render(self) -> str:
        sym = {CellStatus.FREE: ".", CellStatus.ONE: "1", CellStatus.TWO_HALF: "2", CellStatus.THREE_HALF: "3"}
        return "\n".join(
            "".join(sym[self.status((i, j))] for j in range(1, self.n + 1))
            for i in range(1, self.m + 1)
        )


# canonical codes

def _kind_matrix(g: AugmentedGraph) -> list[list[int]]:
    k = [[0] * g.n for _ in range(g.m)]
    for c in g.e1:
        k[c.row - 1][c.col - 1] = 1
    for e in g.e2:
        for c in e.cells:
            k[c.row - 1][c.col - 1] = 2
    for e in g.e3:
        for c in e.cells:
            k[c.row - 1][c.col - 1] = 3
    return k


def _edges0(g: AugmentedGraph, transpose: bool):
    def t(c: Cell) -> tuple[int, int]:
        return (c.col - 1, c.row - 1) if transpose else (c.row - 1, c.col - 1)

    return ([tuple(t(c) for c in e.cells) for e in g.e2], [tuple(t(c) for c in e.cells) for e in g.e3])


def _encode(kinds_rows, row_order, col_perm, e2, e3):
    # row_order[new] = old row; col_perm[old] = new col
    row_pos = {old: new for new, old in enumerate(row_order)}

    def f(c):
        return (row_pos[c[0]], col_perm[c[1]])

    return (
        tuple(sorted(tuple(sorted(f(c) for c in e)) for e in e2)),
        tuple(sorted(tuple(sorted(f(c) for c in e)) for e in e3)),
    )


def canonical_code(g: AugmentedGraph, guard: int = CANONICAL_GUARD) -> bytes:
    """Code invariant under row and column relabeling; equal codes iff isomorphic.

    Minimizes (cell-kind matrix, sorted 2-edges, sorted 3-edges) over all
    column orders of the shorter side, sorting the other side's lines and
    branching only over ties among identical lines.
    """
    if g.m * g.n > guard:
        raise DimensionGuardError(f"canonical_code limited to m*n <= {guard}, got {g.m}x{g.n}")
    transpose = g.m < g.n
    kinds = _kind_matrix(g)
    if transpose:
        kinds = [list(col) for col in zip(*kinds)]
    rows, cols = len(kinds), len(kinds[0])
    e2, e3 = _edges0(g, transpose)
    plain = not e2 and not e3

    best_mat = None
    best_edges = None
    for order in itertools.permutations(range(cols)):
        # order[new] = old col
        col_perm = [0] * cols
        for new, old in enumerate(order):
            col_perm[old] = new
        lines = [tuple(kinds[r][c] for c in order) for r in range(rows)]
        ranked = sorted(range(rows), key=lambda r: lines[r])
        mat = tuple(lines[r] for r in ranked)
        if best_mat is not None and mat > best_mat:
            continue
        if plain:
            if best_mat is None or mat < best_mat:
                best_mat, best_edges = mat, ((), ())
            continue
        groups = [list(grp) for _, grp in itertools.groupby(ranked, key=lambda r: lines[r])]
        local = None
        for choice in itertools.product(*(itertools.permutations(grp) for grp in groups)):
            row_order = [r for grp in choice for r in grp]
            enc = _encode(kinds, row_order, col_perm, e2, e3)
            if local is None or enc < local:
                local = enc
        if best_mat is None or mat < best_mat or local < best_edges:
            best_mat, best_edges = mat, local
    payload = {"m": g.m, "n": g.n, "t": transpose, "k": best_mat, "e": best_edges}
    return json.dumps(payload, separators=(",", ":")).encode()
