"""Exact biquadratic forms, bilinear forms and sums of squares over the integers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .graph import AugmentedGraph, Cell, GraphError, SimplicityError, is_simple


class DimensionMismatchError(ValueError):
    pass


class MonomialKey(NamedTuple):
    """Monomial x_i x_k y_j y_l as sorted row pair and sorted column pair.

    Every index tuple naming the same monomial maps here, which realizes
    a_ijkl = a_kjil = a_klij.
    """

    rows: tuple[int, int]
    cols: tuple[int, int]

    @classmethod
    def of(cls, c1, c2) -> "MonomialKey":
        (i, j), (k, l) = c1, c2
        return cls((min(i, k), max(i, k)), (min(j, l), max(j, l)))

    @property
    def is_diagonal(self) -> bool:
        return self.rows[0] == self.rows[1] and self.cols[0] == self.cols[1]

    def cells(self) -> tuple[Cell, Cell]:
        return (Cell(self.rows[0], self.cols[0]), Cell(self.rows[1], self.cols[1]))

    def text(self) -> str:
        def part(v: str, a: int, b: int) -> str:
            return f"{v}{a}^2" if a == b else f"{v}{a} {v}{b}"

        return part("x", *self.rows) + " " + part("y", *self.cols)


@dataclass(frozen=True)
class BiquadraticForm:
    m: int
    n: int
    coeffs: Mapping[MonomialKey, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, v in self.coeffs.items():
            key = MonomialKey(tuple(key[0]), tuple(key[1]))
            if not (1 <= key.rows[0] <= key.rows[1] <= self.m and 1 <= key.cols[0] <= key.cols[1] <= self.n):
                raise GraphError(f"monomial {key} outside {self.m}x{self.n}")
            if v:
                clean[key] = int(v)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiquadraticForm):
            return NotImplemented
        return (self.m, self.n, self.coeffs) == (other.m, other.n, other.coeffs)

    def __add__(self, other: "BiquadraticForm") -> "BiquadraticForm":
        if (self.m, self.n) != (other.m, other.n):
            raise DimensionMismatchError("cannot add forms of different sizes")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BiquadraticForm(self.m, self.n, out)

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for key, v in self.coeffs.items():
            mono = key.text()
            if v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v} {mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_list(self) -> list[dict]:
        return [{"cells": [list(c) for c in k.cells()], "coefficient": v} for k, v in self.coeffs.items()]


@dataclass(frozen=True)
class BilinearForm:
    m: int
    n: int
    coeffs: Mapping[Cell, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for c, v in self.coeffs.items():
            c = Cell(*c)
            if not (1 <= c.row <= self.m and 1 <= c.col <= self.n):
                raise GraphError(f"cell {c} outside {self.m}x{self.n}")
            if v:
                clean[c] = int(v)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return (self.m, self.n, self.coeffs) == (other.m, other.n, other.coeffs)

    def __hash__(self):
        return hash((self.m, self.n, tuple(self.coeffs.items())))

    @classmethod
    def unit_sum(cls, m: int, n: int, cells: Iterable) -> "BilinearForm":
        return cls(m, n, {Cell(*c): 1 for c in cells})

    def flat(self) -> list[int]:
        v = [0] * (self.m * self.n)
        for c, x in self.coeffs.items():
            v[(c.row - 1) * self.n + c.col - 1] = x
        return v

    def to_text(self) -> str:
        terms = []
        for c, v in self.coeffs.items():
            t = f"x{c.row} y{c.col}"
            terms.append(t if v == 1 else f"{v} {t}")
        return " + ".join(terms) if terms else "0"

    def to_list(self) -> list[dict]:
        return [{"cell": list(c), "coeff": v} for c, v in self.coeffs.items()]


@dataclass(frozen=True)
class SosDecomposition:
    m: int
    n: int
    forms: tuple[BilinearForm, ...]

    def __post_init__(self):
        forms = tuple(self.forms)
        for f in forms:
            if (f.m, f.n) != (self.m, self.n):
                raise DimensionMismatchError(f"form is {f.m}x{f.n}, decomposition is {self.m}x{self.n}")
        object.__setattr__(self, "forms", forms)

    def __len__(self) -> int:
        return len(self.forms)

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "forms": [f.to_list() for f in self.forms]}

    @classmethod
    def from_dict(cls, d: dict) -> "SosDecomposition":
        try:
            m, n = int(d["m"]), int(d["n"])
            forms = tuple(
                BilinearForm(m, n, {Cell(*t["cell"]): int(t["coeff"]) for t in f}) for f in d["forms"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"malformed decomposition: {exc}") from None
        return cls(m, n, forms)


def canonical_decomposition(g: AugmentedGraph, allow_empty: bool = False) -> SosDecomposition:
    """One unit-coefficient bilinear form per edge: 1-edges, then 2-edges, then 3-edges."""
    if not is_simple(g):
        raise SimplicityError("canonical decomposition needs a simple graph")
    if g.edge_count == 0 and not allow_empty:
        raise GraphError("graph has no edges")
    forms = [BilinearForm.unit_sum(g.m, g.n, [c]) for c in g.sorted_e1()]
    forms += [BilinearForm.unit_sum(g.m, g.n, e.cells) for e in g.sorted_e2()]
    forms += [BilinearForm.unit_sum(g.m, g.n, e.cells) for e in g.sorted_e3()]
    return SosDecomposition(g.m, g.n, tuple(forms))


def expand(d: SosDecomposition) -> BiquadraticForm:
    out: dict[MonomialKey, int] = {}
    for f in d.forms:
        items = list(f.coeffs.items())
        for p, (c1, a) in enumerate(items):
            key = MonomialKey.of(c1, c1)
            out[key] = out.get(key, 0) + a * a
            for c2, b in items[p + 1:]:
                key = MonomialKey.of(c1, c2)
                out[key] = out.get(key, 0) + 2 * a * b
    return BiquadraticForm(d.m, d.n, out)


def _square_into(out: dict, cells) -> None:
    cells = list(cells)
    for p, c1 in enumerate(cells):
        key = MonomialKey.of(c1, c1)
        out[key] = out.get(key, 0) + 1
        for c2 in cells[p + 1:]:
            key = MonomialKey.of(c1, c2)
            out[key] = out.get(key, 0) + 2


def build_form(g: AugmentedGraph) -> BiquadraticForm:
    """Expansion of P_G written out directly from the edge sets."""
    if not is_simple(g):
        raise SimplicityError("P_G is defined for simple graphs only")
    out: dict[MonomialKey, int] = {}
    for c in g.e1:
        _square_into(out, [c])
    for e in g.e2:
        _square_into(out, e.cells)
    for e in g.e3:
        _square_into(out, e.cells)
    return BiquadraticForm(g.m, g.n, out)


def coefficient(f: BiquadraticForm, i: int, j: int, k: int, l: int) -> int:
    """Coefficient of x_i x_k y_j y_l in ``f``."""
    if not (1 <= i <= f.m and 1 <= k <= f.m and 1 <= j <= f.n and 1 <= l <= f.n):
        raise IndexError(f"index ({i},{j},{k},{l}) out of range for {f.m}x{f.n}")
    return f.coeffs.get(MonomialKey.of((i, j), (k, l)), 0)


def integer_rank(rows: list[list[int]]) -> int:
    """Rank over Q by Bareiss fraction-free elimination; pivot is the first nonzero entry."""
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank, prev = 0, 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            x = a[r][col]
            row_r, row_p = a[r], a[rank]
            for c in range(col + 1, ncols):
                row_r[c] = (p * row_r[c] - x * row_p[c]) // prev
            row_r[col] = 0
        prev = p
        rank += 1
    return rank


def independent_rank(d: SosDecomposition) -> int:
    return integer_rank([f.flat() for f in d.forms])
