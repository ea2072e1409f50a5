"""Seifert matrices, Alexander modules and the orders of their elements.

Conventions. For a Seifert matrix ``V`` the presentation matrix is
``P(t) = tV - V^T``. Its *rows* are the relations among the module basis
``e_1, ..., e_2g``: an element is a column vector ``x`` over Q[t, t^-1], and
``x`` is zero in the Alexander module iff ``x = P(t)^T w`` for some Laurent
vector ``w``. For the 9_46 matrix ``[[0, -1], [-2, 0]]`` this gives
``(2t - 1)a = 0`` and ``(t - 2)b = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .laurent import (
    ONE,
    ZERO,
    DomainError,
    LaurentPoly,
    evaluate,
    exact_div,
    format_poly,
    lp_gcd,
    lp_lcm,
    monic,
    normalize_unit,
    parse_poly,
    to_poly,
)
from .polymatrix import (
    Matrix,
    SmithForm,
    adjugate,
    det,
    laurent_mod,
    matvec,
    smith_form,
    solve,
    strip_t_factor,
    transpose,
)


class InvalidSeifertMatrix(ValueError):
    """Matrix is not square of even size, or ``det(V - V^T) != 1``."""


class UnsupportedStructure(ValueError):
    """The module does not have the shape an operation requires."""


def _int_det(rows: Sequence[Sequence[int]]) -> Fraction:
    n = len(rows)
    m = [[Fraction(x) for x in r] for r in rows]
    d = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            d = -d
        d *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return d


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)) or int(x) != x:
        raise TypeError(f"Seifert matrix entry {x!r} is not an integer")
    return int(x)


@dataclass(frozen=True)
class SeifertMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        try:
            rows = tuple(tuple(_as_int(x) for x in r) for r in self.entries)
        except TypeError as exc:
            raise InvalidSeifertMatrix(str(exc)) from None
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidSeifertMatrix("Seifert matrix must be square")
        if n % 2:
            raise InvalidSeifertMatrix("Seifert matrix must have even size")
        skew = [[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)]
        if _int_det(skew) != 1:
            raise InvalidSeifertMatrix(f"det(V - V^T) = {_int_det(skew)}, expected 1")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "SeifertMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def genus(self) -> int:
        return self.size // 2

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def presentation(self) -> Matrix:
        """``tV - V^T``; rows are relations."""
        v = self.entries
        n = self.size
        return [[LaurentPoly({1: v[i][j], 0: -v[j][i]}) for j in range(n)] for i in range(n)]

    def relation_matrix(self) -> Matrix:
        """``(tV - V^T)^T``; its column span is the submodule of relations."""
        return transpose(self.presentation())

    @cached_property
    def _adj_det(self) -> tuple[Matrix, LaurentPoly]:
        r = self.relation_matrix()
        return adjugate(r), det(r)


class CurveClass(tuple):
    """Coordinates of an element of the Alexander module over the standard basis."""

    def __new__(cls, coords: Sequence):
        return super().__new__(cls, tuple(_as_poly(c) for c in coords))

    def __add__(self, other):
        _check_len(self, other)
        return CurveClass(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        _check_len(self, other)
        return CurveClass(a - b for a, b in zip(self, other))

    def __neg__(self):
        return CurveClass(-a for a in self)

    def times(self, p) -> "CurveClass":
        """Multiply by a scalar or Laurent polynomial."""
        p = _as_poly(p)
        return CurveClass(p * a for a in self)

    def __repr__(self):
        return "CurveClass(" + ", ".join(repr(format_poly(c)) for c in self) + ")"

    def to_json(self) -> list:
        return [c.to_json() for c in self]

    @classmethod
    def from_json(cls, data) -> "CurveClass":
        return cls(LaurentPoly.from_json(c) if isinstance(c, list) else c for c in data)

    @classmethod
    def basis(cls, n: int, i: int) -> "CurveClass":
        return cls(ONE if j == i else ZERO for j in range(n))

    @classmethod
    def zero(cls, n: int) -> "CurveClass":
        return cls(ZERO for _ in range(n))


def _as_poly(c) -> LaurentPoly:
    if isinstance(c, LaurentPoly):
        return c
    if isinstance(c, (int, Fraction)):
        return LaurentPoly.const(c)
    if isinstance(c, str):
        return parse_poly(c)
    raise TypeError(f"cannot use {c!r} as a curve coordinate")


def _check_len(a, b):
    if len(a) != len(b):
        raise ValueError(f"curve lengths differ: {len(a)} vs {len(b)}")


def check_curve(V: SeifertMatrix, x: Sequence) -> CurveClass:
    x = x if isinstance(x, CurveClass) else CurveClass(x)
    if len(x) != V.size:
        raise ValueError(f"curve has {len(x)} coordinates, Seifert matrix has size {V.size}")
    return x


# ---------------------------------------------------------------------------
# Knot-level operations


def alexander_poly(V: SeifertMatrix) -> LaurentPoly:
    """Canonical associate of ``det(tV - V^T)``."""
    d = det(V.presentation())
    if d.is_zero():
        raise InvalidSeifertMatrix("presentation matrix is singular")
    delta = normalize_unit(d)
    if evaluate(delta, 1) not in (1, -1):
        raise InvalidSeifertMatrix(f"Alexander polynomial {delta} has delta(1) != +-1")
    return delta


def connected_sum(V1: SeifertMatrix, V2: SeifertMatrix) -> SeifertMatrix:
    n1, n2 = V1.size, V2.size
    rows = [list(r) + [0] * n2 for r in V1.entries]
    rows += [[0] * n1 + list(r) for r in V2.entries]
    return SeifertMatrix.of(rows)


def mirror(V: SeifertMatrix) -> SeifertMatrix:
    return SeifertMatrix.of([[-x for x in r] for r in V.entries])


def embed(V_sizes: Sequence[int], index: int, curve: Sequence) -> CurveClass:
    """Place ``curve`` in summand ``index`` of a connected sum with the given summand sizes."""
    before = sum(V_sizes[:index])
    after = sum(V_sizes[index + 1:])
    return CurveClass([ZERO] * before + list(CurveClass(curve)) + [ZERO] * after)


# ---------------------------------------------------------------------------
# Module structure


@dataclass(frozen=True)
class ModuleDecomposition:
    """Diagonalization ``U @ R @ W = diag(d_i)`` of the relation matrix ``R`` over Q[t].

    ``d_i`` are monic with factors of ``t`` removed (``t`` is a unit), so the
    rational Alexander module is the direct sum of ``Q[t, t^-1] / (d_i)``;
    ``U`` maps standard coordinates to diagonal coordinates.
    """

    diagonal: tuple[LaurentPoly, ...]
    U: Matrix
    U_inv: Matrix
    W: Matrix

    @property
    def nontrivial(self) -> list[tuple[int, LaurentPoly]]:
        return [(i, d) for i, d in enumerate(self.diagonal) if d.high > 0]

    @property
    def rank(self) -> int:
        """Dimension of the rational Alexander module over Q."""
        return sum(d.high for d in self.diagonal)

    def coordinates(self, x: Sequence[LaurentPoly]) -> list[LaurentPoly]:
        """Diagonal coordinates of ``x``, each reduced modulo its ``d_i``."""
        y = matvec(self.U, list(x))
        return [laurent_mod(yi, d) for yi, d in zip(y, self.diagonal)]

    def generator(self, i: int) -> CurveClass:
        """Standard coordinates of the generator of the ``i``-th cyclic summand."""
        return CurveClass(row[i] for row in self.U_inv)

    def rational_basis(self) -> list[CurveClass]:
        """Q-basis ``t^j g_i`` (``j < deg d_i``) of the rational module."""
        out = []
        for i, d in self.nontrivial:
            g = self.generator(i)
            out.extend(g.times(LaurentPoly.monomial(j)) for j in range(d.high))
        return out

    def rational_coordinates(self, x: Sequence[LaurentPoly]) -> list[Fraction]:
        """Coefficients of ``x`` in :meth:`rational_basis`."""
        coords = self.coordinates(x)
        out: list[Fraction] = []
        for i, d in self.nontrivial:
            r = coords[i]
            out.extend(r.coeff(j) for j in range(d.high))
        return out


@lru_cache(maxsize=256)
def decompose(V: SeifertMatrix) -> ModuleDecomposition:
    R = V.relation_matrix()
    n = V.size
    if n == 0:
        return ModuleDecomposition((), [], [], [])
    sf: SmithForm = smith_form(R)
    if len(sf.diagonal) < n:
        raise DomainError("presentation matrix is singular")
    diag = tuple(strip_t_factor(d) for d in sf.diagonal)
    return ModuleDecomposition(diag, sf.U, sf.U_inv, sf.W)


def in_relation_span(V: SeifertMatrix, x: Sequence) -> bool:
    """Is ``x`` zero in the rational Alexander module? Solves ``R w = x`` over Q(t)."""
    x = check_curve(V, x)
    if all(c.is_zero() for c in x):
        return True
    w = solve(V.relation_matrix(), list(x))
    return all(wi.is_laurent() for wi in w)


def element_order(V: SeifertMatrix, x: Sequence) -> LaurentPoly:
    """Monic generator of the annihilator of ``x`` in the rational Alexander module."""
    x = check_curve(V, x)
    dec = decompose(V)
    coords = dec.coordinates(x)
    order = ONE
    for i, d in dec.nontrivial:
        r = coords[i]
        if r.is_zero():
            continue
        order = lp_lcm(order, exact_div(d, lp_gcd(d, r)))
    return monic(order)


def linear_coords(V: SeifertMatrix, x: Sequence, relations: Sequence | None = None) -> list[Fraction]:
    """Rational coordinates of ``x`` when ``t`` acts as a scalar on each basis vector.

    ``relations[i]`` is a degree-one polynomial ``a t - b`` killing the basis
    vector ``e_i``; component ``i`` of the result is ``x_i(b / a)``. Omitted
    relations are inferred from the orders of the basis vectors.
    """
    x = check_curve(V, x)
    n = V.size
    if relations is None:
        relations = [element_order(V, CurveClass.basis(n, i)) for i in range(n)]
    if len(relations) != n:
        raise UnsupportedStructure(f"need {n} relations, got {len(relations)}")
    out = []
    for i, rel in enumerate(relations):
        rel = _as_poly(rel)
        rel = to_poly(rel) if rel else rel
        if rel.is_zero() or rel.high != 1 or len(rel.terms()) != 2:
            raise UnsupportedStructure(f"relation {format_poly(rel)} for e_{i + 1} is not of the form a t - b")
        e = CurveClass.basis(n, i)
        if not in_relation_span(V, e.times(rel)):
            raise UnsupportedStructure(f"({format_poly(rel)}) e_{i + 1} is not a relation of the module")
        root = -rel.coeff(0) / rel.coeff(1)
        out.append(evaluate(x[i], root))
    return out


# ---------------------------------------------------------------------------
# Catalog entries


@dataclass(frozen=True)
class KnotEntry:
    name: str
    seifert: SeifertMatrix
    curves: dict
    notes: str = ""

    def __post_init__(self):
        for cname, c in self.curves.items():
            if len(c) != self.seifert.size:
                raise ValueError(f"curve {cname!r} of {self.name!r} has wrong length")

    def curve(self, expr: str) -> CurveClass:
        """Resolve ``"eta"``, ``"2*eta"``, ``"-a"`` or ``"t*a"`` against the named curves."""
        expr = expr.strip()
        if expr in self.curves:
            return self.curves[expr]
        if "*" in expr:
            coeff, _, name = expr.rpartition("*")
            name = name.strip()
            if name not in self.curves:
                raise KeyError(f"unknown curve {name!r} for knot {self.name!r}")
            return self.curves[name].times(parse_poly(coeff))
        if expr.startswith("-") and expr[1:].strip() in self.curves:
            return -self.curves[expr[1:].strip()]
        raise KeyError(f"unknown curve {expr!r} for knot {self.name!r}")

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "seifert": self.seifert.to_json(),
            "curves": {k: v.to_json() for k, v in self.curves.items()},
        }
        if self.notes:
            out["notes"] = self.notes
        return out
