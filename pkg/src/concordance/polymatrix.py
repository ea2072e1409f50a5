"""Small dense matrices over Q[t, t^-1]: determinants, adjugates, Smith form over Q[t]."""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import (
    ONE,
    ZERO,
    DomainError,
    LaurentPoly,
    divmod_poly,
    exact_div,
    lp_xgcd,
    monic,
    to_poly,
)
from .ratfun import RatFun

Matrix = list[list[LaurentPoly]]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), ZERO) for j in range(cols)] for i in range(len(a))]


def matvec(a: Matrix, v) -> list:
    return [sum((a[i][k] * v[k] for k in range(len(v))), ZERO) for i in range(len(a))]


def det(a: Matrix) -> LaurentPoly:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return ONE
    m = [row[:] for row in a]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    return m[n - 1][n - 1].scale(sign)


def minor(a: Matrix, i: int, j: int) -> Matrix:
    return [row[:j] + row[j + 1:] for r, row in enumerate(a) if r != i]


def adjugate(a: Matrix) -> Matrix:
    n = len(a)
    if n == 0:
        return []
    if n == 1:
        return [[ONE]]
    return [[det(minor(a, j, i)).scale((-1) ** (i + j)) for j in range(n)] for i in range(n)]


def solve(a: Matrix, b: list[LaurentPoly]) -> list[RatFun]:
    """Solve ``a w = b`` over Q(t) for square nonsingular ``a``."""
    n = len(a)
    m = [[RatFun(x) for x in row] + [RatFun(b[i])] for i, row in enumerate(a)]
    for k in range(n):
        piv = next((i for i in range(k, n) if not m[i][k].is_zero()), None)
        if piv is None:
            raise DomainError("singular matrix")
        m[k], m[piv] = m[piv], m[k]
        inv = RatFun.const(1) / m[k][k]
        m[k] = [x * inv for x in m[k]]
        for i in range(n):
            if i != k and not m[i][k].is_zero():
                f = m[i][k]
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return [m[i][n] for i in range(n)]


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ W == D`` with ``D`` diagonal, monic, each entry dividing the next."""

    diagonal: tuple[LaurentPoly, ...]
    U: Matrix
    U_inv: Matrix
    W: Matrix


def smith_form(a: Matrix) -> SmithForm:
    """Smith normal form over the Euclidean domain Q[t].

    Entries must be ordinary polynomials (no negative exponents).
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [row[:] for row in a]
    U = identity(rows)
    Ui = identity(rows)
    W = identity(cols)

    def row_add(i, k, c):  # row_i += c * row_k
        m[i] = [x + c * y for x, y in zip(m[i], m[k])]
        U[i] = [x + c * y for x, y in zip(U[i], U[k])]
        for r in range(rows):
            Ui[r][k] = Ui[r][k] - c * Ui[r][i]

    def row_swap(i, k):
        m[i], m[k] = m[k], m[i]
        U[i], U[k] = U[k], U[i]
        for r in range(rows):
            Ui[r][i], Ui[r][k] = Ui[r][k], Ui[r][i]

    def row_scale(k, s):
        m[k] = [x.scale(s) for x in m[k]]
        U[k] = [x.scale(s) for x in U[k]]
        for r in range(rows):
            Ui[r][k] = Ui[r][k].scale(1 / s)

    def col_add(j, k, c):  # col_j += c * col_k
        for r in range(rows):
            m[r][j] = m[r][j] + c * m[r][k]
        for r in range(cols):
            W[r][j] = W[r][j] + c * W[r][k]

    def col_swap(j, k):
        for r in range(rows):
            m[r][j], m[r][k] = m[r][k], m[r][j]
        for r in range(cols):
            W[r][j], W[r][k] = W[r][k], W[r][j]

    diag: list[LaurentPoly] = []
    for k in range(min(rows, cols)):
        cands = [(m[i][j].high, i, j) for i in range(k, rows) for j in range(k, cols) if m[i][j]]
        if not cands:
            break
        _, i0, j0 = min(cands)
        row_swap(k, i0)
        col_swap(k, j0)
        while True:
            dirty = False
            for i in range(k + 1, rows):
                if m[i][k]:
                    q, _ = divmod_poly(m[i][k], m[k][k])
                    row_add(i, k, -q)
                    if m[i][k]:
                        dirty = True
            for j in range(k + 1, cols):
                if m[k][j]:
                    q, _ = divmod_poly(m[k][j], m[k][k])
                    col_add(j, k, -q)
                    if m[k][j]:
                        dirty = True
            if dirty:
                cands = [(m[i][k].high, i, None) for i in range(k + 1, rows) if m[i][k]]
                cands += [(m[k][j].high, None, j) for j in range(k + 1, cols) if m[k][j]]
                _, i1, j1 = min(cands, key=lambda c: c[0])
                if i1 is not None:
                    row_swap(k, i1)
                else:
                    col_swap(k, j1)
                continue
            bad = next(
                (i for i in range(k + 1, rows) for j in range(k + 1, cols)
                 if m[i][j] and divmod_poly(m[i][j], m[k][k])[1]),
                None,
            )
            if bad is None:
                break
            row_add(k, bad, ONE)
        row_scale(k, 1 / m[k][k].lead())
        diag.append(m[k][k])
    return SmithForm(tuple(diag), U, Ui, W)


def laurent_mod(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Canonical representative of ``p`` in ``Q[t, t^-1] / (d)``; needs ``d(0) != 0``."""
    d = to_poly(d)
    if d.high == 0:
        return ZERO
    if d.coeff(0) == 0:
        raise DomainError("modulus must be coprime to t")
    if p.is_zero():
        return ZERO
    if p.low >= 0:
        return divmod_poly(p, d)[1]
    k = -p.low
    _, r = divmod_poly(p.shift(k), d)
    g, s, _ = lp_xgcd(LaurentPoly.monomial(k), d)
    assert g == ONE
    return divmod_poly(r * s, d)[1]


def strip_t_factor(p: LaurentPoly) -> LaurentPoly:
    """Remove factors of t from a polynomial and make it monic."""
    return monic(to_poly(p))
