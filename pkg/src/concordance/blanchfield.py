"""The Blanchfield pairing computed from a Seifert matrix.

With ``R = (tV - V^T)^T`` the relation matrix (see :mod:`concordance.seifert`),

    bl(x, y) = conj(y)^T (1 - t) R^-1 x   in  Q(t) / Lambda[t, t^-1],

evaluated as ``conj(y)^T (1 - t) adj(R) x / det(R)``. Values are compared only
modulo a chosen coefficient ring, never as raw fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .laurent import RATIONALS, ZERO, CoeffRing, DomainError, LaurentPoly, involve
from .ratfun import ONE_MINUS_T, RatFun, eq_mod, format_ratfun
from .seifert import SeifertMatrix, check_curve, decompose


@dataclass(frozen=True, eq=False)
class BlValue:
    value: RatFun
    ring: CoeffRing = RATIONALS

    def __eq__(self, other):
        if not isinstance(other, BlValue):
            return NotImplemented
        return eq_mod(self.value, other.value, self.ring)

    __hash__ = None

    def is_zero(self) -> bool:
        return eq_mod(self.value, RatFun.const(0), self.ring)

    def in_ring(self, ring: CoeffRing) -> "BlValue":
        return BlValue(self.value, ring)

    def __str__(self):
        return f"{format_ratfun(self.value)} mod {self.ring}[t,t^-1]"

    def to_json(self) -> dict:
        return {"value": self.value.to_json(), "ring": str(self.ring), "text": format_ratfun(self.value)}


def bl_pair(V: SeifertMatrix, x: Sequence, y: Sequence, ring: CoeffRing = RATIONALS) -> BlValue:
    x = check_curve(V, x)
    y = check_curve(V, y)
    adj, d = V._adj_det
    if d.is_zero():
        raise DomainError("presentation matrix is singular")
    n = V.size
    ax = [sum((adj[i][k] * x[k] for k in range(n)), ZERO) for i in range(n)]
    num = sum((involve(y[i]) * ax[i] for i in range(n)), ZERO)
    return BlValue(RatFun(ONE_MINUS_T * num, d), ring)


def self_link(V: SeifertMatrix, x: Sequence, ring: CoeffRing = RATIONALS) -> BlValue:
    return bl_pair(V, x, x, ring)


def eq_selflink(V: SeifertMatrix, x1: Sequence, x2: Sequence, ring: CoeffRing = RATIONALS) -> bool:
    return eq_mod(self_link(V, x1).value, self_link(V, x2).value, ring)


def is_isotropic(V: SeifertMatrix, gens: Sequence[Sequence], ring: CoeffRing = RATIONALS) -> bool:
    """Does the pairing vanish on the submodule generated by ``gens``?

    The submodule is spanned over the coefficient ring by ``t^j g`` for the
    generators ``g``; pairs are tested for ``|j|`` up to the degree of the
    Alexander polynomial, which bounds the action of ``t``.
    """
    gens = [check_curve(V, g) for g in gens]
    dec = decompose(V)
    bound = max(dec.rank, 1)
    shifts = [LaurentPoly.monomial(j) for j in range(0, bound + 1)]
    for g in gens:
        for h in gens:
            for s in shifts:
                if not bl_pair(V, g, h.times(s), ring).is_zero():
                    return False
                if not bl_pair(V, g.times(s), h, ring).is_zero():
                    return False
    return True
