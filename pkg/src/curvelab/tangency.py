"""Tangency order of a curve against a surface Z(T) at a regular point.

Three independent routes compute the same number:

* ``order_via_D``     iterate the derivation D f = (grad P x grad Q) . grad f
                      and find the first j with (D^j T)(z) != 0;
* ``order_via_ideal`` linear algebra in the jet space at z: the largest r
                      with T in (P, Q) + I_{z, >= r+1};
* ``order_via_restriction`` the vanishing order of T along the
                      parametrization, minus one.

All three return an integer in [-1, cutoff - 2], or ``cutoff`` itself when
every tested condition held (the order is then at least cutoff - 1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import CIPair, RatCurve, curve_in_surface
from .errors import IrregularPoint, NotOnCurve
from .fields import check_order
from .linalg import reduce_vector, rref
from .mpoly import MPoly, dot, monomials_upto


def d_alpha(f: MPoly, alpha: CIPair) -> MPoly:
    return dot(alpha.tangent_field(), f.gradient())


def default_cutoff(T: MPoly, D: int) -> int:
    return D * D * max(T.degree, 0) + 1


def _check_regular(alpha: CIPair, z) -> tuple:
    F = alpha.P.field
    z = tuple(F(x) for x in z)
    if not (F.is_zero(alpha.P.eval(z)) and F.is_zero(alpha.Q.eval(z))):
        raise NotOnCurve(f"{z} is not a common zero of the pair")
    if all(F.is_zero(c.eval(z)) for c in alpha.tangent_field()):
        raise IrregularPoint(f"grad P x grad Q vanishes at {z}")
    return z


def _cap(order: int, cutoff: int) -> int:
    return cutoff if order >= cutoff - 1 else order


def order_via_D(T: MPoly, alpha: CIPair, z, cutoff: int) -> int:
    F = T.field
    check_order(cutoff - 1, F)
    z = _check_regular(alpha, z)
    field_vec = alpha.tangent_field()
    g = T
    for j in range(cutoff):
        if not F.is_zero(g.eval(z)):
            return j - 1
        g = dot(field_vec, g.gradient())
    return cutoff


def order_via_ideal(T: MPoly, gamma: RatCurve, z, cutoff: int) -> int:
    F = T.field
    R = cutoff - 1
    check_order(R, F)
    z = _check_regular(gamma.ci, z)
    if R < 0:
        return cutoff
    cols = monomials_upto(3, R)  # ascending degree: first nonzero column = lowest degree
    col_deg = [sum(m) for m in cols]
    gens = [gamma.ci.P.shift(z), gamma.ci.Q.shift(z)]
    rows = []
    for m in monomials_upto(3, R - 1):
        for g in gens:
            rows.append(g.mul_monomial(m).truncate(R).to_vector(cols))
    target = T.shift(z).truncate(R).to_vector(cols)
    if rows:
        Rm, piv = rref(rows, F, len(cols))
        target = reduce_vector(target, Rm, piv, F)
    for c, v in enumerate(target):
        if not F.is_zero(v):
            return col_deg[c] - 1
    return cutoff


def order_via_restriction(T: MPoly, gamma: RatCurve, z, cutoff: int | None = None) -> int | float:
    """Vanishing order of T along gamma at z, minus one.

    Without a cutoff a curve lying inside Z(T) reports ``float('inf')``.
    """
    s0 = gamma.param_value(z)
    f = gamma.restrict(T)
    if f.is_zero():
        return cutoff if cutoff is not None else float("inf")
    k = f.order_at(s0) - 1
    return k if cutoff is None else _cap(k, cutoff)


@dataclass(frozen=True)
class TangencyReport:
    order_via_D: int
    order_via_ideal: int
    order_via_restriction: int
    cutoff: int

    def agree(self) -> bool:
        return self.order_via_D == self.order_via_ideal == self.order_via_restriction

    def to_json(self) -> dict:
        def show(v):
            return f">={self.cutoff}" if v >= self.cutoff else v

        return {"order_via_D": show(self.order_via_D),
                "order_via_ideal": show(self.order_via_ideal),
                "order_via_restriction": show(self.order_via_restriction),
                "cutoff": self.cutoff}


def tangency_report(T: MPoly, gamma: RatCurve, z, cutoff: int | None = None) -> TangencyReport:
    if cutoff is None:
        cutoff = default_cutoff(T, gamma.ci.D)
    return TangencyReport(order_via_D(T, gamma.ci, z, cutoff),
                          order_via_ideal(T, gamma, z, cutoff),
                          order_via_restriction(T, gamma, z, cutoff),
                          cutoff)


def trapped_test(T: MPoly, gamma: RatCurve, z) -> bool:
    """True when the tangency order alone forces gamma inside Z(T).

    An order >= D^2 deg T at a regular point can only happen for a
    contained curve; a failed containment check here means a bug.
    """
    D = gamma.ci.D
    threshold = D * D * max(T.degree, 0)
    check_order(threshold, T.field)
    order = order_via_D(T, gamma.ci, z, threshold + 1)
    if order < threshold + 1:
        return False
    contained = curve_in_surface(gamma, T)
    assert contained, "tangency order above the Bezout bound without containment"
    return contained
