"""Lines and plane conics with parametrizations and defining pairs.

Every curve carries both a rational parametrization s -> num(s)/den(s)
and a complete-intersection pair (P, Q) whose common zero set is the
curve: two planes for a line, plane plus quadric for a conic.  Points
where den(s) = 0 lie at infinity and are never reported.  A conic's
stereographic parametrization misses one finite point (the direction
s = infinity); that point is stored in ``extra_points`` and handled
explicitly wherever point sets matter.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import (InfiniteIntersection, InvalidArgument, NotOnCurve,
                     ReducibleCurve, FieldTooSmall)
from .fields import Field, PrimeField
from .linalg import det, nullspace
from .mpoly import MPoly, compose_param, cross, parse_poly, format_poly
from .unipoly import UniPoly, uni_gcd, uni_roots

Point3 = tuple


@dataclass(frozen=True)
class CIPair:
    """Complete-intersection pair (P, Q) with degrees bounded by D."""

    P: MPoly
    Q: MPoly
    D: int

    def __post_init__(self):
        if self.P.is_zero() or self.Q.is_zero():
            raise InvalidArgument("complete-intersection polynomials must be nonzero")
        if self.P.degree > self.D or self.Q.degree > self.D:
            raise InvalidArgument("pair exceeds its degree bound")

    def tangent_field(self) -> tuple[MPoly, MPoly, MPoly]:
        """The polynomial vector field grad P x grad Q."""
        return cross(self.P.gradient(), self.Q.gradient())


@dataclass(frozen=True)
class RatCurve:
    kind: str
    param: tuple  # three UniPoly numerators
    den: UniPoly
    ci: CIPair
    degree: int
    field: Field
    extra_points: tuple = ()
    source: dict = dc_field(default_factory=dict, compare=False, hash=False)

    def point_at(self, s) -> Point3:
        F = self.field
        d = self.den(s)
        if F.is_zero(d):
            raise InvalidArgument("parameter maps to a point at infinity")
        inv = F.inv(d)
        return tuple(F.mul(c(s), inv) for c in self.param)

    def contains_point(self, z: Sequence) -> bool:
        z = tuple(self.field(x) for x in z)
        return self.field.is_zero(self.ci.P.eval(z)) and self.field.is_zero(self.ci.Q.eval(z))

    def restrict(self, f: MPoly) -> UniPoly:
        """den^deg f * f(num/den)."""
        return compose_param(f, self.param, None if self.kind == "line" else self.den)

    def param_value(self, z: Sequence):
        """The parameter s with point_at(s) = z; NotOnCurve if none."""
        F = self.field
        z = tuple(F(x) for x in z)
        g = UniPoly([], F)
        for c, zi in zip(self.param, z):
            g = uni_gcd(g, c - self.den.scale(zi))
        if g.is_zero():
            raise NotOnCurve("degenerate parametrization")
        for s in uni_roots(g) if g.degree > 0 else ():
            if not F.is_zero(self.den(s)):
                return s
        raise NotOnCurve(f"{z} is not in the parametrized image")

    def sample_points(self, count: int, start: int = 0) -> list[Point3]:
        """``count`` distinct affine points at parameters start, start+1, ..."""
        F = self.field
        pts = []
        s = start
        limit = F.p if isinstance(F, PrimeField) else None
        tried = 0
        while len(pts) < count:
            if limit is not None and tried >= limit:
                raise FieldTooSmall(f"cannot sample {count} points on a curve over F_{limit}")
            if not F.is_zero(self.den(s)):
                pts.append(self.point_at(s))
            s += 1
            tried += 1
        return pts

    def to_json(self) -> dict:
        return dict(self.source)


def _as_point(z, F: Field) -> Point3:
    z = tuple(F(x) for x in z)
    if len(z) != 3:
        raise InvalidArgument("points must have three coordinates")
    return z


def _normalize_linear(f: MPoly) -> MPoly:
    """Scale a linear form so its first variable coefficient is 1."""
    F = f.field
    for i in range(3):
        e = tuple(1 if j == i else 0 for j in range(3))
        c = f.coeff(e)
        if not F.is_zero(c):
            return f.scale(F.inv(c))
    return f


def line_through(a: Sequence, b: Sequence, field: Field) -> RatCurve:
    """The line a + s(b - a), trapped between two planes."""
    F = field
    a = _as_point(a, F)
    b = _as_point(b, F)
    d = tuple(F.sub(y, x) for x, y in zip(a, b))
    return line(a, d, F)


def line(point: Sequence, direction: Sequence, field: Field) -> RatCurve:
    F = field
    a = _as_point(point, F)
    d = _as_point(direction, F)
    if all(F.is_zero(x) for x in d):
        raise InvalidArgument("a line needs two distinct points")
    k = next(i for i in range(3) if not F.is_zero(d[i]))
    X = MPoly.gens(3, F)
    planes = []
    for j in range(3):
        if j == k:
            continue
        # (x_j - a_j) - (d_j/d_k)(x_k - a_k)
        ratio = F.div(d[j], d[k])
        planes.append(_normalize_linear((X[j] - a[j]) - (X[k] - a[k]).scale(ratio)))
    param = tuple(UniPoly([a[i], d[i]], F) for i in range(3))
    src = {"kind": "line", "point": [F.to_json(x) for x in a],
           "dir": [F.to_json(x) for x in d]}
    return RatCurve("line", param, UniPoly([1], F), CIPair(planes[0], planes[1], 1), 1, F,
                    (), src)


def _plane_basis(plane: MPoly) -> tuple[list, list]:
    F = plane.field
    lin = [plane.coeff(tuple(1 if j == i else 0 for j in range(3))) for i in range(3)]
    ker = nullspace([lin], F, 3)
    return ker[0], ker[1]


def conic_from(plane: MPoly, quadric: MPoly, seed: Sequence) -> RatCurve:
    """Irreducible conic plane ∩ quadric, parametrized by lines through seed."""
    F = plane.field
    if plane.degree != 1:
        raise InvalidArgument("plane must have degree 1")
    if quadric.degree != 2:
        raise InvalidArgument("quadric must have degree 2")
    if isinstance(F, PrimeField) and F.p == 2:
        raise InvalidArgument("conics need characteristic != 2")
    z0 = _as_point(seed, F)
    if not F.is_zero(plane.eval(z0)):
        raise NotOnCurve("seed is not on the plane")
    if not F.is_zero(quadric.eval(z0)):
        raise NotOnCurve("seed is not on the quadric")
    e1, e2 = _plane_basis(plane)
    U = MPoly.gens(2, F)
    subs = [U[0].scale(e1[i]) + U[1].scale(e2[i]) + z0[i] for i in range(3)]
    q = quadric.compose(subs)
    A, B, C = q.coeff((2, 0)), q.coeff((1, 1)), q.coeff((0, 2))
    D, E, F0 = q.coeff((1, 0)), q.coeff((0, 1)), q.coeff((0, 0))
    two = F(2)
    sym = [[F.mul(two, A), B, D], [B, F.mul(two, C), E], [D, E, F.mul(two, F0)]]
    if F.is_zero(det(sym, F)):
        raise ReducibleCurve("plane section of the quadric is not an irreducible conic")
    M = UniPoly([A, B, C], F)
    L = UniPoly([D, E], F)
    param = tuple(M.scale(z0[i]) - L * UniPoly([e1[i], e2[i]], F) for i in range(3))
    extra = ()
    if not F.is_zero(C):
        lam = F.neg(F.div(E, C))
        extra = (tuple(F.add(z0[i], F.mul(lam, e2[i])) for i in range(3)),)
    src = {"kind": "conic", "plane": format_poly(plane), "quadric": format_poly(quadric),
           "seed": [F.to_json(x) for x in z0]}
    return RatCurve("conic", param, M, CIPair(plane, quadric, 2), 2, F, extra, src)


def is_regular_at(gamma: RatCurve, z: Sequence) -> bool:
    F = gamma.field
    z = _as_point(z, F)
    if not gamma.contains_point(z):
        raise NotOnCurve(f"{z} is not on the curve")
    return any(not F.is_zero(c.eval(z)) for c in gamma.ci.tangent_field())


def curve_in_surface(gamma: RatCurve, T: MPoly) -> bool:
    return gamma.restrict(T).is_zero()


def same_curve(g1: RatCurve, g2: RatCurve) -> bool:
    return curve_in_surface(g1, g2.ci.P) and curve_in_surface(g1, g2.ci.Q)


def _affine_roots(gamma: RatCurve, f: UniPoly) -> list:
    F = gamma.field
    if f.degree <= 0:
        return []
    return [s for s in uni_roots(f) if not F.is_zero(gamma.den(s))]


def intersect_curves(g1: RatCurve, g2: RatCurve) -> set[Point3]:
    """All affine points common to two distinct curves."""
    a = g1.restrict(g2.ci.P)
    b = g1.restrict(g2.ci.Q)
    g = uni_gcd(a, b)
    if g.is_zero():
        raise InfiniteIntersection("curves coincide")
    pts = {g1.point_at(s) for s in _affine_roots(g1, g)}
    pts.update(z for z in g1.extra_points if g2.contains_point(z))
    return pts


def intersect_curve_surface(gamma: RatCurve, T: MPoly) -> set[Point3]:
    """Distinct affine points of gamma ∩ Z(T); gamma must not lie in Z(T)."""
    f = gamma.restrict(T)
    if f.is_zero():
        raise InfiniteIntersection("curve lies in the surface")
    pts = {gamma.point_at(s) for s in _affine_roots(gamma, f)}
    pts.update(z for z in gamma.extra_points if gamma.field.is_zero(T.eval(z)))
    return pts


def curve_from_json(d: dict, field: Field) -> RatCurve:
    kind = d.get("kind")
    if kind == "line":
        if "dir" in d:
            return line(d["point"], d["dir"], field)
        return line_through(d["point"], d["through"], field)
    if kind == "conic":
        plane = parse_poly(d["plane"], 3, field)
        quad = parse_poly(d["quadric"], 3, field)
        return conic_from(plane, quad, d["seed"])
    raise InvalidArgument(f"unknown curve kind {kind!r}")


def curve_to_json(gamma: RatCurve) -> dict:
    return gamma.to_json()
