"""Flecnodal points: pointwise decisions and Salmon's flecnode polynomial.

The directional forms at z are c_j(v) = j! * (degree-j part of T(z + v)),
so T(z + s v) = T(z) + sum_j c_j(v) s^j / j!.  A line z + s v is tangent
to Z(T) to order >= r exactly when T(z) = 0 and c_1(v) = ... = c_r(v) = 0.

The flecnode polynomial is the Macaulay resultant in v of (c_1, c_2, c_3),
computed node by node on a grid of base points and interpolated in x.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import product
from math import factorial
from typing import Sequence

from .curves import RatCurve, same_curve
from .errors import InvalidArgument, NotOnCurve, WorkLimitExceeded
from .fields import Field, PrimeField, check_order
from .groebner import normal_form
from .linalg import det, nullspace
from .mpoly import MPoly, jet, monomials_of_degree
from .tangency import order_via_D
from .unipoly import UniPoly, interpolate_points, uni_gcd, uni_roots

MAX_SCAN_PRIME = 2**16 + 1
MAX_LISTED_DIRECTIONS = 10**6
SCAN_ORACLE_LIMIT = 400


# -- directional forms --------------------------------------------------------

@dataclass(frozen=True)
class DirectionalForms:
    z: tuple
    forms: tuple  # c_1 .. c_r as MPoly in (v1, v2, v3)

    def form(self, j: int) -> MPoly:
        return self.forms[j - 1]


def directional_forms(T: MPoly, z: Sequence, r: int) -> DirectionalForms:
    F = T.field
    check_order(r, F)
    if T.arity != 3:
        raise InvalidArgument("directional forms are defined for surfaces in 3-space")
    z = tuple(F(x) for x in z)
    local = T.shift(z)
    forms = tuple(local.homogeneous_part(j).scale(F(factorial(j)))
                  for j in range(1, r + 1))
    return DirectionalForms(z, forms)


def _normalize(v: Sequence, F: Field) -> tuple:
    """Projective representative with first nonzero coordinate 1."""
    for c in v:
        if not F.is_zero(c):
            inv = F.inv(c)
            return tuple(F.mul(x, inv) for x in v)
    raise InvalidArgument("zero vector is not a projective point")


def _projective_plane(p: int):
    for a in range(p):
        for b in range(p):
            yield (1, a, b)
    for b in range(p):
        yield (0, 1, b)
    yield (0, 0, 1)


def _check_surface_point(T: MPoly, z) -> tuple:
    F = T.field
    if not isinstance(F, PrimeField):
        raise InvalidArgument("direction search needs a prime field")
    z = tuple(F(x) for x in z)
    if not F.is_zero(T.eval(z)):
        raise NotOnCurve(f"{z} is not on Z(T)")
    return z


def _restrict_to_line(forms: Sequence[MPoly], b1: Sequence, b2: Sequence) -> list[UniPoly]:
    """Each form evaluated along b1 + t*b2, as a polynomial in t."""
    F = forms[0].field
    phi = [UniPoly([b1[i], b2[i]], F) for i in range(3)]
    out = []
    for f in forms:
        acc = UniPoly([], F)
        for e, c in f.terms.items():
            term = UniPoly([c], F)
            for i, k in enumerate(e):
                if k:
                    term = term * phi[i] ** k
            acc = acc + term
        out.append(acc)
    return out


def _points_on_pencil_line(forms, b1, b2, F: PrimeField) -> list[tuple]:
    """Projective zeros of all forms on the line {b1 + t b2} u {b2}."""
    out = []
    if all(F.is_zero(f.eval(b2)) for f in forms):
        out.append(_normalize(b2, F))
    g = UniPoly([], F)
    for u in _restrict_to_line(forms, b1, b2):
        g = uni_gcd(g, u)
    if g.is_zero():
        ts = range(F.p)
    elif g.degree <= 0:
        ts = ()
    else:
        ts = sorted(uni_roots(g))
    for t in ts:
        out.append(_normalize([F.add(x, F.mul(t, y)) for x, y in zip(b1, b2)], F))
    return out


def _direction_count_if_all(forms, F: PrimeField) -> int | None:
    if all(f.is_zero() for f in forms):
        return F.p * F.p + F.p + 1
    return None


def flecnodal_directions(T: MPoly, z: Sequence, r: int, p: int | None = None) -> list[tuple]:
    """Every projective direction v with c_1(v) = ... = c_r(v) = 0.

    At a regular point the solutions lie on the tangent line c_1 = 0 and
    are found by a gcd and root extraction.  At a singular point the
    projective plane is swept one affine line at a time.
    """
    F = T.field
    if p is not None and (not isinstance(F, PrimeField) or F.p != p):
        raise InvalidArgument("field of T does not match the requested prime")
    z = _check_surface_point(T, z)
    forms = [f for f in directional_forms(T, z, r).forms if not f.is_zero()]
    if not forms:
        total = F.p * F.p + F.p + 1
        if total > MAX_LISTED_DIRECTIONS:
            raise WorkLimitExceeded(f"all {total} directions qualify; too many to list")
        return sorted(_projective_plane(F.p))
    c1 = forms[0]
    found: set = set()
    if c1.degree == 1:
        lin = [c1.coeff(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
        b1, b2 = nullspace([lin], F, 3)
        found.update(_points_on_pencil_line(forms, b1, b2, F))
    else:
        if F.p > MAX_SCAN_PRIME:
            raise WorkLimitExceeded("singular-point direction sweep needs p <= 2^16 + 1")
        for a in range(F.p):
            found.update(_points_on_pencil_line(forms, (1, a, 0), (0, 0, 1), F))
        found.update(_points_on_pencil_line(forms, (0, 1, 0), (0, 0, 1), F))
    return sorted(found)


def directions_scan(T: MPoly, z: Sequence, r: int) -> list[tuple]:
    """Exhaustive check of all p^2 + p + 1 directions (small p only)."""
    F = T.field
    z = _check_surface_point(T, z)
    if F.p > SCAN_ORACLE_LIMIT:
        raise WorkLimitExceeded(f"exhaustive scan limited to p <= {SCAN_ORACLE_LIMIT}")
    forms = directional_forms(T, z, r).forms
    return sorted(v for v in _projective_plane(F.p)
                  if all(F.is_zero(f.eval(v)) for f in forms))


@dataclass(frozen=True)
class FlecReport:
    point: tuple
    r: int
    directions: tuple
    count_distinct: int

    def to_json(self) -> dict:
        return {"point": list(self.point), "r": self.r,
                "directions": [list(v) for v in self.directions],
                "count_distinct": self.count_distinct}


def flec_report(T: MPoly, z: Sequence, r: int) -> FlecReport:
    z = _check_surface_point(T, z)
    forms = directional_forms(T, z, r).forms
    total = _direction_count_if_all(forms, T.field)
    if total is not None and total > MAX_LISTED_DIRECTIONS:
        return FlecReport(z, r, (), total)
    dirs = flecnodal_directions(T, z, r)
    return FlecReport(z, r, tuple(dirs), len(dirs))


def _curve_witnesses(T: MPoly, z: tuple, r: int, curves: Sequence[RatCurve]) -> int:
    distinct: list[RatCurve] = []
    for g in curves:
        if not g.contains_point(z):
            continue
        # cutoff r + 1 saturates exactly when the order is at least r
        if order_via_D(T, g.ci, z, r + 1) != r + 1:
            continue
        if not any(same_curve(g, h) for h in distinct):
            distinct.append(g)
    return len(distinct)


def is_flecnodal(T: MPoly, z: Sequence, t: int, r: int, p: int | None = None,
                 curves: Sequence[RatCurve] | None = None) -> bool:
    """At least t distinct family curves through z, tangent to order >= r.

    With ``curves`` omitted the family is all lines over the field.
    """
    F = T.field
    if p is not None and (not isinstance(F, PrimeField) or F.p != p):
        raise InvalidArgument("field of T does not match the requested prime")
    if curves is not None:
        z = tuple(F(x) for x in z)
        if not F.is_zero(T.eval(z)):
            raise NotOnCurve(f"{z} is not on Z(T)")
        return _curve_witnesses(T, z, r, curves) >= t
    z = _check_surface_point(T, z)
    forms = directional_forms(T, z, r).forms
    total = _direction_count_if_all(forms, F)
    if total is not None:
        return total >= t
    return len(flecnodal_directions(T, z, r)) >= t


def jet_determines(T: MPoly, z: Sequence, t: int, r: int, p: int | None = None,
                   curves: Sequence[RatCurve] | None = None) -> bool:
    """Verdict through the r-jet, asserted equal to the verdict through T."""
    J = jet(T, z, r).poly
    via_jet = is_flecnodal(J, z, t, r, p, curves)
    direct = is_flecnodal(T, z, t, r, p, curves)
    assert via_jet == direct, "r-jet changed the flecnodal verdict"
    return via_jet


# -- Macaulay resultant of degrees (1, 2, 3) in three variables ---------------

_DEGS = (1, 2, 3)
_MAC_DEGREE = sum(d - 1 for d in _DEGS) + 1  # 4
_MAC_MONOS = monomials_of_degree(3, _MAC_DEGREE)
_MAC_INDEX = {m: i for i, m in enumerate(_MAC_MONOS)}


def _row_owner(m: tuple) -> int:
    for i, d in enumerate(_DEGS):
        if m[i] >= d:
            return i
    raise AssertionError("every degree-4 monomial is divisible by some v_i^d_i")


def _is_reduced(m: tuple) -> bool:
    return sum(1 for i, d in enumerate(_DEGS) if m[i] >= d) == 1


_OWNERS = [_row_owner(m) for m in _MAC_MONOS]
_EXTRANEOUS = [k for k, m in enumerate(_MAC_MONOS) if not _is_reduced(m)]


def macaulay_matrix(forms: Sequence[dict], F: Field) -> list[list]:
    """Rows (m / v_i^d_i) * f_i indexed like their monomial m.

    ``forms`` are dicts exponent -> coefficient for f_1, f_2, f_3.
    """
    n = len(_MAC_MONOS)
    rows = []
    for k, m in enumerate(_MAC_MONOS):
        i = _OWNERS[k]
        shift = tuple(m[a] - (_DEGS[i] if a == i else 0) for a in range(3))
        row = [F.zero] * n
        for e, c in forms[i].items():
            row[_MAC_INDEX[tuple(x + y for x, y in zip(e, shift))]] = c
        rows.append(row)
    return rows


def macaulay_resultant(forms: Sequence[dict], F: Field):
    """det M / det A, or None when the extraneous minor vanishes."""
    M = macaulay_matrix(forms, F)
    A = [[M[i][j] for j in _EXTRANEOUS] for i in _EXTRANEOUS]
    dA = det(A, F)
    if F.is_zero(dA):
        return None
    return F.div(det(M, F), dA)


def _compose_form(form: dict, g: Sequence[Sequence], F: Field) -> dict:
    """f(g v) for a form given as exponent -> coefficient."""
    V = MPoly.gens(3, F)
    subs = [V[0].scale(g[i][0]) + V[1].scale(g[i][1]) + V[2].scale(g[i][2]) for i in range(3)]
    return dict(MPoly._raw(dict(form), 3, F).compose(subs).terms)


def resultant_with_retry(forms: Sequence[dict], F: Field, rng: random.Random,
                         attempts: int = 20):
    """Res(f1, f2, f3), retrying random coordinate changes on a vanishing minor.

    Returns (value, changes_used).  A zero linear form makes the resultant 0.
    """
    if not forms[0]:
        return F.zero, 0
    val = macaulay_resultant(forms, F)
    if val is not None:
        return val, 0
    for k in range(1, attempts + 1):
        g = [[F.random(rng) for _ in range(3)] for _ in range(3)]
        dg = det(g, F)
        if F.is_zero(dg):
            continue
        val = macaulay_resultant([_compose_form(f, g, F) for f in forms], F)
        if val is not None:
            # Res(f o g) = det(g)^(d1 d2 d3) Res(f)
            return F.div(val, F.pow(dg, 6)), k
    raise WorkLimitExceeded("Macaulay minor vanished under every tried coordinate change")


# -- symbolic forms and the flecnode polynomial -------------------------------

def _multinomial(e: tuple) -> int:
    out = factorial(sum(e))
    for k in e:
        out //= factorial(k)
    return out


def symbolic_forms(T: MPoly, r: int = 3) -> list[dict]:
    """c_j as dicts v-exponent -> polynomial in x (coefficient (j!/I!) d^I T)."""
    F = T.field
    out = []
    for j in range(1, r + 1):
        form = {}
        for I in monomials_of_degree(3, j):
            g = T
            for i, k in enumerate(I):
                for _ in range(k):
                    g = g.partial(i)
            if not g.is_zero():
                form[I] = g.scale(F(_multinomial(I)))
        out.append(form)
    return out


def _node_forms(sym: Sequence[dict], x: Sequence, F: Field) -> list[dict]:
    out = []
    for form in sym:
        d = {}
        for I, poly in form.items():
            c = poly.eval(x)
            if not F.is_zero(c):
                d[I] = c
        out.append(d)
    return out


def _tensor_interpolate(nodes: Sequence[Sequence], values: dict, F: Field) -> MPoly:
    """Polynomial in 3 variables through values on nodes[0] x nodes[1] x nodes[2]."""
    n0, n1, n2 = (len(a) for a in nodes)
    # interpolate along x3, then x2, then x1; coefficients become the data
    stage1 = {}
    for i in range(n0):
        for j in range(n1):
            ys = [values[(i, j, k)] for k in range(n2)]
            stage1[(i, j)] = _pad(interpolate_points(nodes[2], ys, F).coeffs, n2, F)
    stage2 = {}
    for i in range(n0):
        for c in range(n2):
            ys = [stage1[(i, j)][c] for j in range(n1)]
            stage2[(i, c)] = _pad(interpolate_points(nodes[1], ys, F).coeffs, n1, F)
    terms = {}
    for b in range(n1):
        for c in range(n2):
            ys = [stage2[(i, c)][b] for i in range(n0)]
            co = _pad(interpolate_points(nodes[0], ys, F).coeffs, n0, F)
            for a, v in enumerate(co):
                if not F.is_zero(v):
                    terms[(a, b, c)] = v
    return MPoly._raw(terms, 3, F)


def _pad(cs: Sequence, n: int, F: Field) -> list:
    cs = list(cs)
    return cs + [F.zero] * (n - len(cs))


@dataclass
class SalmonResult:
    poly: MPoly
    degenerate: bool
    raw_degree: int
    degree: int
    bound: int
    nodes: int = 0
    retried_nodes: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        from .mpoly import format_poly
        return {"poly": format_poly(self.poly), "degenerate": self.degenerate,
                "raw_degree": self.raw_degree, "degree": self.degree,
                "bound": self.bound, "nodes": self.nodes,
                "retried_nodes": [list(x) for x in self.retried_nodes]}


def salmon_flecnode(T: MPoly, seed: int = 0) -> SalmonResult:
    """Resultant of (c_1, c_2, c_3) in v, reduced modulo T.

    The raw resultant has x-degree at most 6(n-1) + 3(n-2) + 2(n-3);
    reducing it modulo T (graded normal form) leaves the values on Z(T)
    unchanged and brings the degree down to the flecnode bound.
    """
    F = T.field
    n = T.degree
    bound = 11 * n - 24
    if T.arity != 3:
        raise InvalidArgument("flecnode polynomial needs a surface in 3-space")
    if n < 3:
        return SalmonResult(MPoly.zero(3, F), True, -1, -1, bound)
    check_order(3, F)
    sym = symbolic_forms(T, 3)
    B = 6 * (n - 1) + 3 * (n - 2) + 2 * (n - 3)
    rng = random.Random(seed)
    nodes = _grid_nodes(B + 1, F, rng)
    values = {}
    retried = []
    for idx in product(range(B + 1), repeat=3):
        x = tuple(nodes[a][i] for a, i in enumerate(idx))
        val, used = resultant_with_retry(_node_forms(sym, x, F), F, rng)
        if used:
            retried.append(x)
        values[idx] = val
    raw = _tensor_interpolate(nodes, values, F)
    reduced = normal_form(raw, [T])
    return SalmonResult(reduced, False, raw.degree, reduced.degree, bound,
                        (B + 1) ** 3, retried)


def _grid_nodes(count: int, F: Field, rng: random.Random) -> list[list]:
    out = []
    for _ in range(3):
        if isinstance(F, PrimeField):
            if F.p < count:
                raise InvalidArgument("field too small for the interpolation grid")
            vals = rng.sample(range(F.p), count) if F.p < 10**7 else \
                list(dict.fromkeys(F.random(rng) for _ in range(2 * count)))[:count]
        else:
            vals = [F(v) for v in rng.sample(range(-4 * count, 4 * count), count)]
        out.append(sorted(vals))
    return out
