"""Local intersection multiplicity of three surfaces at a point.

For an isolated common zero z, dim O_z/(f1, f2, f3)_z equals
dim K[y]/(I + m^N) for all large N, where y = x - z and m = (y1, y2, y3).
The truncated quotient is finite linear algebra: polynomials of degree
< N modulo the span of the truncations of y^b * f_i.  Its dimension d_N
is nondecreasing, and once d_N = d_{N+1} Nakayama's lemma pins the value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidArgument, NotIsolated
from .linalg import rank
from .mpoly import MPoly, count_monomials, monomials_upto

DEFAULT_N_MAX = 24


@dataclass(frozen=True)
class MultResult:
    value: int
    truncation_level: int
    dims: tuple = ()


def truncated_quotient_dim(shifted: Sequence[MPoly], N: int) -> int:
    """dim K[y]_{<N} / span{ trunc_{N-1}(y^b f) } for the shifted generators."""
    if N <= 0:
        return 0
    F = shifted[0].field
    cols = monomials_upto(3, N - 1)
    index = {m: i for i, m in enumerate(cols)}
    rows = []
    for f in shifted:
        if f.is_zero():
            continue
        low = min(sum(e) for e in f.terms)
        for m in monomials_upto(3, N - 1 - low):
            g = f.mul_monomial(m).truncate(N - 1)
            row = [F.zero] * len(cols)
            for e, c in g.terms.items():
                row[index[e]] = c
            rows.append(row)
    r = rank(rows, F, len(cols)) if rows else 0
    return count_monomials(3, N - 1) - r


def local_mult(f1: MPoly, f2: MPoly, f3: MPoly, z, N_max: int = DEFAULT_N_MAX,
               extra_levels: int = 0) -> MultResult:
    """mult_z(f1, f2, f3) as the stabilized truncated quotient dimension.

    ``extra_levels`` re-checks that many further truncation levels after
    stabilization (a consistency audit; the stabilized value cannot move).
    """
    F = f1.field
    z = tuple(F(x) for x in z)
    if len(z) != 3:
        raise InvalidArgument("multiplicity needs a point of K^3")
    shifted = [f.shift(z) for f in (f1, f2, f3)]
    if any(not F.is_zero(f.coeff((0, 0, 0))) for f in shifted):
        return MultResult(0, 1, (0,))
    dims = [truncated_quotient_dim(shifted, 1)]
    for N in range(2, N_max + 1):
        dims.append(truncated_quotient_dim(shifted, N))
        if dims[-1] == dims[-2]:
            for k in range(1, extra_levels + 1):
                dims.append(truncated_quotient_dim(shifted, N + k))
            if any(d != dims[N - 1] for d in dims[N - 1:]):
                raise AssertionError(f"truncated dimensions moved after stabilizing: {dims}")
            return MultResult(dims[N - 1], N - 1, tuple(dims))
    raise NotIsolated(f"no stabilization up to N={N_max}; point may not be isolated")


@dataclass(frozen=True)
class BezoutAudit:
    multiplicities: tuple
    total: int
    bound: int
    equality: bool


def bezout_sum_audit(f1: MPoly, f2: MPoly, f3: MPoly, points, N_max: int = DEFAULT_N_MAX) -> BezoutAudit:
    F = f1.field
    mults = []
    for z in points:
        z = tuple(F(x) for x in z)
        if any(not F.is_zero(f.eval(z)) for f in (f1, f2, f3)):
            raise InvalidArgument(f"{z} is not a common zero")
        mults.append(local_mult(f1, f2, f3, z, N_max).value)
    bound = f1.degree * f2.degree * f3.degree
    total = sum(mults)
    if total > bound:
        raise AssertionError(f"multiplicity sum {total} exceeds the Bezout bound {bound}")
    return BezoutAudit(tuple(mults), total, bound, total == bound)
