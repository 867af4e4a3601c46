"""Affine Hilbert functions, Hilbert polynomials and chain stabilization.

H_I(t) = dim K[x]_{<=t} / I_{<=t}.  Under a degree-compatible order this
is the number of monomials of degree <= t outside the leading-term ideal,
so one Groebner basis serves every t.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import WorkLimitExceeded
from .groebner import GroebnerBasis, IdealBasis, groebner, ideal_member
from .mpoly import monomials_of_degree


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _standard_counts(lms: Sequence[tuple], arity: int, t: int) -> list[int]:
    """Number of standard monomials in each degree 0..t."""
    out = []
    for d in range(t + 1):
        out.append(sum(1 for m in monomials_of_degree(arity, d)
                       if not any(_divides(g, m) for g in lms)))
    return out


def _basis(I: IdealBasis | GroebnerBasis) -> GroebnerBasis:
    return I if isinstance(I, GroebnerBasis) else groebner(I)


def _leading_monomials(G: GroebnerBasis) -> list[tuple]:
    # the zero ideal has an empty basis (groebner drops zero generators)
    return list(G.leading_monomials)


def hilbert_function(I: IdealBasis | GroebnerBasis, t: int) -> int:
    G = _basis(I)
    return sum(_standard_counts(_leading_monomials(G), G.arity, t))


def hilbert_values(I: IdealBasis | GroebnerBasis, t_max: int) -> list[int]:
    G = _basis(I)
    counts = _standard_counts(_leading_monomials(G), G.arity, t_max)
    out, acc = [], 0
    for c in counts:
        acc += c
        out.append(acc)
    return out


def _fit(ts: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Monomial coefficients of the interpolating polynomial (Newton form)."""
    n = len(ts)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (ts[i] - ts[i - j])
    poly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        # poly * (t - ts[i]) + coef[i]
        nxt = [Fraction(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] += c
            nxt[k] -= c * ts[i]
        nxt[0] += coef[i]
        poly = nxt
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def _peval(coeffs: Sequence[Fraction], t: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


@dataclass(frozen=True)
class HilbertData:
    values: tuple  # H_I(0..t_max)
    hp_coeffs: tuple  # ascending powers of t, length arity + 1
    ell: tuple
    stable_from: int

    def hp(self, t: int) -> Fraction:
        return _peval(self.hp_coeffs, t)


def hilbert_poly(I: IdealBasis | GroebnerBasis, t_limit: int = 200) -> HilbertData:
    """Fit the eventual Hilbert polynomial and its scaled-coefficient tuple."""
    G = _basis(I)
    N = G.arity
    lms = _leading_monomials(G)
    # beyond the sum of per-variable maximal exponents of the staircase
    # the function is polynomial; start the fit there
    t0 = sum(max((m[i] for m in lms), default=0) for i in range(N))
    while True:
        top = t0 + 2 * N + 1
        if top > t_limit:
            raise WorkLimitExceeded(f"Hilbert polynomial did not stabilize below t={t_limit}")
        vals = hilbert_values(G, top)
        ts = list(range(t0, t0 + N + 1))
        coeffs = _fit(ts, [vals[t] for t in ts])
        if all(_peval(coeffs, t) == vals[t] for t in range(t0 + N + 1, top + 1)):
            break
        t0 += 1
    coeffs = list(coeffs) + [Fraction(0)] * (N + 1 - len(coeffs))
    ell = tuple(factorial(j) * coeffs[j] for j in range(N + 1))
    return HilbertData(tuple(vals), tuple(coeffs), ell, t0)


def ell_tuple(I) -> tuple:
    return hilbert_poly(I).ell


def prec(a: Sequence, b: Sequence) -> bool:
    """a ≺ b: compare from the highest index down."""
    if len(a) != len(b):
        raise ValueError("tuples of different length")
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return x < y
    return False


def preceq(a: Sequence, b: Sequence) -> bool:
    return tuple(a) == tuple(b) or prec(a, b)


@dataclass(frozen=True)
class ACCResult:
    r0: int | None
    ell_tuples: tuple  # ℓ of the partial sums I_1 + ... + I_j, j = 1..len
    decreasing: bool

    def to_json(self) -> dict:
        def q(x: Fraction):
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return {"r0": self.r0 if self.r0 is not None else "none in range",
                "ell_tuples": [[q(x) for x in t] for t in self.ell_tuples],
                "weakly_decreasing": self.decreasing}


def acc_explore(ideals: Sequence[IdealBasis]) -> ACCResult:
    """First r0 >= 2 with I_{r0} contained in I_1 + ... + I_{r0-1}."""
    if not ideals:
        return ACCResult(None, (), True)
    partial = ideals[0]
    bases = [groebner(partial)]
    r0 = None
    for r in range(2, len(ideals) + 1):
        I_r = ideals[r - 1]
        if r0 is None and all(ideal_member(g, bases[-1]) for g in I_r.generators):
            r0 = r
        partial = partial + I_r
        bases.append(groebner(partial))
    ells = tuple(hilbert_poly(G).ell for G in bases)
    dec = all(preceq(ells[j + 1], ells[j]) for j in range(len(ells) - 1))
    return ACCResult(r0, ells, dec)
