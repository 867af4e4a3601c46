"""Dense univariate polynomials and root finding.

Roots over F_p use the classical route: ``gcd(f, x^p - x)`` isolates the
product of the linear factors, then equal-degree splitting with random
shifts ``gcd(g, (x+a)^((p-1)/2) - 1)`` separates them.  Rational roots are
found with the rational-root theorem on the square-free part.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as igcd, isqrt, lcm
from typing import Iterable, Sequence

from .errors import InvalidArgument
from .fields import Field, PrimeField


class UniPoly:
    """Polynomial in one variable, coefficients ascending, no trailing zeros."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable, field: Field):
        cs = [field(c) for c in coeffs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.field = field

    @classmethod
    def _raw(cls, cs: list, field: Field) -> UniPoly:
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(cs)
        obj.field = field
        return obj

    @classmethod
    def constant(cls, c, field: Field) -> UniPoly:
        return cls([c], field)

    @classmethod
    def x(cls, field: Field) -> UniPoly:
        return cls([0, 1], field)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)}, {self.field!r})"

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.field))

    def _coerce(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            if other.field != self.field:
                raise InvalidArgument("field mismatch")
            return other
        return UniPoly([other], self.field)

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return UniPoly._raw(out, F)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return UniPoly._raw([F.neg(c) for c in self.coeffs], F)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw([], F)
        out = [F.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if F.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UniPoly._raw([F.reduce(c) for c in out], F)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidArgument("negative power")
        out = UniPoly([1], self.field)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, c) -> UniPoly:
        F = self.field
        c = F(c)
        return UniPoly._raw([F.mul(c, x) for x in self.coeffs], F)

    def __call__(self, s):
        F = self.field
        s = F(s)
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, s), c)
        return acc

    def derivative(self) -> UniPoly:
        F = self.field
        return UniPoly._raw([F.mul(F(i), c) for i, c in enumerate(self.coeffs)][1:], F)

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.coeffs
        dl = len(d) - 1
        inv = F.inv(d[-1])
        if len(r) <= dl:
            return UniPoly._raw([], F), UniPoly._raw(r, F)
        q = [F.zero] * (len(r) - dl)
        for k in range(len(r) - 1, dl - 1, -1):
            c = F.mul(r[k], inv)
            q[k - dl] = c
            if F.is_zero(c):
                continue
            for j in range(dl + 1):
                r[k - dl + j] = F.sub(r[k - dl + j], F.mul(c, d[j]))
        return UniPoly._raw(q, F), UniPoly._raw(r[:dl], F)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self) -> UniPoly:
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lc))

    def shift(self, s0) -> UniPoly:
        """The polynomial s -> f(s + s0)."""
        F = self.field
        out = UniPoly._raw([], F)
        lin = UniPoly([s0, 1], F)
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def order_at(self, s0) -> int | None:
        """Multiplicity of s0 as a root; None for the zero polynomial."""
        if self.is_zero():
            return None
        g = self.shift(s0)
        k = 0
        while self.field.is_zero(g.coeffs[k]):
            k += 1
        return k


def uni_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd (zero only when both inputs are zero)."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def powmod(base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    out = UniPoly([1], base.field) % mod
    b = base % mod
    while e:
        if e & 1:
            out = (out * b) % mod
        b = (b * b) % mod
        e >>= 1
    return out


def roots_scan(f: UniPoly) -> set[int]:
    """Exhaustive root scan over F_p; the oracle for small primes."""
    F = f.field
    if not isinstance(F, PrimeField):
        raise InvalidArgument("scan needs a prime field")
    return {a for a in range(F.p) if F.is_zero(f(a))}


def _split(g: UniPoly, rng: random.Random, out: set):
    F = g.field
    p = F.p
    if g.degree == 0:
        return
    if g.degree == 1:
        out.add(F.neg(F.div(g.coeffs[0], g.coeffs[1])))
        return
    while True:
        a = rng.randrange(p)
        h = powmod(UniPoly([a, 1], F), (p - 1) // 2, g) - 1
        d = uni_gcd(g, h)
        if 0 < d.degree < g.degree:
            _split(d, rng, out)
            _split(g // d, rng, out)
            return


def uni_roots(f: UniPoly, seed: int = 0) -> set:
    """Distinct roots of a nonzero polynomial in its coefficient field."""
    if f.is_zero():
        raise InvalidArgument("roots of the zero polynomial")
    F = f.field
    if not isinstance(F, PrimeField):
        return rational_roots(f)
    if f.degree <= 0:
        return set()
    p = F.p
    if p == 2:
        return roots_scan(f)
    x = UniPoly.x(F)
    fm = f.monic()
    g = uni_gcd(fm, powmod(x, p, fm) - x)
    out: set = set()
    _split(g, random.Random(seed), out)
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    fac: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            fac[d] = fac.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        fac[n] = fac.get(n, 0) + 1
    divs = [1]
    for q, e in fac.items():
        divs = [x * q**k for x in divs for k in range(e + 1)]
    return divs


def rational_roots(f: UniPoly) -> set[Fraction]:
    F = f.field
    if f.degree <= 0:
        return set()
    g = f.monic()
    # square-free part keeps the candidate integers small
    d = uni_gcd(g, g.derivative())
    if d.degree > 0:
        g = g // d
    den = lcm(*(Fraction(c).denominator for c in g.coeffs))
    ints = [int(Fraction(c) * den) for c in g.coeffs]
    k = igcd(*ints)
    ints = [c // k for c in ints]
    out: set[Fraction] = set()
    while ints and ints[0] == 0:
        out.add(F(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return out
    if len(ints) == 2:
        out.add(F(Fraction(-ints[0], ints[1])))
        return out
    if len(ints) == 3:
        c, b, a = ints
        disc = b * b - 4 * a * c
        if disc >= 0 and isqrt(disc) ** 2 == disc:
            s = isqrt(disc)
            out.update({F(Fraction(-b + s, 2 * a)), F(Fraction(-b - s, 2 * a))})
        return out
    for num in _divisors(ints[0]):
        for den_ in _divisors(ints[-1]):
            for cand in (Fraction(num, den_), Fraction(-num, den_)):
                if g(cand) == 0:
                    out.add(F(cand))
    return out


def interpolate_points(xs: Sequence, ys: Sequence, field: Field) -> UniPoly:
    """Newton interpolation through (xs[i], ys[i]) with distinct xs."""
    F = field
    n = len(xs)
    coef = [F(y) for y in ys]
    xs = [F(x) for x in xs]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = F.div(F.sub(coef[i], coef[i - 1]), F.sub(xs[i], xs[i - j]))
    out = UniPoly([coef[-1]], F) if n else UniPoly([], F)
    for i in range(n - 2, -1, -1):
        out = out * UniPoly([F.neg(xs[i]), 1], F) + coef[i]
    return out
