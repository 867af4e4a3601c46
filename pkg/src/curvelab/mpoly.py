"""Sparse multivariate polynomials over an exact field.

A polynomial is a dict mapping exponent tuples to nonzero coefficients.
Terms are ordered graded-lexicographically (total degree first, then
lexicographic on the exponent tuple); that order is used for printing and
by the Groebner engine.

Text format: terms ``c*x1^a*x2^b`` joined by ``+``; a negative
coefficient carries its own sign (``x1^2 + -3*x2``).  The parser also
accepts ``-`` as a separator, ``**`` for powers, implicit unit
coefficients, rational coefficients such as ``3/2`` and the aliases
``x, y, z, w`` for ``x1..x4``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Mapping, Sequence

from .errors import CurvelabError, FieldMismatch, InvalidArgument
from .fields import Field, check_order
from .unipoly import UniPoly

MAX_EXPONENT = 2**16 - 1
MAX_ARITY = 4


class ExponentOverflow(CurvelabError, OverflowError):
    pass


def grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


def monomials_of_degree(n: int, d: int) -> list[tuple]:
    """Exponent tuples of total degree exactly d, in increasing grlex order."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort()
    return out


def monomials_upto(n: int, d: int) -> list[tuple]:
    """All exponent tuples of total degree <= d, ascending grlex."""
    out = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(n, k))
    return out


def count_monomials(n: int, d: int) -> int:
    return comb(d + n, n)


class MPoly:
    """Immutable sparse polynomial in ``arity`` variables."""

    __slots__ = ("terms", "arity", "field", "_hash")

    def __init__(self, terms: Mapping[tuple, object], arity: int, field: Field):
        clean = {}
        for e, c in terms.items():
            e = tuple(int(k) for k in e)
            if len(e) != arity:
                raise InvalidArgument(f"exponent {e} does not match arity {arity}")
            if any(k < 0 for k in e):
                raise InvalidArgument("negative exponent")
            if any(k > MAX_EXPONENT for k in e):
                raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT}")
            c = field(c)
            if not field.is_zero(c):
                clean[e] = field.add(clean[e], c) if e in clean else c
        self.terms = {e: c for e, c in clean.items() if not field.is_zero(c)}
        self.arity = arity
        self.field = field
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, arity: int, field: Field) -> MPoly:
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.arity = arity
        obj.field = field
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, arity: int, field: Field) -> MPoly:
        return cls._raw({}, arity, field)

    @classmethod
    def const(cls, c, arity: int, field: Field) -> MPoly:
        return cls({(0,) * arity: c}, arity, field)

    @classmethod
    def var(cls, i: int, arity: int, field: Field) -> MPoly:
        """The coordinate x_{i+1} (0-based index)."""
        e = [0] * arity
        e[i] = 1
        return cls._raw({tuple(e): field.one}, arity, field)

    @classmethod
    def gens(cls, arity: int, field: Field) -> tuple[MPoly, ...]:
        return tuple(cls.var(i, arity, field) for i in range(arity))

    @classmethod
    def from_vector(cls, vec: Sequence, monomials: Sequence[tuple], arity: int, field: Field) -> MPoly:
        return cls({m: c for m, c in zip(monomials, vec)}, arity, field)

    @classmethod
    def parse(cls, text: str, arity: int = 3, field: Field | None = None) -> MPoly:
        if field is None:
            from .fields import QQ

            field = QQ
        return parse_poly(text, arity, field)

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def coeff(self, e: tuple):
        return self.terms.get(tuple(e), self.field.zero)

    def sorted_terms(self, descending: bool = True) -> list[tuple[tuple, object]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=descending)

    def leading_term(self) -> tuple[tuple, object]:
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def __repr__(self):
        return f"MPoly({format_poly(self)!r}, arity={self.arity}, {self.field!r})"

    def __str__(self):
        return format_poly(self)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return (self.arity == other.arity and self.field == other.field
                    and self.terms == other.terms)
        if not self.terms:
            return other == 0
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.terms.items()), self.arity, self.field))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- ring operations --------------------------------------------------

    def _check(self, other: MPoly):
        if other.arity != self.arity:
            raise FieldMismatch(f"arity mismatch: {self.arity} vs {other.arity}")
        if other.field != self.field:
            raise FieldMismatch(f"field mismatch: {self.field!r} vs {other.field!r}")

    def _coerce(self, other) -> MPoly:
        if isinstance(other, MPoly):
            self._check(other)
            return other
        return MPoly.const(other, self.arity, self.field)

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = F.add(out[e], c)
                if F.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return MPoly._raw(out, self.arity, F)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return MPoly._raw({e: F.neg(c) for e, c in self.terms.items()}, self.arity, F)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        self._check(other)
        F = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        res = {}
        for e, c in out.items():
            c = F.reduce(c)
            if not F.is_zero(c):
                res[e] = c
        if res and max(max(e) for e in res) > MAX_EXPONENT:
            raise ExponentOverflow("exponent overflow in multiplication")
        return MPoly._raw(res, self.arity, F)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> MPoly:
        F = self.field
        c = F(c)
        if F.is_zero(c):
            return MPoly.zero(self.arity, F)
        return MPoly._raw({e: F.mul(c, v) for e, v in self.terms.items()}, self.arity, F)

    def __pow__(self, k: int):
        if k < 0:
            raise InvalidArgument("negative power")
        out = MPoly.const(1, self.arity, self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_monomial(self, m: tuple, c=1) -> MPoly:
        F = self.field
        c = F(c)
        return MPoly._raw({tuple(a + b for a, b in zip(e, m)): F.mul(c, v)
                           for e, v in self.terms.items()}, self.arity, F)

    # -- calculus ---------------------------------------------------------

    def partial(self, i: int) -> MPoly:
        F = self.field
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            v = F.mul(F(k), c)
            if F.is_zero(v):
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = v
        return MPoly._raw(out, self.arity, F)

    def gradient(self) -> tuple[MPoly, ...]:
        return tuple(self.partial(i) for i in range(self.arity))

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = point[0]
        return self.eval(point)

    def eval(self, point: Sequence):
        if len(point) != self.arity:
            raise InvalidArgument(f"point of length {len(point)} for arity {self.arity}")
        F = self.field
        z = [F(x) for x in point]
        powers: list[dict] = [{} for _ in z]
        acc = F.zero
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    pw = powers[i].get(k)
                    if pw is None:
                        pw = F.pow(z[i], k)
                        powers[i][k] = pw
                    t = t * pw
            acc = acc + t
        return F.reduce(acc)

    def homogeneous_part(self, d: int) -> MPoly:
        return MPoly._raw({e: c for e, c in self.terms.items() if sum(e) == d},
                          self.arity, self.field)

    def truncate(self, r: int) -> MPoly:
        """Drop every term of total degree > r."""
        return MPoly._raw({e: c for e, c in self.terms.items() if sum(e) <= r},
                          self.arity, self.field)

    def shift(self, z: Sequence) -> MPoly:
        """The polynomial y -> f(z + y)."""
        F = self.field
        z = [F(x) for x in z]
        n = self.arity
        if len(z) != n:
            raise InvalidArgument("shift point has wrong length")
        # binomial rows (z_i + y_i)^k as {j: coeff of y_i^j}
        cache: list[dict] = [{} for _ in range(n)]

        def expand(i, k):
            row = cache[i].get(k)
            if row is None:
                zi = z[i]
                row = [F(comb(k, j)) * F.pow(zi, k - j) for j in range(k + 1)]
                row = [F.reduce(x) for x in row]
                cache[i][k] = row
            return row

        out: dict = {}
        for e, c in self.terms.items():
            partial_terms = {(): c}
            for i, k in enumerate(e):
                row = expand(i, k)
                nxt = {}
                for pe, pc in partial_terms.items():
                    for j, bc in enumerate(row):
                        if F.is_zero(bc):
                            continue
                        nxt[pe + (j,)] = pc * bc
                partial_terms = nxt
            for pe, pc in partial_terms.items():
                out[pe] = out.get(pe, 0) + pc
        res = {}
        for e, c in out.items():
            c = F.reduce(c)
            if not F.is_zero(c):
                res[e] = c
        return MPoly._raw(res, n, F)

    def compose(self, subs: Sequence[MPoly]) -> MPoly:
        """Substitute x_i <- subs[i] (all of a common arity)."""
        if len(subs) != self.arity:
            raise InvalidArgument("need one substitution per variable")
        target = subs[0]
        F = self.field
        out = MPoly.zero(target.arity, F)
        cache: list[dict] = [{0: MPoly.const(1, target.arity, F)} for _ in subs]

        def power(i, k):
            if k not in cache[i]:
                cache[i][k] = power(i, k - 1) * subs[i]
            return cache[i][k]

        for e, c in self.terms.items():
            t = MPoly.const(c, target.arity, F)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out

    def to_vector(self, monomials: Sequence[tuple]) -> list:
        F = self.field
        return [self.terms.get(m, F.zero) for m in monomials]

    def jet(self, z: Sequence, r: int) -> Jet:
        return jet(self, z, r)


def cross(u: Sequence[MPoly], v: Sequence[MPoly]) -> tuple[MPoly, MPoly, MPoly]:
    """Formal cross product of two triples of polynomials."""
    if len(u) != 3 or len(v) != 3:
        raise InvalidArgument("cross product needs triples")
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def dot(u: Sequence[MPoly], v: Sequence[MPoly]) -> MPoly:
    out = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        out = out + a * b
    return out


def compose_param(f: MPoly, phi: Sequence[UniPoly], den: UniPoly | None = None) -> UniPoly:
    """Restrict f to a parametrized curve.

    With ``den`` given, the curve is s -> phi(s)/den(s) and the result is
    the cleared restriction den^deg(f) * f(phi/den).
    """
    if len(phi) != f.arity:
        raise InvalidArgument("parametrization length must match arity")
    F = f.field
    d = f.degree
    zero = UniPoly([], F)
    if d < 0:
        return zero
    one = UniPoly([1], F)
    pcache: list[dict] = [{0: one} for _ in phi]
    dcache: dict = {0: one}

    def power(cache, base, k):
        if k not in cache:
            cache[k] = power(cache, base, k - 1) * base
        return cache[k]

    out = zero
    for e, c in f.terms.items():
        t = UniPoly([c], F)
        for i, k in enumerate(e):
            if k:
                t = t * power(pcache[i], phi[i], k)
        if den is not None:
            t = t * power(dcache, den, d - sum(e))
        out = out + t
    return out


@dataclass(frozen=True)
class Jet:
    """The r-jet of a polynomial at a base point z."""

    z: tuple
    order: int
    poly: MPoly


def jet(T: MPoly, z: Sequence, r: int) -> Jet:
    """Taylor truncation of T at z to degree r, by shift-and-truncate."""
    F = T.field
    check_order(r, F)
    z = tuple(F(x) for x in z)
    local = T.shift(z).truncate(r)
    back = local.shift(tuple(F.neg(x) for x in z))
    return Jet(z, r, back)


def vanishes_to_order(f: MPoly, z: Sequence, r: int) -> bool:
    """True iff every monomial of f(z+y) has degree >= r."""
    return all(sum(e) >= r for e in f.shift(z).terms)


# -- text format ------------------------------------------------------------

_ALIASES = {"x": 1, "y": 2, "z": 3, "w": 4}
_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(x\d+|[xyzw])(?:(?:\^|\*\*)(\d+))?|([+\-*]))")


def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


def format_poly(f: MPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    F = f.field
    for e, c in f.sorted_terms():
        c = F.balanced(c)
        factors = []
        for i, k in enumerate(e):
            if k == 1:
                factors.append(f"x{i + 1}")
            elif k > 1:
                factors.append(f"x{i + 1}^{k}")
        mono = "*".join(factors)
        if not mono:
            parts.append(_fmt_coeff(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{_fmt_coeff(c)}*{mono}")
    return " + ".join(parts)


def parse_poly(text: str, arity: int, field: Field) -> MPoly:
    pos = 0
    text = text.strip()
    if not text:
        raise InvalidArgument("empty polynomial string")
    terms: dict = {}
    sign = 1
    coeff = Fraction(1)
    expo = [0] * arity
    have_factor = False
    expect_factor = True

    def flush():
        nonlocal sign, coeff, expo, have_factor
        if not have_factor:
            raise InvalidArgument(f"dangling operator in {text!r}")
        key = tuple(expo)
        terms[key] = terms.get(key, 0) + sign * coeff
        sign, coeff, expo, have_factor = 1, Fraction(1), [0] * arity, False

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise InvalidArgument(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        num, var, power, op = m.groups()
        if num is not None or var is not None:
            if not expect_factor:
                raise InvalidArgument(f"missing operator in {text!r}")
            if num is not None:
                coeff *= Fraction(num)
            else:
                idx = _ALIASES[var] if var in _ALIASES else int(var[1:])
                if not 1 <= idx <= arity:
                    raise InvalidArgument(f"variable {var} outside arity {arity}")
                expo[idx - 1] += int(power) if power else 1
            have_factor = True
            expect_factor = False
        elif op == "*":
            if expect_factor:
                raise InvalidArgument(f"misplaced '*' in {text!r}")
            expect_factor = True
        else:
            if have_factor:
                flush()
            elif op == "+" and not expect_factor:
                raise InvalidArgument(f"misplaced '+' in {text!r}")
            if op == "-":
                sign = -sign
            expect_factor = True
    flush()
    return MPoly({e: field(c) for e, c in terms.items()}, arity, field)
