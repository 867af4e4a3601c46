"""Exact scalar fields: prime fields F_p and the rationals.

Elements are plain Python values -- ``int`` residues in ``[0, p)`` for a
prime field and ``fractions.Fraction`` for the rationals -- and the field
object carries the arithmetic.  Keeping elements unboxed makes the hot
loops (polynomial multiplication, elimination) cheap.
"""

from __future__ import annotations

import random
from fractions import Fraction
from numbers import Rational

from .errors import CharacteristicError, InvalidArgument

# two-tier prime policy: small primes for exhaustive scans, a ~2^61 prime for
# generic-position arithmetic where accidental coincidences must be rare
SEARCH_PRIME = 65537
ALGEBRA_PRIME = 2**61 - 1
SEARCH_PRIME_RANGE = (101, 65537)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field F_p for a prime p."""

    __slots__ = ("p",)

    zero = 0
    one = 1

    def __init__(self, p: int):
        if not is_prime(p):
            raise InvalidArgument(f"modulus {p} is not prime")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __call__(self, x) -> int:
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Rational):
            return x.numerator * self.inv(x.denominator % self.p) % self.p
        raise InvalidArgument(f"cannot convert {x!r} into F_{self.p}")

    def reduce(self, x: int) -> int:
        return x % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e: int):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def random_nonzero(self, rng: random.Random) -> int:
        return rng.randrange(1, self.p)

    def balanced(self, a: int) -> int:
        """Representative in (-p/2, p/2], used for printing."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a

    def to_json(self, a):
        return self.balanced(a)


class RationalField:
    """The rationals, with elements stored as reduced ``Fraction`` values."""

    __slots__ = ()

    zero = Fraction(0)
    one = Fraction(1)
    characteristic = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __call__(self, x) -> Fraction:
        if isinstance(x, (int, Rational)):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise InvalidArgument(f"cannot convert {x!r} into QQ")

    @staticmethod
    def reduce(x):
        return x

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) * self.inv(b)

    def pow(self, a, e: int):
        return Fraction(a) ** e

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    def random(self, rng: random.Random, bound: int = 9) -> Fraction:
        return Fraction(rng.randint(-bound, bound))

    def random_nonzero(self, rng: random.Random, bound: int = 9) -> Fraction:
        while True:
            a = rng.randint(-bound, bound)
            if a:
                return Fraction(a)

    @staticmethod
    def balanced(a):
        return a

    @staticmethod
    def to_json(a):
        return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


QQ = RationalField()

Field = PrimeField | RationalField


def field_inv(a, field: Field):
    """Multiplicative inverse of ``a``; raises ZeroDivisionError on zero."""
    return field.inv(a)


def make_field(p: int | None) -> Field:
    """``None`` or 0 selects the rationals, anything else F_p."""
    return QQ if not p else PrimeField(p)


def factorial_mod(n: int, field: Field):
    out = field.one
    for k in range(2, n + 1):
        out = field.mul(out, field(k))
    return out


def check_order(r: int, field: Field) -> None:
    """Guard for constructions that divide by r! (Taylor jets, D^r)."""
    p = field.characteristic
    if p and r >= p:
        raise CharacteristicError(f"order {r} requires r < char = {p}")
