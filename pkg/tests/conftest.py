import random

import pytest

from curvelab.fields import ALGEBRA_PRIME, QQ, SEARCH_PRIME, PrimeField
from curvelab.mpoly import MPoly, monomials_upto


@pytest.fixture
def F7():
    return PrimeField(7)


@pytest.fixture
def FS():
    return PrimeField(SEARCH_PRIME)


@pytest.fixture
def FA():
    return PrimeField(ALGEBRA_PRIME)


@pytest.fixture
def Q():
    return QQ


def rand_poly(rng, F, deg, arity=3, density=0.6):
    terms = {m: F.random(rng) for m in monomials_upto(arity, deg) if rng.random() < density}
    return MPoly(terms, arity, F)


def rand_point(rng, F, n=3):
    return tuple(F.random(rng) for _ in range(n))


@pytest.fixture
def rng():
    return random.Random(12345)
