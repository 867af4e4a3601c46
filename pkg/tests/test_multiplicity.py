import random

import pytest

from curvelab.curves import line
from curvelab.errors import InvalidArgument, NotIsolated
from curvelab.fields import PrimeField
from curvelab.multiplicity import bezout_sum_audit, local_mult, truncated_quotient_dim
from curvelab.mpoly import MPoly
from curvelab.tangency import order_via_D

P = PrimeField(65537)


def polys(*texts):
    return [MPoly.parse(t, 3, P) for t in texts]


def test_examples():
    assert local_mult(*polys("x1", "x2", "x3"), (0, 0, 0)).value == 1
    for k in range(1, 9):
        assert local_mult(*polys("x1", "x2", f"x3^{k}"), (0, 0, 0)).value == k
    assert local_mult(*polys("x1", "x2", "x3"), (1, 0, 0)).value == 0


def test_dims_monotone_and_flat():
    res = local_mult(*polys("x1 - x2^2", "x2*x3", "x3^3 + x2^3"), (0, 0, 0), extra_levels=3)
    assert list(res.dims) == sorted(res.dims)
    assert len(set(res.dims[res.truncation_level - 1:])) == 1


def test_monomial_quotient_oracle():
    # for monomial ideals the quotient is spanned by standard monomials
    f = polys("x1^2", "x2^3", "x3^2")
    assert local_mult(*f, (0, 0, 0)).value == 12
    f = polys("x1^2", "x1*x2 + x3^3", "x2^2")
    # transverse computation by hand is awkward; compare against a large truncation
    v = local_mult(*f, (0, 0, 0)).value
    assert v == truncated_quotient_dim(f, 14)


def test_not_isolated():
    with pytest.raises(NotIsolated):
        local_mult(*polys("x1", "x2", "x1 + x2"), (0, 0, 0), N_max=6)


def test_bezout_grid():
    for d in (1, 2, 3):
        fs = []
        for i in range(3):
            f = MPoly.const(1, 3, P)
            for a in range(d):
                f = f * (MPoly.var(i, 3, P) - a)
            fs.append(f)
        pts = [(a, b, c) for a in range(d) for b in range(d) for c in range(d)]
        audit = bezout_sum_audit(*fs, pts)
        assert audit.total == d ** 3 and audit.equality
    audit = bezout_sum_audit(*polys("x1", "x2", "x3^2"), [(0, 0, 0)])
    assert audit.total == 2 and audit.equality
    with pytest.raises(InvalidArgument):
        bezout_sum_audit(*polys("x1", "x2", "x3"), [(1, 1, 1)])


def test_transverse_is_one():
    rng = random.Random(4)
    for _ in range(10):
        z = tuple(P.random(rng) for _ in range(3))
        fs = []
        for _ in range(3):
            a = [P.random(rng) for _ in range(3)]
            f = MPoly({(1, 0, 0): a[0], (0, 1, 0): a[1], (0, 0, 1): a[2], (2, 0, 0): 1}, 3, P)
            fs.append(f - f.eval(z))
        assert local_mult(*fs, z).value == 1


def test_tangency_bounds_multiplicity():
    g = line((0, 0, 0), (1, 0, 0), P)
    for k in range(1, 6):
        T = MPoly.parse(f"x3 - x1^{k}", 3, P)
        r = order_via_D(T, g.ci, (0, 0, 0), 8)
        assert local_mult(g.ci.P, g.ci.Q, T, (0, 0, 0)).value >= r + 1
