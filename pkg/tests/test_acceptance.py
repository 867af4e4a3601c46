"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import random
import time
from fractions import Fraction
from math import comb, factorial

import pytest

from curvelab.curves import CIPair, conic_from, curve_in_surface, line
from curvelab.fields import ALGEBRA_PRIME, QQ, SEARCH_PRIME, PrimeField
from curvelab.flecnode import flecnodal_directions, is_flecnodal, jet_determines, salmon_flecnode
from curvelab.groebner import IdealBasis
from curvelab.hilbert import acc_explore, hilbert_function, hilbert_poly
from curvelab.incidence import (census, coplanar_lines, dichotomy_demo, doubly_ruled_audit,
                                regulus_rulings, sample_surface_points, two_plane_lines)
from curvelab.interpolate import ReductionConfig, degree_reduce
from curvelab.mpoly import MPoly, monomials_upto
from curvelab.multiplicity import bezout_sum_audit, local_mult
from curvelab.tangency import (d_alpha, order_via_D, order_via_ideal, order_via_restriction,
                               trapped_test)

P = PrimeField(SEARCH_PRIME)
PA = PrimeField(ALGEBRA_PRIME)


@pytest.fixture
def report(capsys):
    def emit(n, name, ok, detail=""):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip())
        assert ok, f"criterion {n} failed: {detail}"
    return emit


def rpoly(rng, F, deg, density=0.7):
    return MPoly({m: F.random(rng) for m in monomials_upto(3, deg) if rng.random() < density}, 3, F)


def rand_line(rng, F):
    d = [F.random(rng) for _ in range(3)]
    if all(x == 0 for x in d):
        d[0] = 1
    return line([F.random(rng) for _ in range(3)], d, F)


def rand_conic(rng, F):
    while True:
        z = tuple(F.random(rng) for _ in range(3))
        X = MPoly.gens(3, F)
        plane = X[2] - z[2] + (X[0] - z[0]).scale(F.random(rng)) + (X[1] - z[1]).scale(F.random(rng))
        q = rpoly(rng, F, 2, density=1.0)
        try:
            return conic_from(plane, q - q.eval(z), z)
        except ValueError:
            continue


def tangent_to_order(rng, gamma, z, k, deg_budget):
    """A polynomial in (P, Q) + sigma^k U, so its order at z is usually k - 1."""
    F = gamma.field
    a, b = gamma.ci.P, gamma.ci.Q
    T = rpoly(rng, F, deg_budget - a.degree) * a + rpoly(rng, F, max(deg_budget - b.degree, 0)) * b
    if k is None:
        return T
    X = MPoly.gens(3, F)
    sigma = (X[0] - z[0]).scale(F.random(rng)) + (X[1] - z[1]).scale(F.random(rng)) + \
        (X[2] - z[2]).scale(F.random(rng))
    U = rpoly(rng, F, max(deg_budget - k, 0), density=1.0)
    return T + sigma ** k * U


# -- 1 ------------------------------------------------------------------------

def test_criterion_1_tangency_equivalence(report):
    rng = random.Random(101)
    t0 = time.time()
    bad = 0
    orders = []
    for trial in range(250):
        conic = trial >= 200
        gamma = rand_conic(rng, P) if conic else rand_line(rng, P)
        z = gamma.point_at(rng.randrange(1, 1000))
        k = rng.choice([None, 0, 1, 2, 3, 4])
        T = tangent_to_order(rng, gamma, z, k, 4)
        if T.is_zero():
            T = gamma.ci.P
        if not P.is_zero(T.eval(z)) and k != 0:
            T = T - T.eval(z)
        a = order_via_D(T, gamma.ci, z, 8)
        b = order_via_ideal(T, gamma, z, 8)
        c = order_via_restriction(T, gamma, z, 8)
        orders.append(a)
        bad += not (a == b == c)
    dt = time.time() - t0
    spread = sorted(set(orders))
    report(1, "tangency equivalence (200 lines + 50 conics)", bad == 0 and dt < 30 and len(spread) >= 4,
           f"mismatches={bad} orders_seen={spread} time={dt:.1f}s")


# -- 2 ------------------------------------------------------------------------

def test_criterion_2_leibniz_and_sigma(report):
    rng = random.Random(202)
    fails = 0
    for _ in range(100):
        alpha = CIPair(rpoly(rng, P, 2), rpoly(rng, P, 2), 2) if rng.random() < 0.5 else rand_line(rng, P).ci
        f, g = rpoly(rng, P, 3), rpoly(rng, P, 3)
        fails += d_alpha(f * g, alpha) != d_alpha(f, alpha) * g + f * d_alpha(g, alpha)
    sigma_fails = 0
    for _ in range(10):
        gamma = rand_conic(rng, P) if rng.random() < 0.5 else rand_line(rng, P)
        z = gamma.point_at(rng.randrange(1, 1000))
        c = gamma.ci.tangent_field()[0].eval(z)
        if c == 0:
            continue
        sigma = MPoly.var(0, 3, P) - z[0]
        for j in range(1, 7):
            f = sigma ** j
            for i in range(j + 1):
                want = 0 if i < j else P.mul(P.pow(c, j), factorial(j))
                sigma_fails += f.eval(z) != want
                f = d_alpha(f, gamma.ci)
    report(2, "Leibniz rule and sigma powers", fails == 0 and sigma_fails == 0,
           f"leibniz_fail={fails} sigma_fail={sigma_fails}")


# -- 3 ------------------------------------------------------------------------

def test_criterion_3_multiplicity(report):
    ok_k = all(local_mult(*(MPoly.parse(t, 3, P) for t in ("x1", "x2", f"x3^{k}")), (0, 0, 0)).value == k
               for k in range(1, 9))
    ok_grid = True
    for d in (1, 2, 3):
        fs = []
        for i in range(3):
            f = MPoly.const(1, 3, P)
            for a in range(d):
                f = f * (MPoly.var(i, 3, P) - (2 * a + i))
            fs.append(f)
        pts = [(2 * a, 2 * b + 1, 2 * c + 2) for a in range(d) for b in range(d) for c in range(d)]
        audit = bezout_sum_audit(*fs, pts)
        ok_grid &= audit.equality and audit.total == d ** 3
    rng = random.Random(303)
    bound_fail = 0
    for _ in range(100):
        gamma = rand_line(rng, P)
        z = gamma.point_at(rng.randrange(1, 1000))
        k = rng.randint(1, 6)
        T = tangent_to_order(rng, gamma, z, k, 6)
        r = order_via_D(T, gamma.ci, z, 8)
        if r >= 8:
            continue
        bound_fail += local_mult(gamma.ci.P, gamma.ci.Q, T, z).value < r + 1
    report(3, "multiplicity, Bezout equality, tangency bound", ok_k and ok_grid and bound_fail == 0,
           f"k_ok={ok_k} grid_ok={ok_grid} bound_fail={bound_fail}")


# -- 4 ------------------------------------------------------------------------

def test_criterion_4_trapped(report):
    rng = random.Random(404)
    contained_seen = outside_seen = 0
    errors = 0
    for _ in range(100):
        gamma = rand_line(rng, P)
        z = gamma.point_at(rng.randrange(1, 1000))
        deg = rng.choice([2, 3])
        if rng.random() < 0.5:
            T = tangent_to_order(rng, gamma, z, None, deg)
            if T.is_zero():
                continue
        else:
            T = rpoly(rng, P, deg, density=1.0)
            T = T - T.eval(z)
        try:
            res = trapped_test(T, gamma, z)
        except AssertionError:
            errors += 1
            continue
        if res:
            contained_seen += 1
        else:
            outside_seen += 1
            errors += curve_in_surface(gamma, T)
    T = MPoly.parse("x1*x2 - x3", 3, P)
    bound_fail = 0
    for c in range(1, 21):
        gamma = line((0, c, 0), (1, 0, c), P) if c % 2 else line((c, 0, 0), (0, 1, c), P)
        z = gamma.point_at(rng.randrange(1, 1000))
        bound_fail += order_via_D(T, gamma.ci, z, 11) != 11
    report(4, "trapped criteria", errors == 0 and bound_fail == 0 and contained_seen and outside_seen,
           f"contained={contained_seen} outside={outside_seen} errors={errors} ruling_fail={bound_fail}")


# -- 5 ------------------------------------------------------------------------

def cubic_through_line(rng):
    gamma = rand_line(rng, PA)
    return tangent_to_order(rng, gamma, None, None, 3), gamma


def test_criterion_5_flecnode(report):
    rng = random.Random(505)
    degree_ok = True
    violations = 0
    witnessed = 0
    retried = 0
    worst = 0.0
    for _ in range(10):
        T, gamma = cubic_through_line(rng)
        if T.degree != 3:
            continue
        t0 = time.time()
        res = salmon_flecnode(T, seed=rng.randrange(10**6))
        worst = max(worst, time.time() - t0)
        retried += len(res.retried_nodes)
        degree_ok &= 0 <= res.degree <= 11 * 3 - 24
        pts = gamma.sample_points(25, start=rng.randrange(1, 10**6))
        pts += sample_surface_points(T, 25, rng)
        for z in pts:
            has_witness = bool(flecnodal_directions(T, z, 3))
            witnessed += has_witness
            if has_witness and res.poly.eval(z) != 0:
                violations += 1
    quad = salmon_flecnode(MPoly.parse("x1*x2 - x3", 3, PA))
    report(5, "flecnode polynomial", degree_ok and violations == 0 and quad.degenerate
           and witnessed >= 250 and worst < 300,
           f"degree_ok={degree_ok} witnessed={witnessed} violations={violations} "
           f"retried_nodes={retried} worst_time={worst:.1f}s")


# -- 6 ------------------------------------------------------------------------

def test_criterion_6_jet_determinism(report):
    F = PrimeField(31)
    rng = random.Random(606)
    mismatches = 0
    trials = 0
    positives = 0
    while trials < 100:
        deg = rng.choice([3, 4])
        # half the surfaces contain a line through the base point
        if rng.random() < 0.5:
            gamma = rand_line(rng, F)
            T = tangent_to_order(rng, gamma, None, None, deg)
        else:
            T = rpoly(rng, F, deg, density=0.8)
        if T.degree < 2:
            continue
        pts = sample_surface_points(T, 1, rng)
        if not pts:
            continue
        z = pts[0]
        r = rng.choice([2, 3])
        t = rng.choice([1, 2])
        verdict = jet_determines(T, z, t, r)
        X = MPoly.gens(3, F)
        I = rng.choice([m for m in monomials_upto(3, r + 1) if sum(m) == r + 1])
        bump = MPoly.const(F.random_nonzero(rng), 3, F)
        for i, e in enumerate(I):
            bump = bump * (X[i] - z[i]) ** e
        mismatches += is_flecnodal(T + bump, z, t, r) != verdict
        positives += verdict
        trials += 1
    report(6, "jet determinism", mismatches == 0,
           f"trials={trials} flecnodal={positives} mismatches={mismatches}")


# -- 7 ------------------------------------------------------------------------

def test_criterion_7_hilbert_acc(report):
    x1 = IdealBasis.of([MPoly.parse("x1", 3, QQ)])
    ok_h = all(hilbert_function(x1, t) == comb(t + 2, 2) for t in range(13))
    hp = hilbert_poly(x1)
    ok_hp = hp.hp_coeffs == (1, Fraction(3, 2), Fraction(1, 2), 0)
    uni = [IdealBasis.of([MPoly.parse(t, 1, QQ)]) for t in ("x^3 + x", "x^2 + 1")]
    x = MPoly.var(0, 1, QQ)
    uni.append(IdealBasis.of([x * (x ** 2 + 1)]))
    ok_acc = acc_explore(uni).r0 == 3
    rng = random.Random(707)
    dec = 0
    for _ in range(20):
        chain = []
        for _ in range(5):
            gens = [MPoly({tuple(rng.randint(0, 2) for _ in range(3)): 1}, 3, QQ) for _ in range(2)]
            gens = [g for g in gens if not g.is_constant()] or [MPoly.var(1, 3, QQ) ** 2]
            chain.append(IdealBasis.of(gens))
        dec += acc_explore(chain).decreasing
    report(7, "Hilbert function, polynomial and ACC", ok_h and ok_hp and ok_acc and dec == 20,
           f"H_ok={ok_h} HP_ok={ok_hp} r0_ok={ok_acc} decreasing_chains={dec}/20")


# -- 8 ------------------------------------------------------------------------

def test_criterion_8_degree_reduction(report):
    t0 = time.time()
    cfg = two_plane_lines(30)
    bound = Fraction(8 * 60, 29)
    forced = [degree_reduce(cfg.curves, 29, ReductionConfig(rng_seed=s, base_case_size=5)) for s in range(5)]
    default = degree_reduce(cfg.curves, 29, ReductionConfig(rng_seed=0))
    exact_two = sum(r.degree == 2 for r in forced)
    within = all(r.degree <= bound for r in forced + [default])
    quad = regulus_rulings(10)
    qres = degree_reduce(quad.curves, 10)
    contained = all(curve_in_surface(g, r.poly) for r in forced + [default] for g in cfg.curves) and \
        all(curve_in_surface(g, qres.poly) for g in quad.curves)
    dt = time.time() - t0
    report(8, "degree reduction", within and exact_two >= 4 and default.degree == 2 and qres.degree == 2
           and contained and dt < 120,
           f"forced_degrees={[r.degree for r in forced]} default={default.degree} quadric={qres.degree} "
           f"bound={float(bound):.2f} time={dt:.1f}s")


# -- 9 ------------------------------------------------------------------------

def test_criterion_9_census_dichotomy(report):
    cop = coplanar_lines(5)
    reg = regulus_rulings(4)
    n_cop = census(cop).count
    n_reg = census(reg).count
    v1 = dichotomy_demo(cop, 5)
    v2 = dichotomy_demo(reg, 4)
    plane_ok = v1.verdict == "surface found" and v1.surface.degree == 1 and len(v1.surface.contained) == 5
    quad_ok = v2.verdict == "surface found" and v2.surface.degree == 2 and len(v2.surface.contained) == 8
    audit = doubly_ruled_audit(MPoly.parse("x1*x2 - x3", 3, P), samples=20, seed=9, family_size=5)
    ruled_ok = audit.witness_counts and all(k == 2 for k in audit.witness_counts) and audit.families_verified
    report(9, "census, dichotomy, doubly ruled audit",
           n_cop == 10 and n_reg == 16 and plane_ok and quad_ok and ruled_ok,
           f"coplanar={n_cop} regulus={n_reg} plane_ok={plane_ok} quadric_ok={quad_ok} "
           f"ruled_counts={sorted(set(audit.witness_counts))} families={audit.families_verified}")
