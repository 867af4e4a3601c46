"""Vanishing polynomials through points and curves, and randomized degree reduction."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .curves import RatCurve, curve_in_surface
from .errors import InvalidArgument
from .fields import Field
from .linalg import nullspace
from .mpoly import MPoly, count_monomials, monomials_upto


def _eval_rows(points: Sequence[tuple], cols: Sequence[tuple], F: Field) -> list[list]:
    d = max(sum(m) for m in cols)
    rows = []
    for z in points:
        pw = [[F.pow(z[i], k) for k in range(d + 1)] for i in range(3)]
        rows.append([F.mul(F.mul(pw[0][m[0]], pw[1][m[1]]), pw[2][m[2]]) for m in cols])
    return rows


def counting_degree(npoints: int) -> int:
    """Smallest d with more monomials of degree <= d than points."""
    d = 0
    while count_monomials(3, d) <= npoints:
        d += 1
    return d


def _kernel_poly(points, d: int, F: Field) -> MPoly | None:
    cols = monomials_upto(3, d)
    ker = nullspace(_eval_rows(points, cols, F), F, len(cols))
    if not ker:
        return None
    return MPoly.from_vector(ker[0], cols, 3, F)


def min_vanishing_poly(points: Sequence, field: Field) -> MPoly:
    """A minimal-degree nonzero polynomial vanishing on every point.

    Degrees are tried upward from 1; the counting degree is never exceeded
    since the evaluation matrix there has more columns than rows.
    """
    F = field
    pts = [tuple(F(x) for x in z) for z in points]
    if not pts:
        raise InvalidArgument("need at least one point")
    for d in range(1, counting_degree(len(pts)) + 1):
        f = _kernel_poly(pts, d, F)
        if f is not None:
            return f
    raise AssertionError("kernel empty at the counting degree")


def curves_counting_degree(curves: Sequence[RatCurve]) -> int:
    d = 1
    while count_monomials(3, d) <= sum(d * g.degree + 1 for g in curves):
        d += 1
    return d


def vanishing_poly_on_curves(curves: Sequence[RatCurve]) -> MPoly:
    """Minimal-degree polynomial containing every curve.

    At degree d, a polynomial vanishing at d*deg(g) + 1 distinct points of
    an irreducible curve g contains g, so d*deg(g) + 1 samples per curve
    suffice.  Containment is still re-checked by restriction.
    """
    if not curves:
        raise InvalidArgument("need at least one curve")
    F = curves[0].field
    for d in range(1, curves_counting_degree(curves) + 1):
        pts = []
        for g in curves:
            pts.extend(g.sample_points(d * g.degree + 1))
        f = _kernel_poly(pts, d, F)
        if f is not None:
            assert all(curve_in_surface(g, f) for g in curves), "sampled kernel missed a curve"
            return f
    raise AssertionError("kernel empty at the counting degree")


@dataclass
class ReductionConfig:
    C2: Fraction = Fraction(4)
    max_restarts: int = 5
    rng_seed: int = 0
    degree_slack: Fraction = Fraction(2)
    base_case_size: int = 1000
    keep_fraction: Fraction = Fraction(99, 200)
    A_decay: Fraction = Fraction(99, 100)

    def __post_init__(self):
        self.C2 = Fraction(self.C2)
        self.degree_slack = Fraction(self.degree_slack)
        if self.C2 <= 0:
            raise InvalidArgument("C2 must be positive")
        if self.max_restarts < 1:
            raise InvalidArgument("need at least one attempt")


@dataclass
class ReductionResult:
    poly: MPoly
    degree: int
    restarts_used: int
    log: list = dc_field(default_factory=list)
    conforming: bool = True

    def to_json(self) -> dict:
        from .mpoly import format_poly
        return {"poly": format_poly(self.poly), "degree": self.degree,
                "restarts_used": self.restarts_used, "conforming": self.conforming,
                "log": self.log}


def degree_reduce(L: Sequence[RatCurve], A, cfg: ReductionConfig | None = None) -> ReductionResult:
    """Product of sampled-interpolation polynomials containing every curve of L.

    Each level samples curves with probability min(1, C2 n / A^2),
    interpolates through the sample, keeps the curves it swallowed, and
    recurses on the rest with A scaled by 99/100.  A level that swallows
    fewer than 99/200 of its curves is retried with fresh randomness.
    """
    cfg = cfg or ReductionConfig()
    L = list(L)
    original = list(L)
    if not L:
        raise InvalidArgument("need at least one curve")
    F = L[0].field
    D = max(g.ci.D for g in L)
    # per-curve rich-point refinement is not tracked; use the worst case A / D^2
    A = Fraction(A) / (D * D)
    rng = random.Random(cfg.rng_seed)
    poly = MPoly.const(1, 3, F)
    log: list = []
    restarts = 0
    conforming = True
    level = 0
    while L:
        n = len(L)
        p = min(Fraction(1), cfg.C2 * n / (A * A)) if A > 0 else Fraction(1)
        if n <= cfg.base_case_size or p >= 1:
            P1 = vanishing_poly_on_curves(L)
            log.append({"level": level, "n": n, "A": float(A), "p": float(p),
                        "sampled": n, "degree": P1.degree, "contained": n, "attempts": 1,
                        "base_case": True})
            poly = poly * P1
            break
        best = None
        for attempt in range(1, cfg.max_restarts + 1):
            sample = [g for g in L if rng.random() < p] or [rng.choice(L)]
            P1 = vanishing_poly_on_curves(sample)
            kept = [g for g in L if curve_in_surface(g, P1)]
            if best is None or len(kept) > len(best[1]):
                best = (P1, kept, len(sample))
            if len(kept) >= cfg.keep_fraction * n:
                break
            restarts += 1
        else:
            conforming = False
        P1, kept, sampled = best
        log.append({"level": level, "n": n, "A": float(A), "p": float(p),
                    "sampled": sampled, "degree": P1.degree, "contained": len(kept),
                    "attempts": attempt, "base_case": False})
        poly = poly * P1
        kept_ids = {id(g) for g in kept}
        L = [g for g in L if id(g) not in kept_ids]
        A = A * cfg.A_decay
        level += 1
    assert all(curve_in_surface(g, poly) for g in original), "reduction lost a curve"
    return ReductionResult(poly, poly.degree, restarts, log, conforming)


def degree_target(n: int, A, C: int = 8) -> int:
    """The ceiling C n / A used to judge reduction output."""
    q = Fraction(C * n) / Fraction(A)
    return -(-q.numerator // q.denominator)
