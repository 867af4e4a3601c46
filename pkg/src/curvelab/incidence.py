"""Curve configurations, rich-point census, surface detection and demos."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .curves import (RatCurve, conic_from, curve_from_json, curve_in_surface,
                     intersect_curves, line, line_through, same_curve)
from .errors import InfiniteIntersection, InvalidArgument
from .fields import PrimeField, SEARCH_PRIME
from .flecnode import flecnodal_directions, is_flecnodal
from .interpolate import ReductionConfig, _kernel_poly, degree_reduce
from .mpoly import MPoly, format_poly
from .unipoly import UniPoly, uni_roots


@dataclass
class Configuration:
    name: str
    p: int
    curves: list
    meta: dict = dc_field(default_factory=dict)

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    def to_json(self) -> dict:
        return {"name": self.name, "field_prime": self.p,
                "curves": [g.to_json() for g in self.curves], "meta": self.meta}


# -- generators ---------------------------------------------------------------

def _field(p: int) -> PrimeField:
    return PrimeField(p)


def _check_distinct(curves: Sequence[RatCurve]):
    for a, b in combinations(range(len(curves)), 2):
        if same_curve(curves[a], curves[b]):
            raise InvalidArgument(f"curves {a} and {b} coincide")


def coplanar_lines(m: int, seed: int = 0, p: int = SEARCH_PRIME, tries: int = 20) -> Configuration:
    """m lines in general position inside a random plane."""
    F = _field(p)
    rng = random.Random(seed)
    for _ in range(tries):
        o = [F.random(rng) for _ in range(3)]
        e1 = [F.random(rng) for _ in range(3)]
        e2 = [F.random(rng) for _ in range(3)]

        def at(a, b):
            return [F.add(o[i], F.add(F.mul(a, e1[i]), F.mul(b, e2[i]))) for i in range(3)]

        try:
            curves = [line_through(at(F.random(rng), F.random(rng)),
                                   at(F.random(rng), F.random(rng)), F) for _ in range(m)]
            cfg = Configuration("coplanar_lines", p, curves,
                                {"generator": "coplanar_lines", "m": m, "seed": seed,
                                 "expected_rich": m * (m - 1) // 2})
            rep = census(cfg)
        except InvalidArgument:
            continue
        # general position: every pair meets, no three through a point
        if len(rep.rich_points) == m * (m - 1) // 2:
            return cfg
    raise InvalidArgument("could not place lines in general position; use a larger prime")


def two_plane_lines(m: int, seed: int = 0, p: int = SEARCH_PRIME) -> Configuration:
    """m general-position lines in each of two random planes."""
    a = coplanar_lines(m, seed, p)
    b = coplanar_lines(m, seed + 10_007, p)
    curves = a.curves + b.curves
    _check_distinct(curves)
    return Configuration("two_plane_lines", p, curves,
                         {"generator": "two_plane_lines", "m": m, "seed": seed})


def concurrent_lines(m: int, p: int = SEARCH_PRIME) -> Configuration:
    """m lines through the origin with directions (1, i, i^2)."""
    F = _field(p)
    if m > p:
        raise InvalidArgument("field too small for distinct directions")
    curves = [line((0, 0, 0), (1, i, i * i), F) for i in range(m)]
    return Configuration("concurrent_lines", p, curves,
                         {"generator": "concurrent_lines", "m": m, "expected_rich": 1 if m > 1 else 0})


def regulus_rulings(m: int, p: int = SEARCH_PRIME) -> Configuration:
    """m lines from each ruling of x3 = x1*x2: (s, c, cs) and (c', t, c't)."""
    F = _field(p)
    if m > p:
        raise InvalidArgument("field too small")
    first = [line((0, c, 0), (1, 0, c), F) for c in range(1, m + 1)]
    second = [line((c, 0, 0), (0, 1, c), F) for c in range(1, m + 1)]
    return Configuration("regulus_rulings", p, first + second,
                         {"generator": "regulus_rulings", "m": m, "surface": "x1*x2 + -x3",
                          "expected_rich": m * m})


def random_lines(m: int, seed: int = 0, p: int = SEARCH_PRIME) -> Configuration:
    F = _field(p)
    rng = random.Random(seed)
    curves = []
    while len(curves) < m:
        d = [F.random(rng) for _ in range(3)]
        if all(x == 0 for x in d):
            continue
        curves.append(line([F.random(rng) for _ in range(3)], d, F))
    return Configuration("random_lines", p, curves, {"generator": "random_lines", "m": m, "seed": seed})


def grid_lines(m: int, p: int = SEARCH_PRIME) -> Configuration:
    """All 3m^2 axis-parallel lines through the grid {0..m-1}^3."""
    F = _field(p)
    curves = []
    for axis in range(3):
        d = [0, 0, 0]
        d[axis] = 1
        others = [i for i in range(3) if i != axis]
        for a in range(m):
            for b in range(m):
                pt = [0, 0, 0]
                pt[others[0]], pt[others[1]] = a, b
                curves.append(line(pt, d, F))
    return Configuration("grid_lines", p, curves,
                         {"generator": "grid_lines", "m": m, "expected_rich": m ** 3})


def circle_family(m: int, p: int = SEARCH_PRIME) -> Configuration:
    """m unit circles in the plane x3 = 0 centred at (k, 0, 0)."""
    F = _field(p)
    plane = MPoly.parse("x3", 3, F)
    curves = []
    for k in range(m):
        quad = MPoly.parse(f"x1^2 + x2^2 + -1 + -{2 * k}*x1 + {k * k}", 3, F)
        curves.append(conic_from(plane, quad, (k + 1, 0, 0)))
    return Configuration("circle_family", p, curves, {"generator": "circle_family", "m": m})


GENERATORS = {
    "coplanar_lines": coplanar_lines,
    "two_plane_lines": two_plane_lines,
    "concurrent_lines": concurrent_lines,
    "regulus_rulings": regulus_rulings,
    "random_lines": random_lines,
    "grid_lines": grid_lines,
    "circle_family": circle_family,
}


def generate(gen: dict, p: int = SEARCH_PRIME, seed: int = 0) -> Configuration:
    name = gen.get("name") or gen.get("generator")
    if name not in GENERATORS:
        raise InvalidArgument(f"unknown generator {name!r}")
    kwargs = {"p": p}
    if "m" not in gen:
        raise InvalidArgument("generator needs m")
    if name in ("coplanar_lines", "two_plane_lines", "random_lines"):
        kwargs["seed"] = gen.get("seed", seed)
    return GENERATORS[name](int(gen["m"]), **kwargs)


def config_from_json(d: dict, p: int = SEARCH_PRIME, seed: int = 0) -> Configuration:
    """Either {"generator": {...}} or {"curves": [...]} (optionally with a name)."""
    p = int(d.get("field_prime", p))
    if "generator" in d:
        gen = d["generator"]
        if isinstance(gen, str):
            # flat form: {"generator": "regulus_rulings", "m": 4}
            gen = {k: v for k, v in d.items() if k != "generator"} | {"name": gen}
        return generate(gen, p, seed)
    if "curves" in d:
        F = _field(p)
        curves = [curve_from_json(c, F) for c in d["curves"]]
        _check_distinct(curves)
        return Configuration(d.get("name", "explicit"), p, curves, {"generator": "explicit"})
    raise InvalidArgument("configuration needs 'generator' or 'curves'")


# -- census -------------------------------------------------------------------

@dataclass
class CensusReport:
    n: int
    rich_points: list  # (point, tuple of curve indices), sorted by point
    histogram: dict
    A: object = None
    threshold: object = None
    exceeds_threshold: bool | None = None

    @property
    def count(self) -> int:
        return len(self.rich_points)

    def point_set(self) -> set:
        return {pt for pt, _ in self.rich_points}

    def to_json(self) -> dict:
        return {"n": self.n, "rich_count": self.count,
                "rich_points": [{"point": list(pt), "curves": list(ix)} for pt, ix in self.rich_points],
                "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
                "A": None if self.A is None else str(self.A),
                "threshold": None if self.threshold is None else str(self.threshold),
                "exceeds_threshold": self.exceeds_threshold}

    def csv_rows(self) -> list[list]:
        rows = [["x1", "x2", "x3", "incidences", "curves"]]
        for pt, ix in self.rich_points:
            rows.append([*pt, len(ix), " ".join(map(str, ix))])
        return rows


def census(cfg: Configuration, A=None, C: int = 100) -> CensusReport:
    """Exact set of points on two or more curves, by pairwise intersection."""
    curves = cfg.curves
    hits: dict = {}
    for i, j in combinations(range(len(curves)), 2):
        try:
            pts = intersect_curves(curves[i], curves[j])
        except InfiniteIntersection:
            raise InvalidArgument(f"duplicate curves {i} and {j}") from None
        for pt in pts:
            hits.setdefault(pt, set()).update((i, j))
    rich = sorted((pt, tuple(sorted(ix))) for pt, ix in hits.items())
    hist = Counter(len(ix) for _, ix in rich)
    rep = CensusReport(len(curves), rich, dict(hist))
    if A is not None:
        rep.A = A
        rep.threshold = C * Fraction(A) * len(curves)
        rep.exceeds_threshold = len(rich) > rep.threshold
    return rep


# -- surface fitting -----------------------------------------------------------

@dataclass
class SurfaceFit:
    poly: MPoly
    degree: int
    contained: tuple

    def to_json(self) -> dict:
        return {"poly": format_poly(self.poly), "degree": self.degree,
                "contained": list(self.contained)}


def fit_low_degree_surface(cfg: Configuration, subset: Sequence[int] | None = None,
                           d: int = 1) -> SurfaceFit | None:
    """Surface of degree <= d through the chosen curves, or None."""
    if d not in (1, 2):
        raise InvalidArgument("surface fits are limited to degree 1 or 2")
    idx = list(range(len(cfg.curves))) if subset is None else list(subset)
    if not idx:
        raise InvalidArgument("empty subset")
    F = cfg.field
    pts = []
    for i in idx:
        g = cfg.curves[i]
        pts.extend(g.sample_points(d * g.degree + 1))
    f = _kernel_poly(pts, d, F)
    if f is None:
        return None
    if not all(curve_in_surface(cfg.curves[i], f) for i in idx):
        return None
    contained = tuple(i for i, g in enumerate(cfg.curves) if curve_in_surface(g, f))
    return SurfaceFit(f, f.degree, contained)


# -- doubly ruled surfaces ------------------------------------------------------

def sample_surface_points(T: MPoly, count: int, rng: random.Random, max_tries: int | None = None) -> list[tuple]:
    """Random affine points of Z(T): fix two coordinates, solve for the third."""
    F = T.field
    if not isinstance(F, PrimeField):
        raise InvalidArgument("surface sampling needs a prime field")
    k = next((i for i in (2, 1, 0) if any(e[i] for e in T.terms)), None)
    if k is None:
        raise InvalidArgument("constant polynomial has no surface")
    others = [i for i in range(3) if i != k]
    out: list = []
    seen: set = set()
    tries = 0
    max_tries = max_tries or 50 * count + 100
    while len(out) < count and tries < max_tries:
        tries += 1
        vals = {i: F.random(rng) for i in others}
        coeffs: dict = {}
        for e, c in T.terms.items():
            w = c
            for i in others:
                w = F.mul(w, F.pow(vals[i], e[i]))
            coeffs[e[k]] = F.add(coeffs.get(e[k], F.zero), w)
        u = UniPoly([coeffs.get(j, 0) for j in range(max(coeffs) + 1)], F)
        if u.is_zero():
            roots = [F.random(rng)]
        elif u.degree <= 0:
            continue
        else:
            roots = sorted(uni_roots(u))
        for r in roots:
            z = [0, 0, 0]
            for i in others:
                z[i] = vals[i]
            z[k] = r
            z = tuple(z)
            if z not in seen:
                seen.add(z)
                out.append(z)
                break
    return out


def _is_regular_surface_point(T: MPoly, z) -> bool:
    F = T.field
    return any(not F.is_zero(g.eval(z)) for g in T.gradient())


@dataclass
class DoublyRuledReport:
    samples: int
    witness_counts: list
    irregular: int
    fraction_two_or_more: float
    family_size: int = 0
    families_verified: bool | None = None
    family_lines: tuple = ()

    def to_json(self) -> dict:
        return {"samples": self.samples, "witness_counts": self.witness_counts,
                "irregular": self.irregular, "fraction_two_or_more": self.fraction_two_or_more,
                "family_size": self.family_size, "families_verified": self.families_verified,
                "families": [[g.to_json() for g in fam] for fam in self.family_lines]}


def lines_through(T: MPoly, z) -> list[tuple]:
    """Directions of lines through z lying in Z(T), for deg T <= 2."""
    return flecnodal_directions(T, z, 2)


def _other_ruling(T, z, skip, F) -> RatCurve | None:
    dirs = [v for v in lines_through(T, z) if v != skip]
    if len(dirs) != 1:
        return None
    return line(z, dirs[0], F)


def doubly_ruled_audit(T: MPoly, samples: int = 20, seed: int = 0, family_size: int = 5) -> DoublyRuledReport:
    F = T.field
    if T.degree > 2 or T.degree < 1:
        raise InvalidArgument("witness extraction handles surfaces of degree 1 or 2")
    rng = random.Random(seed)
    pts = sample_surface_points(T, samples, rng)
    counts = []
    irregular = 0
    base = None
    for z in pts:
        if not _is_regular_surface_point(T, z):
            irregular += 1
            continue
        k = len(lines_through(T, z))
        counts.append(k)
        if base is None and k == 2:
            base = z
    frac = sum(1 for k in counts if k >= 2) / len(counts) if counts else 0.0
    rep = DoublyRuledReport(len(pts), counts, irregular, frac)
    if T.degree == 2 and base is not None and family_size > 0:
        v1, v2 = lines_through(T, base)
        fams = []
        for along, skip in ((v1, v1), (v2, v2)):
            # lines of the opposite ruling through points of the base line
            fam = []
            s = 0
            while len(fam) < family_size and s < 4 * family_size + 10:
                s += 1
                w = tuple(F.add(base[i], F.mul(s, along[i])) for i in range(3))
                if not _is_regular_surface_point(T, w):
                    continue
                g = _other_ruling(T, w, skip, F)
                if g is not None:
                    fam.append(g)
            fams.append(fam)
        if all(len(f) == family_size for f in fams):
            ok = all(intersect_curves(a, b) for a in fams[0] for b in fams[1])
            rep.family_size = family_size
            rep.families_verified = bool(ok)
            rep.family_lines = (tuple(fams[0]), tuple(fams[1]))
    return rep


# -- contagion -----------------------------------------------------------------

@dataclass
class ContagionReport:
    per_curve: list
    global_samples: int
    global_fraction: float
    skipped_singular: int

    def to_json(self) -> dict:
        return {"per_curve": self.per_curve, "global_samples": self.global_samples,
                "global_fraction": self.global_fraction, "skipped_singular": self.skipped_singular}


def contagion_demo(T: MPoly, curves: Sequence[RatCurve], t: int = 1, r: int = 3,
                   global_samples: int = 30, seed: int = 0, C: int = 1,
                   family: Sequence[RatCurve] | None = None) -> ContagionReport:
    """Check a flecnodal condition along curves in Z(T), then across Z(T).

    Each curve is tested at C*deg(T) + 1 points, then at as many further
    points; contagion holds for a curve when every further point passes.
    ``family`` switches the witness family from all lines to a curve list.
    """
    for g in curves:
        if not curve_in_surface(g, T):
            raise InvalidArgument("every curve must lie in Z(T)")
    k = C * max(T.degree, 1) + 1
    per = []
    for i, g in enumerate(curves):
        first = [z for z in g.sample_points(2 * k) if _is_regular_surface_point(T, z)]
        verdicts = [is_flecnodal(T, z, t, r, curves=family) for z in first]
        per.append({"curve": i, "initial_points": len(verdicts[:k]),
                    "initial_hold": all(verdicts[:k]),
                    "contagion_achieved": all(verdicts[k:])})
    rng = random.Random(seed)
    hold = 0
    singular = 0
    tested = 0
    for z in sample_surface_points(T, global_samples, rng):
        if not _is_regular_surface_point(T, z):
            singular += 1
            continue
        tested += 1
        hold += is_flecnodal(T, z, t, r, curves=family)
    return ContagionReport(per, tested, hold / tested if tested else 0.0, singular)


# -- dichotomy -----------------------------------------------------------------

@dataclass
class DichotomyVerdict:
    verdict: str
    rich_count: int
    threshold: object
    threshold_exceeded: bool
    surface: SurfaceFit | None = None
    reduction_degree: int | None = None
    notes: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "rich_count": self.rich_count,
                "threshold": str(self.threshold), "threshold_exceeded": self.threshold_exceeded,
                "surface": None if self.surface is None else self.surface.to_json(),
                "reduction_degree": self.reduction_degree, "notes": self.notes}


def _clusters(cfg: Configuration, rep: CensusReport, d: int) -> list[list[int]]:
    """For each curve with more than d*deg rich points: it plus its neighbours."""
    on_curve: dict = {}
    for pt, ix in rep.rich_points:
        for i in ix:
            on_curve.setdefault(i, []).append(ix)
    out = []
    seen = set()
    for i, g in enumerate(cfg.curves):
        incid = on_curve.get(i, [])
        if len(incid) < d * g.degree + 1:
            continue
        cl = sorted({j for ix in incid for j in ix})
        if tuple(cl) not in seen:
            seen.add(tuple(cl))
            out.append(cl)
    return out


def dichotomy_demo(cfg: Configuration, A, C2: int = 100, seed: int = 0,
                   reduction: ReductionConfig | None = None) -> DichotomyVerdict:
    """Few rich points, or a plane/quadric holding at least A curves.

    The surface search runs whether or not the rich-point threshold is
    crossed, so small instances still produce a certificate.
    """
    rep = census(cfg, A, C2)
    res = DichotomyVerdict("few rich points", rep.count, rep.threshold, bool(rep.exceeds_threshold))
    if rep.exceeds_threshold:
        red = degree_reduce(cfg.curves, A, reduction or ReductionConfig(rng_seed=seed))
        res.reduction_degree = red.degree
        res.notes.append(f"degree reduction gave degree {red.degree}")
    best: SurfaceFit | None = None
    for d in (1, 2):
        for cl in _clusters(cfg, rep, d):
            fit = fit_low_degree_surface(cfg, cl, d)
            if fit is None:
                continue
            if best is None or len(fit.contained) > len(best.contained) or \
                    (len(fit.contained) == len(best.contained) and fit.degree < best.degree):
                best = fit
        if best is not None and len(best.contained) >= A:
            break
    res.surface = best
    if best is not None and len(best.contained) >= A:
        res.verdict = "surface found"
    elif rep.exceeds_threshold:
        res.verdict = "failure: threshold exceeded but no surface of degree <= 2 located"
        res.notes.append("no cluster fit reached A curves")
    return res
