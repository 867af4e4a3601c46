"""Buchberger's algorithm under graded-lex order.

Pairs are processed by the normal strategy (smallest lcm of leading
monomials first, ties broken by generator indices) with the product and
chain criteria.  Work caps raise ``WorkLimitExceeded`` rather than
returning a truncated basis.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidArgument, WorkLimitExceeded
from .fields import Field
from .mpoly import MAX_ARITY, MPoly, grlex_key

MAX_GENERATOR_DEGREE = 8
MAX_PAIRS = 10_000


@dataclass(frozen=True)
class IdealBasis:
    arity: int
    generators: tuple
    field: Field

    @classmethod
    def of(cls, gens: Sequence[MPoly]) -> IdealBasis:
        gens = tuple(gens)
        if not gens:
            raise InvalidArgument("an ideal presentation needs at least one generator")
        return cls(gens[0].arity, gens, gens[0].field)

    @property
    def complexity(self) -> int:
        """Sum of generator degrees: an upper bound witnessed by this presentation."""
        return sum(max(g.degree, 0) for g in self.generators if not g.is_zero())

    def __add__(self, other: IdealBasis) -> IdealBasis:
        return IdealBasis(self.arity, self.generators + other.generators, self.field)


@dataclass(frozen=True)
class GroebnerBasis:
    polys: tuple
    arity: int
    field: Field

    @property
    def leading_monomials(self) -> tuple:
        return tuple(g.leading_term()[0] for g in self.polys)

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.polys)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _monic(f: MPoly) -> MPoly:
    return f.scale(f.field.inv(f.leading_term()[1]))


def normal_form(f: MPoly, G: Sequence[MPoly]) -> MPoly:
    """Fully reduced remainder of f on division by G (graded lex)."""
    F = f.field
    lts = [(g.leading_term(), g) for g in G if not g.is_zero()]
    rem: dict = {}
    p = dict(f.terms)
    while p:
        e = max(p, key=grlex_key)
        c = p[e]
        for (lm, lc), g in lts:
            if _divides(lm, e):
                q = tuple(a - b for a, b in zip(e, lm))
                factor = F.div(c, lc)
                for ge, gc in g.terms.items():
                    te = tuple(a + b for a, b in zip(ge, q))
                    v = F.sub(p.get(te, F.zero), F.mul(factor, gc))
                    if F.is_zero(v):
                        p.pop(te, None)
                    else:
                        p[te] = v
                break
        else:
            rem[e] = c
            del p[e]
    return MPoly._raw(rem, f.arity, F)


def s_polynomial(f: MPoly, g: MPoly) -> MPoly:
    (ef, cf), (eg, cg) = f.leading_term(), g.leading_term()
    L = _lcm(ef, eg)
    F = f.field
    a = f.mul_monomial(tuple(x - y for x, y in zip(L, ef)), F.inv(cf))
    b = g.mul_monomial(tuple(x - y for x, y in zip(L, eg)), F.inv(cg))
    return a - b


def _check_limits(gens: Sequence[MPoly], arity: int):
    if arity > MAX_ARITY:
        raise WorkLimitExceeded(f"arity {arity} exceeds {MAX_ARITY}")
    for g in gens:
        if g.degree > MAX_GENERATOR_DEGREE:
            raise WorkLimitExceeded(f"generator degree {g.degree} exceeds {MAX_GENERATOR_DEGREE}")


def groebner(I: IdealBasis, max_pairs: int = MAX_PAIRS) -> GroebnerBasis:
    _check_limits(I.generators, I.arity)
    F = I.field
    G: list[MPoly] = []
    for g in I.generators:
        if g.is_zero():
            continue
        g = normal_form(g, G) if G else g
        if not g.is_zero():
            G.append(_monic(g))
    if any(g.is_constant() for g in G):
        return GroebnerBasis((MPoly.const(1, I.arity, F),), I.arity, F)
    heap: list = []
    processed = 0

    def push(i, j):
        L = _lcm(G[i].leading_term()[0], G[j].leading_term()[0])
        heapq.heappush(heap, (grlex_key(L), i, j))

    for j in range(len(G)):
        for i in range(j):
            push(i, j)
    while heap:
        key, i, j = heapq.heappop(heap)
        processed += 1
        if processed > max_pairs:
            raise WorkLimitExceeded(f"more than {max_pairs} critical pairs; raise the limit")
        li, lj = G[i].leading_term()[0], G[j].leading_term()[0]
        L = key[1]
        # product criterion, then the chain criterion
        if all(min(a, b) == 0 for a, b in zip(li, lj)):
            continue
        cands = [k for k in range(len(G))
                 if k not in (i, j) and _divides(G[k].leading_term()[0], L)]
        if cands:
            pending = {(a, b) for _, a, b in heap}
            if any((min(i, k), max(i, k)) not in pending
                   and (min(j, k), max(j, k)) not in pending for k in cands):
                continue
        h = normal_form(s_polynomial(G[i], G[j]), G)
        if h.is_zero():
            continue
        if h.is_constant():
            return GroebnerBasis((MPoly.const(1, I.arity, F),), I.arity, F)
        G.append(_monic(h))
        n = len(G) - 1
        for k in range(n):
            push(k, n)
    return GroebnerBasis(tuple(_reduce_basis(G)), I.arity, F)


def _reduce_basis(G: list[MPoly]) -> list[MPoly]:
    G = sorted(G, key=lambda g: grlex_key(g.leading_term()[0]))
    minimal: list[MPoly] = []
    for g in G:
        lm = g.leading_term()[0]
        if not any(_divides(h.leading_term()[0], lm) for h in minimal):
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        out.append(_monic(normal_form(g, others)))
    return sorted(out, key=lambda g: grlex_key(g.leading_term()[0]))


def ideal_member(f: MPoly, I: IdealBasis | GroebnerBasis) -> bool:
    G = I if isinstance(I, GroebnerBasis) else groebner(I)
    return normal_form(f, G.polys).is_zero()


def is_groebner(G: Sequence[MPoly]) -> bool:
    """All S-polynomials reduce to zero."""
    return all(normal_form(s_polynomial(G[i], G[j]), G).is_zero()
               for j in range(len(G)) for i in range(j))
