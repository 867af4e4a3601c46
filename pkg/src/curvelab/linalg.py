"""Dense exact linear algebra over F_p and Q.

Prime fields eliminate modulo p on numpy arrays (int64 when p < 2^31 so
that products fit, object arrays of Python ints otherwise).  Rational
matrices are cleared to integers and reduced with Bareiss fraction-free
elimination; fractions only appear in the final back-substitution.

Pivoting is deterministic: the first nonzero entry in column order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .errors import InvalidArgument
from .fields import Field, PrimeField

_INT64_SAFE = 2**31


@dataclass(frozen=True)
class ExactMatrix:
    """Row-major matrix of field elements."""

    rows: int
    cols: int
    entries: tuple
    field: Field

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise InvalidArgument("entries length must equal rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field, cols: int | None = None):
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        flat = tuple(field(x) for r in rows for x in r)
        return cls(len(rows), ncols, flat, field)

    def to_rows(self) -> list[list]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def rank(self) -> int:
        return rank(self.to_rows(), self.field, self.cols)

    def nullspace(self) -> list[list]:
        return nullspace(self.to_rows(), self.field, self.cols)

    def rref(self):
        return rref(self.to_rows(), self.field, self.cols)


def rref(rows: Sequence[Sequence], field: Field, ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows and
    ``pivots[i]`` is the pivot column of ``R[i]``.
    """
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return [], []
    if isinstance(field, PrimeField):
        return _rref_mod_p(rows, field.p, ncols)
    return _rref_rational(rows, ncols)


def _rref_mod_p(rows, p, ncols):
    dtype = np.int64 if p < _INT64_SAFE else object
    A = np.array([[x % p for x in r] for r in rows], dtype=dtype).reshape(len(rows), ncols)
    m, n = A.shape
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, c:] = (A[r, c:] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit, c:] = (A[hit, c:] - np.outer(col[hit], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return [[int(x) for x in A[i]] for i in range(r)], pivots


def _bareiss_echelon(M: list[list[int]], ncols: int):
    """Fraction-free row echelon form in place; returns pivot columns."""
    m = len(M)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        i = next((k for k in range(r, m) if M[k][c] != 0), None)
        if i is None:
            continue
        if i != r:
            M[r], M[i] = M[i], M[r]
        piv = M[r][c]
        Mr = M[r]
        for k in range(r + 1, m):
            Mk = M[k]
            a = Mk[c]
            for j in range(c + 1, ncols):
                Mk[j] = (piv * Mk[j] - a * Mr[j]) // prev
            Mk[c] = 0
        # rows above the pivot row are left alone; back-substitution below
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def _rref_rational(rows, ncols):
    M = []
    for row in rows:
        row = [Fraction(x) for x in row]
        d = lcm(*(x.denominator for x in row)) if row else 1
        M.append([int(x * d) for x in row])
    pivots = _bareiss_echelon(M, ncols)
    R = [[Fraction(x) for x in M[i]] for i in range(len(pivots))]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        piv = R[i][c]
        R[i] = [x / piv for x in R[i]]
        for k in range(i):
            f = R[k][c]
            if f:
                R[k] = [a - f * b for a, b in zip(R[k], R[i])]
    return R, pivots


def rank(rows, field: Field, ncols: int | None = None) -> int:
    return len(rref(rows, field, ncols)[1])


def nullspace(rows, field: Field, ncols: int | None = None) -> list[list]:
    """Basis of {v : Mv = 0}, itself returned in reduced row echelon form."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    R, pivots = rref(rows, field, ncols)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for i, c in enumerate(pivots):
            v[c] = field.neg(R[i][f])
        basis.append(v)
    if not basis:
        return []
    B, _ = rref(basis, field, ncols)
    return [[field(x) for x in b] for b in B]


def reduce_vector(v: Sequence, R: Sequence[Sequence], pivots: Sequence[int], field: Field) -> list:
    """Remainder of ``v`` after clearing every pivot column of an RREF."""
    out = [field(x) for x in v]
    coeffs = [out[c] for c in pivots]
    for a, row in zip(coeffs, R):
        if field.is_zero(a):
            continue
        out = [field.sub(x, field.mul(a, y)) for x, y in zip(out, row)]
    return out


def solve(rows, rhs, field: Field):
    """One solution x of Mx = rhs (free variables zero), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, field, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [field.zero] * ncols
    for i, c in enumerate(pivots):
        x[c] = field(R[i][ncols])
    return x


def det(rows, field: Field):
    """Determinant by plain Gaussian elimination (small square matrices)."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InvalidArgument("determinant of a non-square matrix")
    if n == 0:
        return field.one
    if isinstance(field, PrimeField):
        p = field.p
        A = [[x % p for x in r] for r in rows]
        d = 1
        for c in range(n):
            i = next((k for k in range(c, n) if A[k][c]), None)
            if i is None:
                return 0
            if i != c:
                A[c], A[i] = A[i], A[c]
                d = -d
            piv = A[c][c]
            d = d * piv % p
            inv = pow(piv, p - 2, p)
            Ac = A[c]
            for k in range(c + 1, n):
                Ak = A[k]
                f = Ak[c] * inv % p
                if f:
                    for j in range(c + 1, n):
                        Ak[j] = (Ak[j] - f * Ac[j]) % p
        return d % p
    M = [[Fraction(x) for x in r] for r in rows]
    scale = Fraction(1)
    for r in M:
        d = lcm(*(x.denominator for x in r))
        scale /= d
        r[:] = [int(x * d) for x in r]
    sign = 1
    prev = 1
    for c in range(n):
        i = next((k for k in range(c, n) if M[k][c] != 0), None)
        if i is None:
            return Fraction(0)
        if i != c:
            M[c], M[i] = M[i], M[c]
            sign = -sign
        piv = M[c][c]
        for k in range(c + 1, n):
            for j in range(c + 1, n):
                M[k][j] = (piv * M[k][j] - M[k][c] * M[c][j]) // prev
            M[k][c] = 0
        prev = piv
    return Fraction(sign * M[n - 1][n - 1]) * scale


def matvec(rows, v, field: Field) -> list:
    out = []
    for r in rows:
        acc = field.zero
        for a, b in zip(r, v):
            acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return out
