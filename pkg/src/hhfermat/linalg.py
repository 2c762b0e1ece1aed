"""Exact Gauss-Jordan elimination over Q(zeta_L).

Matrices are lists of rows of CycNum.  Pivots are chosen as the first nonzero
entry, so results are deterministic.
"""

from __future__ import annotations

from typing import Sequence

from .cyclotomic import CycNum, CyclotomicField


def rref(M: Sequence[Sequence[CycNum]], F: CyclotomicField) -> tuple[list[list[CycNum]], list[int]]:
    A = [list(r) for r in M]
    if not A:
        return A, []
    cols = len(A[0])
    piv: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv if x else x for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b if b else a for a, b in zip(A[i], A[r])]
        piv.append(c)
        r += 1
        if r == len(A):
            break
    return A, piv


def rank(M, F) -> int:
    return len(rref(M, F)[1])


def nullspace(M: Sequence[Sequence[CycNum]], F: CyclotomicField, ncols: int | None = None) -> list[list[CycNum]]:
    """Basis of {x : M x = 0}, one vector per free column."""
    if not M:
        n = ncols or 0
        return [[F.one() if i == j else F.zero() for i in range(n)] for j in range(n)]
    R, piv = rref(M, F)
    n = len(R[0])
    free = [c for c in range(n) if c not in piv]
    out = []
    for fc in free:
        v = [F.zero()] * n
        v[fc] = F.one()
        for row, pc in zip(R, piv):
            if row[fc]:
                v[pc] = -row[fc]
        out.append(v)
    return out


def solve(cols: Sequence[Sequence[CycNum]], b: Sequence[CycNum], F: CyclotomicField) -> list[CycNum] | None:
    """x with sum_j x_j cols[j] = b, or None if b is not in the span (cols assumed independent)."""
    m = len(b)
    if not cols:
        return [] if not any(b) else None
    aug = [[cols[j][i] for j in range(len(cols))] + [b[i]] for i in range(m)]
    R, piv = rref(aug, F)
    k = len(cols)
    if k in piv:
        return None
    x = [F.zero()] * k
    for row, pc in zip(R, piv):
        x[pc] = row[k]
    return x


class SpanSolver:
    """Repeated coordinate solves against a fixed independent column set."""

    def __init__(self, cols: Sequence[Sequence[CycNum]], F: CyclotomicField):
        self.F = F
        self.k = len(cols)
        m = len(cols[0]) if cols else 0
        # rref of [C | I] gives a left inverse on the pivot rows
        aug = [[cols[j][i] for j in range(self.k)] + [F.one() if t == i else F.zero() for t in range(m)] for i in range(m)]
        R, piv = rref(aug, F)
        if piv[: self.k] != list(range(self.k)):
            raise ValueError("columns are not independent")
        self.left = [row[self.k :] for row in R[: self.k]]
        self.rest = [row[self.k :] for row in R[self.k :]]

    def coords(self, b: Sequence[CycNum]) -> list[CycNum] | None:
        def dot(row):
            s = self.F.zero()
            for a, x in zip(row, b):
                if a and x:
                    s = s + a * x
            return s

        if any(dot(r) for r in self.rest):
            return None
        return [dot(r) for r in self.left]
