"""Dense exact linear algebra over a :class:`Field`, on matrices of element codes.

Matrices are lists of rows. Pivoting always takes the first usable row for
the leftmost column, so results are reproducible.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .field import Field

Matrix = list[list[int]]


def identity(F: Field, n: int) -> Matrix:
    one = F.one_code
    return [[one if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(n: int, m: Optional[int] = None) -> Matrix:
    return [[0] * (n if m is None else m) for _ in range(n)]


def matmul(F: Field, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*B))
    if F.m == 1:
        p = F.p
        return [[sum(a * b for a, b in zip(row, col)) % p for col in cols] for row in A]
    out = []
    for row in A:
        new = []
        for col in cols:
            acc = 0
            for a, b in zip(row, col):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            new.append(acc)
        out.append(new)
    return out


def matpow(F: Field, A: Sequence[Sequence[int]], e: int) -> Matrix:
    result = identity(F, len(A))
    base = [list(r) for r in A]
    while e:
        if e & 1:
            result = matmul(F, result, base)
        base = matmul(F, base, base)
        e >>= 1
    return result


def matadd(F: Field, A, B) -> Matrix:
    return [[F.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def matsub(F: Field, A, B) -> Matrix:
    return [[F.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def matscale(F: Field, A, c: int) -> Matrix:
    return [F.scale(r, c) for r in A]


def transpose(A) -> Matrix:
    return [list(c) for c in zip(*A)]


def rref(F: Field, rows: Sequence[Sequence[int]], ncols: Optional[int] = None):
    """Reduced row echelon form. Returns ``(nonzero_rows, pivot_columns)``."""
    work = [list(r) for r in rows]
    if ncols is None:
        ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        lead = work[r][c]
        if lead != F.one_code:
            work[r] = F.scale(work[r], F.inv(lead))
        prow = work[r]
        for i in range(len(work)):
            if i != r and work[i][c]:
                work[i] = F.axpy(work[i], work[i][c], prow)
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(F: Field, rows, ncols: Optional[int] = None) -> int:
    return len(rref(F, rows, ncols)[1])


def kernel(F: Field, rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis of {x : M x = 0}, returned as the rows of a matrix in reduced echelon form."""
    reduced, pivots = rref(F, rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        v[free] = F.one_code
        for row, pc in zip(reduced, pivots):
            if row[free]:
                v[pc] = F.neg(row[free])
        basis.append(v)
    if not basis:
        return []
    return rref(F, basis, ncols)[0]


def solve(F: Field, rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> Optional[list[int]]:
    """One solution x of M x = rhs, or None when inconsistent (free variables set to 0)."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(F, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [0] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[ncols]
    return x


def inverse(F: Field, A: Sequence[Sequence[int]]) -> Matrix:
    n = len(A)
    aug = [list(r) + e for r, e in zip(A, identity(F, n))]
    reduced, pivots = rref(F, aug, n)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in reduced]


def is_scalar(A: Sequence[Sequence[int]]) -> bool:
    n = len(A)
    return all(A[i][j] == (A[0][0] if i == j else 0) for i in range(n) for j in range(n))


def in_span(F: Field, reduced: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership of v in the row space of a matrix already in reduced echelon form."""
    w = list(v)
    for row in reduced:
        pc = next(k for k, x in enumerate(row) if x)
        if w[pc]:
            w = F.axpy(w, w[pc], row)
    return not any(w)
