"""Small exact linear algebra over F_p, scalar and batched."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

import numpy as np


def rref(rows, p: int) -> tuple[tuple[int, ...], ...]:
    """Reduced row echelon form, zero rows dropped.  Canonical per row space."""
    A = [[x % p for x in r] for r in rows]
    out = []
    ncols = len(A[0]) if A else 0
    pivot_row = 0
    for c in range(ncols):
        piv = next((r for r in range(pivot_row, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[pivot_row], A[piv] = A[piv], A[pivot_row]
        inv = pow(A[pivot_row][c], -1, p)
        A[pivot_row] = [x * inv % p for x in A[pivot_row]]
        for r in range(len(A)):
            if r != pivot_row and A[r][c]:
                f = A[r][c]
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[pivot_row])]
        pivot_row += 1
    for r in A[:pivot_row]:
        out.append(tuple(r))
    return tuple(out)


def rank(rows, p: int) -> int:
    return len(rref(rows, p))


def nullspace(rows, p: int) -> list[tuple[int, ...]]:
    """Basis of ``{x : A x = 0}``."""
    R = rref(rows, p)
    ncols = len(rows[0])
    pivots = [next(i for i, x in enumerate(r) if x) for r in R]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for r, pc in zip(R, pivots):
            x[pc] = (-r[f]) % p
        basis.append(tuple(x))
    return basis


def column_span(mat, cols, p: int):
    """RREF basis of the span of the given columns of ``mat``."""
    return rref([[row[c] for row in mat] for c in cols], p)


def mat_mul(A, B, p: int):
    return [[sum(a * b for a, b in zip(row, col)) % p for col in zip(*B)] for row in A]


def det(A, p: int) -> int:
    n = len(A)
    return int(batch_det(np.array([A], dtype=np.int64), p)[0]) if n else 1


@lru_cache(maxsize=None)
def _signed_perms(k: int):
    out = []
    for perm in permutations(range(k)):
        inv = sum(1 for a, b in combinations(perm, 2) if a > b)
        out.append((perm, -1 if inv % 2 else 1))
    return out


def batch_det(mats: np.ndarray, p: int) -> np.ndarray:
    """Determinants mod p of a stack ``(M, k, k)``, by permutation expansion."""
    M, k, _ = mats.shape
    acc = np.zeros(M, dtype=np.int64)
    for perm, sign in _signed_perms(k):
        term = np.ones(M, dtype=np.int64)
        for i, j in enumerate(perm):
            term = term * mats[:, i, j] % p
        acc = (acc + sign * term) % p
    return acc


def batch_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack ``(M, r, c)`` of small matrices over F_p (via minors)."""
    M, r, c = mats.shape
    out = np.zeros(M, dtype=np.int64)
    for k in range(1, min(r, c) + 1):
        nz = np.zeros(M, dtype=bool)
        for rows in combinations(range(r), k):
            sub_r = mats[:, rows, :]
            for cols in combinations(range(c), k):
                nz |= batch_det(sub_r[:, :, cols], p) != 0
        out[nz] = k
    return out
