"""Bruhat decomposition of invertible matrices over F_q by pivot elimination."""

from __future__ import annotations

import numpy as np

from ..weyl import RootSystem, WeylElement, build_root_system, longest_element

__all__ = [
    "bruhat_cell_of", "opposite_bruhat_cell_of", "opposite_schubert_cell_of",
    "perm_matrix", "type_a",
]


def type_a(n: int) -> RootSystem:
    """Weyl group of GL_n, i.e. type ``A_{n-1}``."""
    return build_root_system(f"A{n - 1}")


def perm_matrix(w: WeylElement) -> np.ndarray:
    """Permutation matrix with ``w e_j = e_{w(j)}``."""
    n = len(w.perm)
    m = np.zeros((n, n), dtype=np.int64)
    for j, i in enumerate(w.perm):
        m[i - 1, j] = 1
    return m


def bruhat_cell_of(g, q: int) -> WeylElement:
    """The ``w`` with ``g ∈ B w B`` (``B`` upper triangular).

    Column by column, the lowest nonzero entry is the pivot; it clears its
    column upwards (row operations by ``B``) and its row to the right
    (column operations by ``B``).
    """
    A = [[int(x) % q for x in row] for row in np.asarray(g).tolist()]
    n = len(A)
    perm = [0] * n
    used = set()
    for j in range(n):
        i = next((i for i in range(n - 1, -1, -1) if A[i][j] and i not in used), None)
        if i is None:
            raise ValueError("singular matrix has no Bruhat cell")
        used.add(i)
        perm[j] = i + 1
        inv = pow(A[i][j], -1, q)
        for k in range(i):
            if A[k][j]:
                f = A[k][j] * inv % q
                A[k] = [(a - f * b) % q for a, b in zip(A[k], A[i])]
        for c in range(j + 1, n):
            if A[i][c]:
                f = A[i][c] * inv % q
                for r in range(n):
                    A[r][c] = (A[r][c] - f * A[r][j]) % q
    return WeylElement(type_a(n), tuple(perm))


def _flip(g):
    return np.asarray(g)[::-1]


def opposite_schubert_cell_of(g, q: int) -> WeylElement:
    """The ``w`` with ``g ∈ B⁻ w B``: ``w0 g ∈ B (w0 w) B``."""
    w = bruhat_cell_of(_flip(g), q)
    return longest_element(w.group) * w


def opposite_bruhat_cell_of(g, q: int) -> WeylElement:
    """The ``w`` with ``g ∈ B⁻ w B⁻``: ``w0 g w0 ∈ B (w0 w w0) B``."""
    w = bruhat_cell_of(np.asarray(g)[::-1, ::-1], q)
    w0 = longest_element(w.group)
    return w0 * w * w0
