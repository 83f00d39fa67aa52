"""Points of partial flag varieties ``GL_n/P_J`` over F_q."""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .bruhat import bruhat_cell_of, opposite_schubert_cell_of, type_a
from .field import GuardError, check_prime
from .linalg import batch_det, column_span
from ..richardson import project_rep

__all__ = ["FlagPoint", "general_linear", "block_dims", "flag_variety", "project_flag"]

# (flag of subspaces, one per block boundary) -- each subspace an RREF basis
FlagPoint = tuple


def block_dims(n: int, J) -> tuple[int, ...]:
    """Dimensions ``d`` of the subspaces kept by ``P_J``: ``d`` with ``α_d ∉ J``."""
    return tuple(d for d in range(1, n) if d not in set(J))


@lru_cache(maxsize=None)
def general_linear(n: int, q: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    check_prime(q)
    if q ** (n * n) > 1 << 20:
        raise GuardError(f"GL_{n}(F_{q}) too large to enumerate")
    flat = np.array(list(product(range(q), repeat=n * n)), dtype=np.int64)
    mats = flat.reshape(-1, n, n)
    keep = mats[batch_det(mats, q) != 0]
    return tuple(tuple(map(tuple, m)) for m in keep.tolist())


def flag_of(g, dims, q: int) -> FlagPoint:
    return tuple(column_span(g, range(d), q) for d in dims)


def project_flag(flag: FlagPoint, dims_from, dims_to) -> FlagPoint:
    pos = {d: k for k, d in enumerate(dims_from)}
    return tuple(flag[pos[d]] for d in dims_to)


@lru_cache(maxsize=None)
def flag_variety(n: int, q: int, J: frozenset) -> dict:
    """Map each point of ``GL_n/P_J`` to ``(B-cell, B⁻-cell)`` indices in ``W^J``.

    The cell of ``gP`` is ``w^J`` where ``g ∈ BwB`` (resp. ``B⁻wB``), which
    does not depend on the representative ``g``.
    """
    dims = block_dims(n, J)
    out = {}
    for g in general_linear(n, q):
        key = flag_of(g, dims, q)
        if key not in out:
            out[key] = (project_rep(bruhat_cell_of(g, q), J),
                        project_rep(opposite_schubert_cell_of(g, q), J))
    return out
