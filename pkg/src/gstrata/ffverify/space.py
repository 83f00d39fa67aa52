"""
Exact enumeration of ``P(M_n(F_q))`` and ``B x B``-orbits in it.

Points are nonzero ``n x n`` matrices up to scalars, normalized so the first
nonzero entry (row-major) is 1.  A :class:`ProjectiveMatrixSpace` holds every
such point, sorted by the integer code of its entries, so point sets are
boolean masks over a fixed universe and are reproducible bit for bit.

>>> S = matrix_space(2, 2)
>>> len(S)
15
>>> len(bxb_orbit(ProjPoint.from_matrix([[1, 0], [0, 1]], 2)))
2
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .field import GuardError, PrimeField, check_matrix_guard
from .linalg import batch_det, batch_rank

__all__ = [
    "ProjPoint", "PointSet", "ProjectiveMatrixSpace", "matrix_space",
    "enumerate_proj_matrices", "variety_points", "bxb_orbit",
    "borel_generators", "group_generators",
    "rank_leq", "rank_eq", "wedge_zero", "column_zero",
]


@dataclass(frozen=True)
class ProjPoint:
    entries: tuple[int, ...]
    n: int
    q: int

    @classmethod
    def from_matrix(cls, mat, q: int) -> ProjPoint:
        flat = [int(x) % q for row in mat for x in row]
        lead = next((x for x in flat if x), None)
        if lead is None:
            raise ValueError("the zero matrix is not a projective point")
        inv = pow(lead, -1, q)
        n = len(mat)
        return cls(tuple(x * inv % q for x in flat), n, q)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.n, self.n)

    @property
    def hex(self) -> str:
        return "".join(format(x, "x") for x in self.entries)

    @property
    def rank(self) -> int:
        return int(batch_rank(self.matrix[None], self.q)[0])


class ProjectiveMatrixSpace:
    """All points of ``P(M_n(F_q))`` with vectorized group actions."""

    def __init__(self, n: int, q: int):
        check_matrix_guard(n, q)
        self.n, self.q = n, q
        self.field = PrimeField(q)
        N = n * n
        self._powers = q ** np.arange(N - 1, -1, -1, dtype=np.int64)
        blocks = []
        for lead in range(N):
            m = N - 1 - lead
            tail = np.arange(q ** m, dtype=np.int64)
            block = np.zeros((q ** m, N), dtype=np.int64)
            block[:, lead] = 1
            for k in range(m):
                block[:, N - 1 - k] = tail % q
                tail //= q
            blocks.append(block)
        pts = np.concatenate(blocks)
        codes = pts @ self._powers
        order = np.argsort(codes)
        self.points = pts[order]
        self.codes = codes[order]
        self._inv = np.array([0] + [pow(a, -1, q) for a in range(1, q)], dtype=np.int64)
        self._perm_cache: dict = {}

    def __len__(self):
        return len(self.codes)

    def __repr__(self):
        return f"ProjectiveMatrixSpace(n={self.n}, q={self.q})"

    @property
    def mats(self) -> np.ndarray:
        return self.points.reshape(-1, self.n, self.n)

    def normalize(self, flat: np.ndarray) -> np.ndarray:
        nz = flat != 0
        if not nz.any(axis=1).all():
            raise ValueError("zero matrix encountered")
        lead = flat[np.arange(len(flat)), nz.argmax(axis=1)]
        return flat * self._inv[lead][:, None] % self.q

    def index_of(self, flat: np.ndarray) -> np.ndarray:
        """Indices of (already normalized) flattened matrices."""
        codes = flat @ self._powers
        idx = np.searchsorted(self.codes, codes)
        if (idx >= len(self.codes)).any() or (self.codes[idx] != codes).any():
            raise ValueError("matrix not normalized or not in this space")
        return idx

    def index(self, point: ProjPoint) -> int:
        if (point.n, point.q) != (self.n, self.q):
            raise ValueError(f"point lives in P(M_{point.n}(F_{point.q})), not {self}")
        return int(self.index_of(np.array([point.entries], dtype=np.int64))[0])

    def point(self, i: int) -> ProjPoint:
        return ProjPoint(tuple(int(x) for x in self.points[i]), self.n, self.q)

    def transform(self, left=None, right=None) -> np.ndarray:
        """Index permutation of ``A -> left @ A @ right``."""
        M = self.mats
        if left is not None:
            M = np.asarray(left, dtype=np.int64) @ M % self.q
        if right is not None:
            M = M @ np.asarray(right, dtype=np.int64) % self.q
        return self.index_of(self.normalize(M.reshape(len(self), -1)))

    def action_perms(self, gens: Iterable[tuple]) -> list[np.ndarray]:
        """Permutations for generator pairs ``(g1, g2)`` acting by ``g1 A g2^{-1}``.

        The generator lists used here are closed under inverses up to the
        group they generate, so ``g2`` itself is used on the right; over a
        finite group this yields the same orbits.
        """
        out = []
        for g1, g2 in gens:
            key = (_key(g1), _key(g2))
            if key not in self._perm_cache:
                self._perm_cache[key] = self.transform(g1, g2)
            out.append(self._perm_cache[key])
        return out

    def orbit(self, seed: int, perms: list[np.ndarray]) -> np.ndarray:
        """Boolean mask of the orbit of point ``seed`` (BFS)."""
        mask = np.zeros(len(self), dtype=bool)
        mask[seed] = True
        frontier = np.array([seed])
        while len(frontier):
            nxt = np.unique(np.concatenate([p[frontier] for p in perms]))
            nxt = nxt[~mask[nxt]]
            mask[nxt] = True
            frontier = nxt
        return mask

    def orbit_labels(self, perms: list[np.ndarray]) -> np.ndarray:
        """Orbit label of every point; labels are numbered by smallest member."""
        N = len(self)
        src = np.concatenate([np.arange(N)] * len(perms))
        dst = np.concatenate(perms)
        graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(N, N))
        _, labels = connected_components(graph, directed=True, connection="weak")
        # relabel canonically
        first = {}
        out = np.empty(N, dtype=np.int64)
        for i, lab in enumerate(labels):
            out[i] = first.setdefault(lab, len(first))
        return out

    @cached_property
    def ranks(self) -> np.ndarray:
        return batch_rank(self.mats, self.q)

    def full(self) -> PointSet:
        return PointSet(self, np.ones(len(self), dtype=bool))

    def empty(self) -> PointSet:
        return PointSet(self, np.zeros(len(self), dtype=bool))


def _key(g):
    return None if g is None else tuple(map(tuple, np.asarray(g).tolist()))


@lru_cache(maxsize=8)
def matrix_space(n: int, q: int) -> ProjectiveMatrixSpace:
    return ProjectiveMatrixSpace(n, q)


class PointSet:
    """Exact finite set of points of one :class:`ProjectiveMatrixSpace`."""

    def __init__(self, space: ProjectiveMatrixSpace, mask: np.ndarray):
        self.space = space
        self.mask = np.asarray(mask, dtype=bool)

    def _check(self, other):
        if other.space is not self.space:
            raise ValueError("point sets from different spaces")

    def __and__(self, other):
        self._check(other)
        return PointSet(self.space, self.mask & other.mask)

    def __or__(self, other):
        self._check(other)
        return PointSet(self.space, self.mask | other.mask)

    def __sub__(self, other):
        self._check(other)
        return PointSet(self.space, self.mask & ~other.mask)

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.space is other.space and bool((self.mask == other.mask).all())

    def __len__(self):
        return int(self.mask.sum())

    def __bool__(self):
        return bool(self.mask.any())

    def __contains__(self, point: ProjPoint):
        return bool(self.mask[self.space.index(point)])

    def __iter__(self):
        for i in np.flatnonzero(self.mask):
            yield self.space.point(int(i))

    def __repr__(self):
        return f"PointSet({len(self)} points of {self.space})"

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def first(self) -> ProjPoint | None:
        idx = self.indices()
        return self.space.point(int(idx[0])) if len(idx) else None

    def hexes(self) -> list[str]:
        return [p.hex for p in self]


def enumerate_proj_matrices(n: int, q: int) -> PointSet:
    return matrix_space(n, q).full()


# -- predicates -----------------------------------------------------------

class Predicate:
    """Named vectorized predicate on a :class:`ProjectiveMatrixSpace`."""

    def __init__(self, name: str, fn: Callable[[ProjectiveMatrixSpace], np.ndarray]):
        self.name, self.fn = name, fn

    def __call__(self, space):
        return self.fn(space)

    def __repr__(self):
        return f"Predicate({self.name})"


def rank_leq(r: int) -> Predicate:
    return Predicate(f"rank<={r}", lambda S: S.ranks <= r)


def rank_eq(r: int) -> Predicate:
    return Predicate(f"rank=={r}", lambda S: S.ranks == r)


def wedge_zero(i: int, j: int) -> Predicate:
    """``C_i ∧ C_j = 0``: all 2x2 minors of columns i, j vanish (1-based)."""
    def fn(S):
        cols = S.mats[:, :, [i - 1, j - 1]]
        ok = np.ones(len(S), dtype=bool)
        for a in range(S.n):
            for b in range(a + 1, S.n):
                ok &= batch_det(cols[:, [a, b], :], S.q) == 0
        return ok
    return Predicate(f"C{i}^C{j}=0", fn)


def column_zero(i: int) -> Predicate:
    return Predicate(f"C{i}=0", lambda S: (S.mats[:, :, i - 1] == 0).all(axis=1))


def variety_points(n: int, q: int, predicate) -> PointSet:
    """Points satisfying ``predicate`` (a :class:`Predicate` or list of them, ANDed)."""
    S = matrix_space(n, q)
    preds = predicate if isinstance(predicate, (list, tuple)) else [predicate]
    mask = np.ones(len(S), dtype=bool)
    for p in preds:
        mask &= p(S)
    return PointSet(S, mask)


# -- group generators ----------------------------------------------------

def _elementary(n, i, j, t):
    g = np.eye(n, dtype=np.int64)
    g[i, j] = t
    return g


def _torus(n, q):
    if q == 2:
        return []
    gen = PrimeField(q).generator
    out = []
    for i in range(n):
        g = np.eye(n, dtype=np.int64)
        g[i, i] = gen
        out.append(g)
    return out


def borel_generators(n: int, q: int, opposite: bool = False) -> list[np.ndarray]:
    """Simple-root unipotents ``E_{i,i+1}(t)`` (lower if opposite) and torus generators."""
    gens = []
    for i in range(n - 1):
        for t in range(1, q):
            gens.append(_elementary(n, i + 1, i, t) if opposite else _elementary(n, i, i + 1, t))
    return gens + _torus(n, q)


def group_generators(n: int, q: int) -> list[np.ndarray]:
    gens = [_elementary(n, i, j, 1) for i in range(n) for j in range(n) if i != j]
    return gens + _torus(n, q)


def side_pairs(gens: list[np.ndarray]) -> list[tuple]:
    """Generator pairs ``(g, 1)`` and ``(1, g)`` for the two-sided action."""
    return [(g, None) for g in gens] + [(None, g) for g in gens]


_SIDES = {"B×B": False, "BxB": False, "B": False, "standard": False,
          "B⁻×B⁻": True, "B-xB-": True, "B-": True, "opposite": True}


def bxb_orbit(seed: ProjPoint, q: int | None = None, side: str = "standard") -> PointSet:
    """The ``B x B`` (or ``B⁻ x B⁻``) orbit of ``seed`` in ``P(M_n(F_q))``."""
    if q is not None and q != seed.q:
        raise GuardError(f"seed lives over F_{seed.q}, not F_{q}")
    if side not in _SIDES:
        raise ValueError(f"unknown side {side!r}")
    S = matrix_space(seed.n, seed.q)
    perms = S.action_perms(side_pairs(borel_generators(seed.n, seed.q, _SIDES[side])))
    return PointSet(S, S.orbit(S.index(seed), perms))


def gxg_orbit(seed: ProjPoint) -> PointSet:
    S = matrix_space(seed.n, seed.q)
    perms = S.action_perms(side_pairs(group_generators(seed.n, seed.q)))
    return PointSet(S, S.orbit(S.index(seed), perms))


def cell_labels(n: int, q: int, side: str = "standard") -> np.ndarray:
    """Label of the ``B x B`` (or ``B⁻ x B⁻``) orbit of every point."""
    if side not in _SIDES:
        raise ValueError(f"unknown side {side!r}")
    S = matrix_space(n, q)
    perms = S.action_perms(side_pairs(borel_generators(n, q, _SIDES[side])))
    return S.orbit_labels(perms)
