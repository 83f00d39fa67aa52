"""Coset projections and Richardson-cell index sets on flag varieties."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .weyl import (
    RootSystem, WeylElement, WeylError, bruhat_interval, bruhat_leq,
    min_coset_reps, parabolic_decompose, parabolic_subgroup, subset_str,
)

__all__ = [
    "ParabolicPair", "RichardsonIndex", "project_rep", "kls_fiber",
    "ht_cells_in_closure", "ht_opposite_cells_in_closure", "words_json",
]


@dataclass(frozen=True)
class ParabolicPair:
    """Standard parabolics ``P_Q ⊆ P_P`` given by simple-root subsets ``Q ⊆ P``."""
    group: RootSystem
    Q: frozenset[int]
    P: frozenset[int]

    def __post_init__(self):
        Q = self.group.check_subset(self.Q)
        P = self.group.check_subset(self.P)
        if not Q <= P:
            raise WeylError(f"Q={subset_str(Q)} is not contained in P={subset_str(P)}")
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "P", P)


@dataclass(frozen=True)
class RichardsonIndex:
    """Index ``(u, w, P)`` of the open Richardson cell ``BuP/P ∩ B⁻wP/P``.

    ``u`` is replaced by its minimal coset representative on construction.
    """
    u: WeylElement
    w: WeylElement
    P: frozenset[int]

    def __post_init__(self):
        P = self.u.group.check_subset(self.P)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "u", project_rep(self.u, P))


def project_rep(w: WeylElement, P: Iterable[int]) -> WeylElement:
    """Minimal representative ``w^P`` of ``w W_P``."""
    return parabolic_decompose(w, P)[0]


def _sorted(elts):
    return sorted(elts, key=lambda x: x.sort_key)


def kls_fiber(w: WeylElement, pair: ParabolicPair) -> list[WeylElement]:
    """``{w' in W^Q : (w')^P = w^P}``, sorted by reduced word.

    These index the pieces of the disjoint decomposition of ``R_u^w(P)``
    into projections of open Richardson cells of ``G/Q``.
    """
    if w.group is not pair.group:
        raise WeylError("element and parabolic pair live in different groups")
    target = project_rep(w, pair.P)
    return _sorted(
        x for x in min_coset_reps(pair.group, pair.Q) if project_rep(x, pair.P) == target
    )


def ht_cells_in_closure(I: Iterable[int], u: WeylElement, v: WeylElement):
    """Pairs ``(u', v')`` with ``u' <= u a`` and ``v' >= v a`` for some ``a`` in ``W_I``.

    In a toroidal embedding these index the ``B x B``-cells of a closed
    orbit that lie in the closure of the cell indexed by ``(u, v)``.
    """
    G = u.group
    W = G.elements()
    out = set()
    for a in parabolic_subgroup(G, I):
        lower = bruhat_interval(u * a)
        va = v * a
        upper = [y for y in W if bruhat_leq(va, y)]
        out.update((x, y) for x in lower for y in upper)
    return sorted(out, key=lambda p: (p[0].sort_key, p[1].sort_key))


def ht_opposite_cells_in_closure(I: Iterable[int], w: WeylElement, x: WeylElement):
    """Pairs ``(w', x')`` with ``w' >= w b`` and ``x' <= x b`` for some ``b`` in ``W_I``."""
    G = w.group
    W = G.elements()
    out = set()
    for b in parabolic_subgroup(G, I):
        wb = w * b
        upper = [y for y in W if bruhat_leq(wb, y)]
        lower = bruhat_interval(x * b)
        out.update((y, z) for y in upper for z in lower)
    return sorted(out, key=lambda p: (p[0].sort_key, p[1].sort_key))


def words_json(elts) -> str:
    """JSON array of reduced-word strings (pairs become nested arrays)."""
    def enc(x):
        if isinstance(x, WeylElement):
            return x.word_str()
        return [enc(y) for y in x]
    return json.dumps([enc(x) for x in elts])
