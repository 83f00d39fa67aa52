"""
Orbit model of a group embedding.

Each ``G x G``-orbit is described by a triple ``(I, J, K)`` of simple-root
subsets with ``I = J ⊔ K`` and ``J ⟂ K``.  Inside an orbit the ``B x B``-cells
are indexed by pairs ``(u, v)`` of Weyl group elements; two pairs give the
same cell iff they agree on ``u^I``, ``v^I`` and ``u_K v_K^{-1}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Optional

from .weyl import (
    RootSystem, WeylElement, WeylError, build_root_system, bruhat_leq,
    min_coset_reps, orthogonal, parabolic_subgroup, subset_str, subsets,
    triple_decompose,
)

__all__ = [
    "OrbitDescriptor", "EmbeddingModel", "CellIndex", "StratumIndex", "ModelError",
    "make_descriptor", "builtin_model", "canonicalize_cell", "enumerate_strata",
    "minimal_toroidal_cover", "closed_orbit_criterion", "toroidal_cover_map",
]

STANDARD, OPPOSITE = "standard", "opposite"


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class OrbitDescriptor:
    name: str
    group: RootSystem = field(repr=False)
    I: frozenset[int]
    J: frozenset[int]
    K: frozenset[int]
    toroidal: bool = False

    def to_dict(self):
        return {
            "name": self.name,
            "I": sorted(self.I), "J": sorted(self.J), "K": sorted(self.K),
            "toroidal": self.toroidal,
        }

    def same_shape(self, other: OrbitDescriptor) -> bool:
        return (self.I, self.J, self.K) == (other.I, other.J, other.K)


def make_descriptor(group: RootSystem, name: str, I, J, K, toroidal: bool = False) -> OrbitDescriptor:
    """Validate ``I = J ⊔ K``, ``J ⟂ K`` and ``toroidal => J = ∅``."""
    I, J, K = (group.check_subset(s) for s in (I, J, K))
    if J & K:
        raise ModelError(f"{name}: J and K intersect in {subset_str(J & K)}")
    if I != J | K:
        raise ModelError(f"{name}: I={subset_str(I)} is not J ∪ K={subset_str(J | K)}")
    for a in sorted(J):
        for b in sorted(K):
            if group.cartan_matrix[a - 1][b - 1] != 0:
                raise ModelError(f"{name}: roots a{a} (in J) and a{b} (in K) are not orthogonal")
    if toroidal and J:
        raise ModelError(f"{name}: toroidal orbit must have J empty, got {subset_str(J)}")
    return OrbitDescriptor(name, group, I, J, K, toroidal)


@dataclass(frozen=True)
class EmbeddingModel:
    """Finite list of orbits with the closure order given by its Hasse edges.

    An edge ``(a, b)`` means orbit ``a`` is covered by ``b`` (``a ⊆ closure(b)``).
    """
    name: str
    group: RootSystem
    orbits: tuple[OrbitDescriptor, ...]
    closure_edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        names = [o.name for o in self.orbits]
        if len(set(names)) != len(names):
            raise ModelError("duplicate orbit names")
        for a, b in self.closure_edges:
            if a not in names or b not in names:
                raise ModelError(f"closure edge ({a}, {b}) mentions an unknown orbit")
        below = self._below()
        for a in names:
            if any(a in below[b] and b in below[a] for b in names if b != a):
                raise ModelError("closure order has a cycle")
        maximal = [a for a in names if not any(a in below[b] and a != b for b in names)]
        if len(maximal) != 1:
            raise ModelError(f"expected one dense orbit, found maximal orbits {maximal}")

    def _below(self):
        down = {o.name: {o.name} for o in self.orbits}
        changed = True
        while changed:
            changed = False
            for a, b in self.closure_edges:
                new = down[a] - down[b]
                if new:
                    down[b] |= new
                    changed = True
        return down

    def leq(self, a: str, b: str) -> bool:
        """Orbit ``a`` lies in the closure of orbit ``b``."""
        return a in self._below()[b]

    def orbit(self, key) -> OrbitDescriptor:
        for o in self.orbits:
            if o.name == str(key):
                return o
        raise ModelError(f"model {self.name} has no orbit {key!r}; "
                         f"known: {[o.name for o in self.orbits]}")

    @property
    def dense_orbit(self) -> OrbitDescriptor:
        below = self._below()
        return next(o for o in self.orbits if len(below[o.name]) == len(self.orbits))

    def to_dict(self):
        return {
            "name": self.name,
            "cartan_type": self.group.cartan_type,
            "orbits": [o.to_dict() for o in self.orbits],
            "closure_edges": [list(e) for e in self.closure_edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dot(self) -> str:
        lines = [f'digraph "{self.name}" {{']
        lines += [f'  "{o.name}";' for o in self.orbits]
        lines += [f'  "{a}" -> "{b}";' for a, b in self.closure_edges]
        lines.append("}")
        return "\n".join(lines) + "\n"


def _proj_matrices(n: int) -> EmbeddingModel:
    if n < 2:
        raise ModelError("proj_matrices needs n >= 2")
    G = build_root_system(f"A{n - 1}")
    orbits = []
    for r in range(1, n + 1):
        I = G.delta - {r}
        K = frozenset(range(1, r))
        J = frozenset(range(r + 1, n))
        orbits.append(make_descriptor(G, f"rank{r}", I, J, K, toroidal=(n == 2)))
    edges = tuple((f"rank{r}", f"rank{r + 1}") for r in range(1, n))
    return EmbeddingModel(f"proj_matrices{n}", G, tuple(orbits), edges)


def _wonderful_name(K) -> str:
    return "K" + subset_str(K)


def _wonderful(cartan_type: str) -> EmbeddingModel:
    G = build_root_system(cartan_type)
    orbits = [make_descriptor(G, _wonderful_name(K), K, (), K, toroidal=True) for K in subsets(G)]
    edges = tuple(
        (_wonderful_name(K), _wonderful_name(K | {i}))
        for K in subsets(G) for i in G.simple_roots if i not in K
    )
    return EmbeddingModel(f"wonderful{G.cartan_type}", G, tuple(orbits), edges)


def builtin_model(name: str, arg) -> EmbeddingModel:
    """``builtin_model("proj_matrices", n)`` or ``builtin_model("wonderful", "A2")``."""
    if name == "proj_matrices":
        return _proj_matrices(int(arg))
    if name == "wonderful":
        try:
            return _wonderful(str(arg))
        except WeylError as exc:
            raise ModelError(str(exc)) from None
    raise ModelError(f"unknown model {name!r}; expected 'proj_matrices' or 'wonderful'")


def toroidal_cover_map(n: int) -> dict[str, str]:
    """Orbit map of the wonderful compactification of PGL_n onto ``P(M_n)``.

    The orbit with subset ``K~`` goes to the rank-``r`` orbit where ``r`` is the
    first simple root missing from ``K~`` (``r = n`` if none).
    """
    G = build_root_system(f"A{n - 1}")
    out = {}
    for K in subsets(G):
        r = next((i for i in G.simple_roots if i not in K), n)
        out[_wonderful_name(K)] = f"rank{r}"
    return out


def minimal_toroidal_cover(d: OrbitDescriptor) -> OrbitDescriptor:
    """Descriptor of the minimal orbit over ``d`` in a toroidal cover: ``I~ = K~ = K``."""
    if d.toroidal:
        return d
    return make_descriptor(d.group, d.name + "~", d.K, (), d.K, toroidal=True)


@dataclass(frozen=True)
class CellIndex:
    orbit: OrbitDescriptor
    u: WeylElement
    v: WeylElement
    side: str = STANDARD

    def key(self):
        return (self.orbit.name, self.side, self.u.perm, self.v.perm)

    def to_dict(self):
        return {"orbit": self.orbit.name, "u": self.u.word_str(), "v": self.v.word_str(),
                "side": self.side}


def canonicalize_cell(orbit: OrbitDescriptor, u: WeylElement, v: WeylElement,
                      side: str = STANDARD) -> CellIndex:
    """Canonical pair ``(u^I (u_K v_K^{-1}), v^I)`` for the cell of ``(u, v)``.

    The same formula serves the opposite side, with ``(w, x)`` in place of ``(u, v)``.
    """
    if side not in (STANDARD, OPPOSITE):
        raise ModelError(f"side must be {STANDARD!r} or {OPPOSITE!r}")
    uI, _, uK = triple_decompose(u, orbit.J, orbit.K)
    vI, _, vK = triple_decompose(v, orbit.J, orbit.K)
    return CellIndex(orbit, uI * (uK * vK.inverse()), vI, side)


@dataclass(frozen=True)
class StratumIndex:
    orbit: OrbitDescriptor
    u: WeylElement
    v: WeylElement
    w: WeylElement
    x: WeylElement

    def words(self):
        return tuple(e.word_str() for e in (self.u, self.v, self.w, self.x))

    def to_dict(self):
        u, v, w, x = self.words()
        return {"orbit": self.orbit.name, "u": u, "v": v, "w": w, "x": x}


def _normal_forms(G: RootSystem, orbit: OrbitDescriptor):
    """Elements ``y = y^I y_K`` (``y_J = e``) and ``W^I``."""
    reps = min_coset_reps(G, orbit.I)
    wk = parabolic_subgroup(G, orbit.K)
    free = sorted({a * b for a in reps for b in wk}, key=lambda y: y.sort_key)
    return sorted(reps, key=lambda y: y.sort_key), free


def enumerate_strata(model: EmbeddingModel,
                     nonempty: Optional[Callable[..., Optional[bool]]] = None) -> list[StratumIndex]:
    """All normal-form tuples ``(orbit, u, v, w, x)``.

    ``u, x`` range over ``W^I`` and ``v, w`` over elements with trivial
    ``J``-component.  If ``nonempty`` is given it is called as
    ``nonempty(orbit, u, v, w, x)``; tuples for which it returns ``False``
    are dropped (``None`` means unknown and keeps the tuple).
    """
    G = model.group
    out = []
    for orbit in model.orbits:
        reps, free = _normal_forms(G, orbit)
        for u, v, w, x in product(reps, free, free, reps):
            s = StratumIndex(orbit, u, v, w, x)
            if nonempty is not None and nonempty(orbit, u, v, w, x) is False:
                continue
            out.append(s)
    return out


def closed_orbit_criterion(orbit: OrbitDescriptor, u, v, w, x) -> Optional[bool]:
    """Nonemptiness when the minimal toroidal cover is ``G/B x G/B⁻`` (``K = ∅``).

    The stratum is then a projection of ``R_u^w x R'_v^x``, which is nonempty
    iff ``w <= u`` and ``v <= x``.  Returns ``None`` when ``K`` is nonempty.
    """
    if orbit.K:
        return None
    return bruhat_leq(w, u) and bruhat_leq(v, x)


def strata_json(strata: Iterable[StratumIndex]) -> str:
    return json.dumps([s.to_dict() for s in strata])


def check_cover_inclusions(n: int) -> list[str]:
    """Check ``K ⊆ K~``, ``J~ ⊆ J``, ``I~ ⊆ I`` along the cover map; return failures."""
    proj = builtin_model("proj_matrices", n)
    won = builtin_model("wonderful", f"A{n - 1}")
    fails = []
    for src, dst in toroidal_cover_map(n).items():
        t, d = won.orbit(src), proj.orbit(dst)
        if not (d.K <= t.K and t.J <= d.J and t.I <= d.I):
            fails.append(f"{src} -> {dst}")
    return fails
