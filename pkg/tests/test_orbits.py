import json
from itertools import product

import numpy as np
import pytest

from gstrata.ffverify.checks import cell_oracle, cell_seed
from gstrata.ffverify.space import bxb_orbit, matrix_space
from gstrata.orbits import (
    EmbeddingModel, ModelError, OPPOSITE, STANDARD, builtin_model, canonicalize_cell,
    check_cover_inclusions, closed_orbit_criterion, enumerate_strata, make_descriptor,
    minimal_toroidal_cover, strata_json, toroidal_cover_map,
)
from gstrata.weyl import (
    build_root_system, orthogonal, parabolic_decompose, subsets, triple_decompose,
)


def test_make_descriptor_valid_and_invalid():
    A2, A3 = build_root_system("A2"), build_root_system("A3")
    make_descriptor(A2, "closed", (), (), (), toroidal=True)
    make_descriptor(A3, "ok", {1, 3}, {3}, {1})
    with pytest.raises(ModelError, match="a2.*a1|a1.*a2"):
        make_descriptor(A2, "bad", {1, 2}, {2}, {1})
    with pytest.raises(ModelError, match="J ∪ K"):
        make_descriptor(A3, "bad", {1}, {3}, ())
    with pytest.raises(ModelError, match="intersect"):
        make_descriptor(A3, "bad", {1}, {1}, {1})
    with pytest.raises(ModelError, match="toroidal"):
        make_descriptor(A3, "bad", {3}, {3}, (), toroidal=True)


def test_proj_matrices_descriptors():
    m2 = builtin_model("proj_matrices", 2)
    assert [(o.name, o.I, o.J, o.K) for o in m2.orbits] == [
        ("rank1", frozenset(), frozenset(), frozenset()),
        ("rank2", frozenset({1}), frozenset(), frozenset({1})),
    ]
    m3 = builtin_model("proj_matrices", 3)
    r1, r2, r3 = m3.orbits
    assert (r1.I, r1.J, r1.K) == ({2}, {2}, set())
    assert (r2.I, r2.J, r2.K) == ({1}, set(), {1})
    assert (r3.I, r3.J, r3.K) == ({1, 2}, set(), {1, 2})
    assert m3.dense_orbit.name == "rank3"
    assert m3.leq("rank1", "rank3") and not m3.leq("rank3", "rank1")
    with pytest.raises(ModelError):
        builtin_model("proj_matrices", 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_proj_matrices_descriptor_invariants(n):
    m = builtin_model("proj_matrices", n)
    for o in m.orbits:
        assert o.I == o.J | o.K and not o.J & o.K
        assert orthogonal(m.group, o.J, o.K)


def test_wonderful_models():
    A1 = builtin_model("wonderful", "A1")
    A2 = builtin_model("wonderful", "A2")
    assert len(A1.orbits) == 2 and len(A2.orbits) == 4
    assert A2.dense_orbit.name == "K{1,2}"
    names = [o.name for o in A2.orbits]
    for a, b in product(names, names):
        Ka = {int(c) for c in a[2:-1].split(",") if c}
        Kb = {int(c) for c in b[2:-1].split(",") if c}
        assert A2.leq(a, b) == (Ka <= Kb)
    for o in A2.orbits:
        assert o.toroidal and o.I == o.K and not o.J
    with pytest.raises(ModelError):
        builtin_model("wonderful", "Q3")
    with pytest.raises(ModelError):
        builtin_model("nope", 2)


def test_model_validation():
    G = build_root_system("A1")
    a = make_descriptor(G, "a", (), (), ())
    b = make_descriptor(G, "b", {1}, (), {1})
    with pytest.raises(ModelError, match="unknown"):
        EmbeddingModel("m", G, (a, b), (("a", "c"),))
    with pytest.raises(ModelError, match="cycle"):
        EmbeddingModel("m", G, (a, b), (("a", "b"), ("b", "a")))
    with pytest.raises(ModelError, match="dense"):
        EmbeddingModel("m", G, (a, b), ())


def test_model_json_and_dot():
    m = builtin_model("wonderful", "A1")
    d = json.loads(m.to_json())
    assert set(d) == {"name", "cartan_type", "orbits", "closure_edges"}
    assert d["cartan_type"] == "A1"
    assert d["closure_edges"] == [["K{}", "K{1}"]]
    assert set(d["orbits"][0]) == {"name", "I", "J", "K", "toroidal"}
    dot = m.to_dot()
    assert dot.count("->") == 1 and dot.startswith("digraph")


# -- canonical cells -------------------------------------------------------------

def test_canonicalize_examples():
    m3 = builtin_model("proj_matrices", 3)
    G = m3.group
    c = canonicalize_cell(m3.orbit("rank1"), G.element("s2"), G.element("s1.s2"))
    assert (c.u.word_str(), c.v.word_str()) == ("e", "s1")
    assert canonicalize_cell(m3.orbit("rank2"), G.identity, G.identity).u == G.identity
    closed = builtin_model("wonderful", "A2").orbit("K{}")
    for u, v in product(G.elements(), repeat=2):
        got = canonicalize_cell(closed, u, v)
        assert (got.u, got.v) == (u, v)
    with pytest.raises(ModelError):
        canonicalize_cell(closed, G.identity, G.identity, side="sideways")


def _predicate_data(orbit, u, v):
    """What the equality criterion compares: ``u^I``, ``v^I`` and ``u_K v_K^{-1}``."""
    uI, _, uK = triple_decompose(u, orbit.J, orbit.K)
    vI, _, vK = triple_decompose(v, orbit.J, orbit.K)
    return uI, vI, uK * vK.inverse()


def _all_orbits():
    for n in (2, 3, 4):
        yield from builtin_model("proj_matrices", n).orbits
    for t in ("A1", "A2", "B2", "A3"):
        yield from builtin_model("wonderful", t).orbits
    A3 = build_root_system("A3")
    yield make_descriptor(A3, "mixed", {1, 3}, {3}, {1})


@pytest.mark.parametrize("orbit", list(_all_orbits()), ids=lambda o: f"{o.group.cartan_type}-{o.name}")
def test_canonicalize_idempotent_and_class_constant(orbit):
    G = orbit.group
    W = G.elements()
    keys = {}
    for u, v in product(W, W):
        c = canonicalize_cell(orbit, u, v)
        again = canonicalize_cell(orbit, c.u, c.v)
        assert again.key() == c.key()
        # canonical form: u_J = v_J = v_K = e
        _, uJ, _ = triple_decompose(c.u, orbit.J, orbit.K)
        _, vJ, vK = triple_decompose(c.v, orbit.J, orbit.K)
        assert uJ.is_identity() and vJ.is_identity() and vK.is_identity()
        keys[(u, v)] = c.key()
    data = {p: _predicate_data(orbit, *p) for p in keys}
    pairs = list(keys)
    for a in pairs:
        for b in pairs:
            assert (keys[a] == keys[b]) == (data[a] == data[b])


# -- strata ------------------------------------------------------------------------

def test_strata_counts_small():
    A1 = builtin_model("wonderful", "A1")
    strata = enumerate_strata(A1)
    by_orbit = {}
    for s in strata:
        by_orbit[s.orbit.name] = by_orbit.get(s.orbit.name, 0) + 1
    assert by_orbit == {"K{}": 16, "K{1}": 4}
    p2 = enumerate_strata(builtin_model("proj_matrices", 2))
    assert sorted(s.words() for s in p2) == sorted(s.words() for s in strata)
    rows = json.loads(strata_json(strata))
    assert set(rows[0]) == {"orbit", "u", "v", "w", "x"}


@pytest.mark.parametrize("model", [("wonderful", "A2"), ("wonderful", "B2"),
                                   ("proj_matrices", 3), ("proj_matrices", 4)])
def test_strata_normal_form_and_uniqueness(model):
    m = builtin_model(*model)
    strata = enumerate_strata(m)
    seen = set()
    for s in strata:
        I, J, K = s.orbit.I, s.orbit.J, s.orbit.K
        assert parabolic_decompose(s.u, I)[0] == s.u
        assert parabolic_decompose(s.x, I)[0] == s.x
        for y in (s.v, s.w):
            assert triple_decompose(y, J, K)[1].is_identity()
        key = (s.orbit.name, canonicalize_cell(s.orbit, s.u, s.v).key(),
               canonicalize_cell(s.orbit, s.w, s.x, OPPOSITE).key())
        assert key not in seen
        seen.add(key)


def test_closed_orbit_criterion_examples():
    A1 = builtin_model("wonderful", "A1")
    G = A1.group
    e, s = G.identity, G.s(1)
    closed = A1.orbit("K{}")
    assert closed_orbit_criterion(closed, s, e, e, s) is True
    assert closed_orbit_criterion(closed, e, e, s, e) is False
    assert closed_orbit_criterion(A1.orbit("K{1}"), e, e, e, e) is None
    kept = enumerate_strata(A1, closed_orbit_criterion)
    assert len(kept) == 9 + 4


@pytest.mark.parametrize("q", [2, 3])
def test_nonempty_strata_partition_p3(q):
    """In P(M_2) the nonempty strata are disjoint and cover every point."""
    model = builtin_model("proj_matrices", 2)
    S = matrix_space(2, q)
    oracle = cell_oracle(2, q)
    cover = np.zeros(len(S), dtype=int)
    nonempty = 0
    for s in enumerate_strata(model):
        r = int(s.orbit.name[-1])
        mask = (bxb_orbit(cell_seed(2, r, s.u, s.v, q), q, STANDARD).mask
                & bxb_orbit(cell_seed(2, r, s.w, s.x, q), q, OPPOSITE).mask)
        assert bool(mask.any()) == oracle(s.orbit, s.u, s.v, s.w, s.x)
        nonempty += bool(mask.any())
        cover += mask
    assert (cover == 1).all()
    assert len(S) == q ** 3 + q ** 2 + q + 1
    assert nonempty == 13


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2)])
def test_closed_orbit_criterion_matches_points(n, q):
    model = builtin_model("proj_matrices", n)
    oracle = cell_oracle(n, q)
    checked = 0
    for s in enumerate_strata(model):
        crit = closed_orbit_criterion(s.orbit, s.u, s.v, s.w, s.x)
        if crit is not None:
            assert crit == oracle(s.orbit, s.u, s.v, s.w, s.x)
            checked += 1
    assert checked == 6 ** 4 // 16 if n == 3 else checked == 16


# -- toroidal covers ------------------------------------------------------------------

def test_minimal_toroidal_cover():
    m3 = builtin_model("proj_matrices", 3)
    r1 = minimal_toroidal_cover(m3.orbit("rank1"))
    assert (r1.I, r1.J, r1.K, r1.toroidal) == (set(), set(), set(), True)
    r2 = minimal_toroidal_cover(m3.orbit("rank2"))
    assert (r2.I, r2.J, r2.K) == ({1}, set(), {1})
    t = builtin_model("wonderful", "A2").orbit("K{1}")
    assert minimal_toroidal_cover(t) is t


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_cover_inclusions(n):
    assert check_cover_inclusions(n) == []
    cmap = toroidal_cover_map(n)
    proj = builtin_model("proj_matrices", n)
    won = builtin_model("wonderful", f"A{n - 1}")
    # the minimal preimage of each orbit has K~ = K
    for d in proj.orbits:
        pre = [won.orbit(k) for k, v in cmap.items() if v == d.name]
        smallest = min(pre, key=lambda o: len(o.K))
        assert smallest.K == d.K == minimal_toroidal_cover(d).K
    # the cover map is order preserving
    for a, b in product(won.orbits, won.orbits):
        if won.leq(a.name, b.name):
            assert proj.leq(cmap[a.name], cmap[b.name])
