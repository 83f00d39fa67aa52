"""
Finite Weyl groups of classical type, realized as signed permutations.

An element ``w`` is stored in signed one-line notation: ``perm[i-1] = +-k``
means ``w(e_i) = +-e_k`` on the standard basis of the ambient space.  Type
``A_n`` acts on ``R^(n+1)`` by ordinary permutations (all signs positive),
types ``B_n``, ``C_n``, ``D_n`` act on ``R^n`` by signed permutations.  This
gives a unique normal form per element without any word rewriting.

Subsets of simple roots are plain ``frozenset`` objects of 1-based indices.

>>> A2 = build_root_system("A2")
>>> w0 = longest_element(A2)
>>> w0.word_str(), w0.length
('s1.s2.s1', 3)
>>> parabolic_decompose(w0, {2})
(WeylElement('A2', 's2.s1'), WeylElement('A2', 's2'))
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable

__all__ = [
    "RootSystem", "WeylElement", "WeylError",
    "build_root_system", "parse_subset", "subset_str",
    "multiply", "inverse", "length",
    "bruhat_leq", "bruhat_leq_subword", "bruhat_leq_tableau", "bruhat_interval",
    "parabolic_decompose", "triple_decompose", "min_coset_reps",
    "parabolic_subgroup", "longest_element", "orthogonal",
]

MAX_RANK = 6


class WeylError(ValueError):
    """Bad Cartan type, mixed groups, or malformed word."""


@dataclass(frozen=True, eq=False)
class RootSystem:
    """A classical root system together with its Weyl group.

    Instances are interned by :func:`build_root_system`, so identity
    comparison is group comparison.
    """
    family: str
    rank: int
    simple_eps: tuple[tuple[int, ...], ...] = field(repr=False)
    cartan_matrix: tuple[tuple[int, ...], ...] = field(repr=False)
    positive_roots: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def cartan_type(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def dim(self) -> int:
        return len(self.simple_eps[0])

    @property
    def simple_roots(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    @property
    def delta(self) -> frozenset[int]:
        return frozenset(self.simple_roots)

    def __repr__(self):
        return f"RootSystem({self.cartan_type!r})"

    def to_eps(self, root: Iterable[int]) -> tuple[int, ...]:
        """Simple-root coordinates -> ambient coordinates."""
        out = [0] * self.dim
        for c, alpha in zip(root, self.simple_eps):
            if c:
                for k, a in enumerate(alpha):
                    out[k] += c * a
        return tuple(out)

    @cached_property
    def _positive_eps(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.to_eps(r) for r in self.positive_roots)

    @cached_property
    def _rho(self) -> tuple[int, ...]:
        # strictly decreasing, positive: pairs positively with every positive root
        return tuple(range(self.dim, 0, -1))

    def is_positive_eps(self, vec: tuple[int, ...]) -> bool:
        return sum(a * b for a, b in zip(vec, self._rho)) > 0

    @cached_property
    def identity(self) -> WeylElement:
        return WeylElement(self, tuple(range(1, self.dim + 1)))

    def s(self, i: int) -> WeylElement:
        """The simple reflection for the i-th simple root (1-based)."""
        return self._simple_reflections[i - 1]

    @cached_property
    def _simple_reflections(self) -> tuple[WeylElement, ...]:
        gens = []
        for i in range(1, self.rank + 1):
            perm = list(range(1, self.dim + 1))
            last = i == self.rank and self.family != "A"
            if not last:
                perm[i - 1], perm[i] = i + 1, i
            elif self.family in "BC":
                perm[i - 1] = -i
            else:  # D: e_{n-1} + e_n
                perm[i - 2], perm[i - 1] = -i, -(i - 1)
            gens.append(WeylElement(self, tuple(perm)))
        return tuple(gens)

    def elements(self) -> list[WeylElement]:
        """All of W, sorted by (length, lex-minimal reduced word)."""
        return list(_all_elements(self))

    @property
    def order(self) -> int:
        return len(_all_elements(self))

    def check_subset(self, subset: Iterable[int]) -> frozenset[int]:
        members = frozenset(subset)
        bad = sorted(i for i in members if not 1 <= i <= self.rank)
        if bad:
            raise WeylError(f"{bad} are not simple roots of {self.cartan_type}")
        return members

    def element(self, word: str | Iterable[int]) -> WeylElement:
        """Parse ``"s1.s2"`` / ``"e"`` or evaluate a sequence of indices."""
        if isinstance(word, str):
            word = _parse_word(word, self.rank)
        w = self.identity
        for i in word:
            if not 1 <= i <= self.rank:
                raise WeylError(f"no simple reflection s{i} in {self.cartan_type}")
            w = w * self.s(i)
        return w


def _simple_roots_eps(family: str, n: int) -> list[tuple[int, ...]]:
    dim = n + 1 if family == "A" else n

    def e(i, j=None, sign=-1):
        v = [0] * dim
        v[i - 1] = 1
        if j is not None:
            v[j - 1] = sign
        return tuple(v)

    roots = [e(i, i + 1) for i in range(1, n + 1 if family == "A" else n)]
    if family == "B":
        roots.append(e(n))
    elif family == "C":
        roots.append(tuple(2 * c for c in e(n)))
    elif family == "D":
        roots.append(e(n - 1, n, sign=1))
    return roots


def _closure_positive_roots(cartan):
    """Close the simple roots under simple reflections, keep the positive ones."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                # s_i(beta) = beta - <alpha_i^vee, beta> alpha_i
                pairing = sum(cartan[i][j] * beta[j] for j in range(n))
                gamma = list(beta)
                gamma[i] -= pairing
                gamma = tuple(gamma)
                if gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    pos = [r for r in seen if all(c >= 0 for c in r)]
    return tuple(sorted(pos, key=lambda r: (sum(r), tuple(-c for c in r))))


@lru_cache(maxsize=None)
def build_root_system(cartan_type: str) -> RootSystem:
    """Build the root system ``A_n``, ``B_n``, ``C_n`` or ``D_n`` (rank <= 6)."""
    m = re.fullmatch(r"\s*([ABCDabcd])\s*(\d+)\s*", str(cartan_type))
    if not m:
        raise WeylError(f"cannot parse Cartan type {cartan_type!r}; expected e.g. 'A3'")
    family, n = m.group(1).upper(), int(m.group(2))
    if n < 1 or (family == "D" and n < 2):
        raise WeylError(f"{family}{n}: rank too small for type {family}")
    if n > MAX_RANK:
        raise WeylError(f"{family}{n}: rank above the supported maximum {MAX_RANK}")
    simple = _simple_roots_eps(family, n)

    def dot(a, b):
        return sum(x * y for x, y in zip(a, b))

    # a_ij = <alpha_i^vee, alpha_j>
    cartan = tuple(
        tuple(2 * dot(a, b) // dot(a, a) for b in simple) for a in simple
    )
    return RootSystem(family, n, tuple(simple), cartan, _closure_positive_roots(cartan))


@dataclass(frozen=True, eq=False)
class WeylElement:
    group: RootSystem
    perm: tuple[int, ...]

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.group is other.group and self.perm == other.perm

    def __hash__(self):
        return hash((self.group.cartan_type, self.perm))

    def __repr__(self):
        return f"WeylElement({self.group.cartan_type!r}, {self.word_str()!r})"

    def __str__(self):
        return self.word_str()

    def __mul__(self, other: WeylElement) -> WeylElement:
        _same_group(self, other)
        p = self.perm
        return WeylElement(
            self.group,
            tuple(p[k - 1] if k > 0 else -p[-k - 1] for k in other.perm),
        )

    def __lt__(self, other: WeylElement) -> bool:
        return self.sort_key < other.sort_key

    def inverse(self) -> WeylElement:
        inv = [0] * len(self.perm)
        for i, k in enumerate(self.perm, start=1):
            inv[abs(k) - 1] = i if k > 0 else -i
        return WeylElement(self.group, tuple(inv))

    def act(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        """Action on ambient coordinates."""
        out = [0] * len(vec)
        for i, k in enumerate(self.perm):
            out[abs(k) - 1] = vec[i] if k > 0 else -vec[i]
        return tuple(out)

    @cached_property
    def length(self) -> int:
        """Number of positive roots sent to negative roots."""
        G = self.group
        table = _TABLES.get(G)
        if table is not None:
            return table[self.perm][0]
        return sum(not G.is_positive_eps(self.act(r)) for r in G._positive_eps)

    def has_right_descent(self, i: int) -> bool:
        G = self.group
        return not G.is_positive_eps(self.act(G.simple_eps[i - 1]))

    def has_left_descent(self, i: int) -> bool:
        return self.inverse().has_right_descent(i)

    @cached_property
    def word(self) -> tuple[int, ...]:
        """Lexicographically minimal reduced word."""
        table = _TABLES.get(self.group)
        if table is not None:
            return table[self.perm][1]
        out = []
        w = self
        while w.length:
            i = next(i for i in w.group.simple_roots if w.has_left_descent(i))
            out.append(i)
            w = w.group.s(i) * w
        return tuple(out)

    def word_str(self) -> str:
        return ".".join(f"s{i}" for i in self.word) or "e"

    @property
    def sort_key(self) -> tuple[int, ...]:
        return self.word

    def is_identity(self) -> bool:
        return self.perm == self.group.identity.perm


def _parse_word(text: str, rank: int | None = None) -> list[int]:
    text = text.strip()
    if text in ("e", "1", ""):
        return []
    out = []
    for tok in text.split("."):
        m = re.fullmatch(r"s(\d+)", tok.strip())
        if not m:
            raise WeylError(f"bad letter {tok!r} in word {text!r}; expected 's<i>' joined by '.'")
        out.append(int(m.group(1)))
        if rank is not None and not 1 <= out[-1] <= rank:
            raise WeylError(f"no simple reflection {tok} in rank {rank}")
    return out


def parse_subset(group: RootSystem, text: str) -> frozenset[int]:
    """Parse ``"a1,a3"`` / ``"1,3"`` / ``""`` / ``"all"`` into a subset of simple roots."""
    text = text.strip().lower()
    if text in ("", "none", "empty", "{}"):
        return frozenset()
    if text in ("all", "delta"):
        return group.delta
    members = []
    for tok in text.replace("{", "").replace("}", "").split(","):
        tok = tok.strip().lstrip("a")
        if not tok.isdigit():
            raise WeylError(f"cannot parse simple root {tok!r}")
        members.append(int(tok))
    return group.check_subset(members)


def subset_str(subset: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(subset)) + "}"


def _same_group(*elts: WeylElement):
    g = elts[0].group
    for x in elts[1:]:
        if x.group is not g:
            raise WeylError(
                f"elements of different groups {g.cartan_type} and {x.group.cartan_type}"
            )


# perm -> (length, lex-minimal reduced word), filled once a group is enumerated
_TABLES: dict = {}


@lru_cache(maxsize=None)
def _all_elements(G: RootSystem) -> tuple[WeylElement, ...]:
    # BFS by left multiplication: level k is exactly the elements of length k,
    # and the lex-minimal word of y is (i,) + word(s_i y) for its smallest left descent i
    table = {G.identity.perm: (0, ())}
    frontier = [G.identity]
    gens = [G.s(i) for i in G.simple_roots]
    level = 0
    while frontier:
        level += 1
        nxt = []
        for w in frontier:
            word = table[w.perm][1]
            for i, s in enumerate(gens, start=1):
                y = s * w
                old = table.get(y.perm)
                if old is None:
                    table[y.perm] = (level, (i,) + word)
                    nxt.append(y)
                elif old[0] == level and (i,) + word < old[1]:
                    table[y.perm] = (level, (i,) + word)
        frontier = nxt
    _TABLES[G] = table
    elts = [WeylElement(G, perm) for perm in table]
    return tuple(sorted(elts, key=lambda w: (w.length, w.word)))


def multiply(a: WeylElement, b: WeylElement) -> WeylElement:
    return a * b


def inverse(a: WeylElement) -> WeylElement:
    return a.inverse()


def length(a: WeylElement) -> int:
    return a.length


# -- Bruhat order ---------------------------------------------------------

def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    """``u <= w`` in Bruhat order.

    Uses the descent recursion: if ``ws < w`` then ``u <= w`` iff
    ``min(u, us) <= ws``.
    """
    _same_group(u, w)
    return _bruhat_leq(u, w)


@lru_cache(maxsize=1 << 20)
def _bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    if u.length > w.length:
        return False
    if w.length == 0:
        return u.length == 0
    if u.length == 0:
        return True
    G = w.group
    i = next(i for i in G.simple_roots if w.has_right_descent(i))
    s = G.s(i)
    if u.has_right_descent(i):
        u = u * s
    return _bruhat_leq(u, w * s)


@lru_cache(maxsize=4096)
def bruhat_interval(w: WeylElement) -> frozenset[WeylElement]:
    """All subword products of the reduced word of ``w``, i.e. ``[e, w]``."""
    acc = {w.group.identity}
    for i in w.word:
        s = w.group.s(i)
        acc |= {x * s for x in acc}
    return frozenset(acc)


def bruhat_leq_subword(u: WeylElement, w: WeylElement) -> bool:
    """Subword property on one fixed reduced word of ``w``."""
    _same_group(u, w)
    return u in bruhat_interval(w)


def bruhat_leq_tableau(u: WeylElement, w: WeylElement) -> bool:
    """Rank-matrix (Ehresmann tableau) criterion; type A only."""
    _same_group(u, w)
    if u.group.family != "A":
        raise WeylError("tableau criterion implemented for type A only")
    n = len(u.perm)
    for j in range(1, n + 1):
        a = sorted(u.perm[:j])
        b = sorted(w.perm[:j])
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


# -- parabolic machinery ----------------------------------------------------

def parabolic_decompose(u: WeylElement, J: Iterable[int]) -> tuple[WeylElement, WeylElement]:
    """Length-additive factorization ``u = u^J * u_J``."""
    J = u.group.check_subset(J)
    m = u
    changed = True
    while changed:
        changed = False
        for i in sorted(J):
            if m.has_right_descent(i):
                m = m * m.group.s(i)
                changed = True
    return m, m.inverse() * u


def triple_decompose(u: WeylElement, J: Iterable[int], K: Iterable[int]):
    """``u = u^I * u_J * u_K`` for orthogonal ``J``, ``K`` and ``I = J | K``.

    Returns ``(u^I, u_J, u_K)``.
    """
    G = u.group
    J, K = G.check_subset(J), G.check_subset(K)
    if J & K or not orthogonal(G, J, K):
        raise WeylError(f"J={subset_str(J)} and K={subset_str(K)} are not disjoint and orthogonal")
    top, par = parabolic_decompose(u, J | K)
    # W_I = W_J x W_K; peel off the K-part, the rest is in W_J
    rest, u_K = parabolic_decompose(par, K)
    return top, rest, u_K


def orthogonal(G: RootSystem, A: Iterable[int], B: Iterable[int]) -> bool:
    return all(G.cartan_matrix[a - 1][b - 1] == 0 for a in A for b in B)


@lru_cache(maxsize=None)
def _coset_reps(G: RootSystem, J: frozenset[int]) -> tuple[WeylElement, ...]:
    return tuple(w for w in G.elements() if not any(w.has_right_descent(i) for i in J))


def min_coset_reps(G: RootSystem, J: Iterable[int]) -> list[WeylElement]:
    """``W^J``: elements with no right descent in ``J``."""
    return list(_coset_reps(G, G.check_subset(J)))


@lru_cache(maxsize=None)
def _parabolic(G: RootSystem, J: frozenset[int]) -> tuple[WeylElement, ...]:
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for w in frontier:
            for i in J:
                ws = w * G.s(i)
                if ws not in seen:
                    seen.add(ws)
                    nxt.append(ws)
        frontier = nxt
    return tuple(sorted(seen, key=lambda w: (w.length, w.word)))


def parabolic_subgroup(G: RootSystem, J: Iterable[int]) -> list[WeylElement]:
    return list(_parabolic(G, G.check_subset(J)))


def longest_element(G: RootSystem, J: Iterable[int] | None = None) -> WeylElement:
    """Longest element of ``W`` (or of ``W_J``)."""
    J = G.delta if J is None else G.check_subset(J)
    w = G.identity
    grew = True
    while grew:
        grew = False
        for i in sorted(J):
            if not w.has_right_descent(i):
                w = w * G.s(i)
                grew = True
    return w


def subsets(G: RootSystem):
    """All subsets of simple roots, smallest first."""
    for k in range(G.rank + 1):
        for c in combinations(G.simple_roots, k):
            yield frozenset(c)
