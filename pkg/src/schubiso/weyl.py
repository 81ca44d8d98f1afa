"""Finite Weyl groups of Cartan matrices.

An element is stored as the integer matrix of its action on root
coordinates (column ``t`` is the image of the simple root ``alpha_t``).
The reflection representation is faithful for finite Weyl groups, so
matrix equality is group equality.

Words are tuples of node indices; ``(1, 0)`` is the product ``s_2 s_1``
for the default labels ``"1", "2"``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence, Union

from .cartan import CartanMatrix, Node
from .errors import CapExceeded, NotARoot, NotMinimalRepresentative, SchubisoError

Matrix = tuple[tuple[int, ...], ...]
Word = tuple[int, ...]

DEFAULT_CAP = 10_000
# interval() scans the whole group below this order, otherwise walks down from w


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class Root:
    """A root with its coordinates over the simple roots and over the simple coroots."""

    root: tuple[int, ...]
    coroot: tuple[int, ...]

    @property
    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.root)

    def support(self) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self.root) if c)

    def to_json(self) -> dict:
        return {"root": list(self.root), "coroot": list(self.coroot)}


@dataclass(frozen=True)
class RootSystem:
    cartan: CartanMatrix
    positive_roots: tuple[Root, ...]

    @property
    def simple_count(self) -> int:
        return self.cartan.rank

    def __len__(self) -> int:
        return len(self.positive_roots)

    def __iter__(self) -> Iterator[Root]:
        return iter(self.positive_roots)

    @cached_property
    def _by_coords(self) -> dict[tuple[int, ...], Root]:
        return {r.root: r for r in self.positive_roots}

    def find(self, coords: Sequence[int]) -> Root | None:
        return self._by_coords.get(tuple(coords))


def generate_roots(a: CartanMatrix) -> RootSystem:
    """All positive roots, found by closing the simple roots under simple reflections.

    Roots are ordered by height, then lexicographically; the simple roots
    come first, in node order.
    """
    n = a.rank
    unit = [tuple(int(i == s) for i in range(n)) for s in range(n)]
    found: dict[tuple[int, ...], tuple[int, ...]] = {unit[s]: unit[s] for s in range(n)}
    frontier = list(found)
    while frontier:
        nxt = []
        for beta in frontier:
            cobeta = found[beta]
            for s in range(n):
                pair = sum(beta[t] * a.entries[s][t] for t in range(n))  # <coroot_s, beta>
                copair = sum(cobeta[t] * a.entries[t][s] for t in range(n))  # <beta^v, alpha_s>
                img = tuple(beta[i] - pair * unit[s][i] for i in range(n))
                if img == beta or not all(c >= 0 for c in img):
                    continue
                if img not in found:
                    found[img] = tuple(cobeta[i] - copair * unit[s][i] for i in range(n))
                    nxt.append(img)
        frontier = nxt
    ordered = sorted(found, key=lambda r: (sum(r), tuple(-c for c in r)))
    return RootSystem(a, tuple(Root(r, found[r]) for r in ordered))


def _matmul(x: Matrix, y: Matrix) -> Matrix:
    cols = list(zip(*y))
    return tuple(tuple(sum(p * q for p, q in zip(row, col)) for col in cols) for row in x)


class WeylGroup:
    """The Weyl group of a Cartan matrix, with per-group caches.

    Obtain instances through :func:`weyl_group` so that caches are shared.
    """

    def __init__(self, cartan: CartanMatrix):
        self.cartan = cartan
        self.rank = cartan.rank
        self.roots = generate_roots(cartan)
        n = self.rank
        self.identity = WeylElement(self, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))
        gens = []
        for s in range(n):
            m = tuple(
                tuple(int(i == t) - int(i == s) * cartan.entries[s][t] for t in range(n)) for i in range(n)
            )
            gens.append(WeylElement(self, m))
        self.generators: tuple[WeylElement, ...] = tuple(gens)
        self._bruhat: dict[tuple[Matrix, Matrix], bool] = {}

    def __repr__(self) -> str:
        return f"WeylGroup({self.cartan})"

    def from_word(self, word: Iterable[Node]) -> WeylElement:
        w = self.identity
        for x in word:
            w = w.times(self.cartan.index(x))
        return w

    @cached_property
    def elements(self) -> tuple[WeylElement, ...]:
        """Every element, by breadth-first closure, sorted by (length, lex-min word)."""
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in range(self.rank):
                    y = x.times(g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen, key=_sort_key))

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def longest(self) -> WeylElement:
        return max(self.elements, key=lambda x: x.length)


@lru_cache(maxsize=None)
def weyl_group(cartan: CartanMatrix) -> WeylGroup:
    return WeylGroup(cartan)


GroupLike = Union[CartanMatrix, WeylGroup]


def _group(a: GroupLike) -> WeylGroup:
    return a if isinstance(a, WeylGroup) else weyl_group(a)


class WeylElement:
    """An element of a finite Weyl group."""

    def __init__(self, group: WeylGroup, matrix: Matrix):
        self.group = group
        self.matrix = matrix
        self._hash = hash((group.cartan, matrix))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.matrix == other.matrix and self.group.cartan == other.group.cartan

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: WeylElement) -> WeylElement:
        if other.group.cartan != self.group.cartan:
            raise SchubisoError("cannot multiply elements of different Weyl groups")
        return WeylElement(self.group, _matmul(self.matrix, other.matrix))

    def __repr__(self) -> str:
        labels = self.group.cartan.labels
        body = "*".join("s" + labels[s] for s in self.word) or "1"
        return f"WeylElement({body})"

    def times(self, s: int) -> WeylElement:
        """``self * s`` for a generator index ``s``.

        Only column ``s`` changes: ``w s (alpha_s) = -w(alpha_s)``, and for
        ``t != s`` column ``t`` gains ``-a[s][t]`` times column ``s``.
        """
        row_s = self.group.cartan.entries[s]
        m = tuple(
            tuple(-r[s] if t == s else r[t] - row_s[t] * r[s] for t in range(len(r))) for r in self.matrix
        )
        return WeylElement(self.group, m)

    def apply(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Image of a vector given in simple-root coordinates."""
        return tuple(sum(m * c for m, c in zip(row, coords)) for row in self.matrix)

    def sends_negative(self, coords: Sequence[int]) -> bool:
        return any(c < 0 for c in self.apply(coords))

    @cached_property
    def length(self) -> int:
        return sum(1 for beta in self.group.roots if self.sends_negative(beta.root))

    def is_identity(self) -> bool:
        return self.length == 0

    def descents(self, side: Side = Side.RIGHT) -> frozenset[int]:
        if side is Side.RIGHT:
            return self._right_descents
        return self._left_descents

    @cached_property
    def _right_descents(self) -> frozenset[int]:
        # w(alpha_s) is column s of the matrix
        return frozenset(s for s in range(self.group.rank) if any(row[s] < 0 for row in self.matrix))

    @cached_property
    def _left_descents(self) -> frozenset[int]:
        return self.inverse._right_descents

    @cached_property
    def word(self) -> Word:
        """The lexicographically smallest reduced word."""
        # a left descent of x is a right descent of x^-1, read off a column
        out = []
        x = self.inverse
        while x._right_descents:
            s = min(x._right_descents)
            out.append(s)
            x = x.times(s)
        return tuple(out)

    @cached_property
    def inverse(self) -> WeylElement:
        # strip right descents to get some reduced word, then reverse it
        letters = []
        x = self
        while x._right_descents:
            s = min(x._right_descents)
            letters.append(s)
            x = x.times(s)
        return self.group.from_word(letters)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.word)

    def labeled_word(self) -> list[str]:
        return [self.group.cartan.labels[s] for s in self.word]


def _sort_key(w: WeylElement) -> tuple[int, Word]:
    return (w.length, w.word)


# -- module-level operations -----------------------------------------------------


def from_word(a: GroupLike, word: Iterable[Node]) -> WeylElement:
    """Product of the generators in ``word``; the word need not be reduced."""
    return _group(a).from_word(word)


def length(w: WeylElement) -> int:
    return w.length


def descents(w: WeylElement, side: Side = Side.RIGHT) -> frozenset[int]:
    return w.descents(side)


def support(w: WeylElement) -> frozenset[int]:
    return w.support


def reduced_words(w: WeylElement, cap: int = DEFAULT_CAP) -> frozenset[Word]:
    """All reduced words of ``w``, built by stripping right descents.

    Raises :class:`CapExceeded` as soon as more than ``cap`` words are known
    to exist.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    memo: dict[WeylElement, frozenset[Word]] = {}

    def go(x: WeylElement) -> frozenset[Word]:
        if x in memo:
            return memo[x]
        if x.length == 0:
            res = frozenset({()})
        else:
            acc: set[Word] = set()
            for s in sorted(x.descents(Side.RIGHT)):
                for u in go(x.times(s)):
                    acc.add(u + (s,))
                    if len(acc) > cap:
                        raise CapExceeded(cap)
            res = frozenset(acc)
        memo[x] = res
        return res

    return go(w)


def bruhat_leq(u: WeylElement, v: WeylElement) -> bool:
    """Bruhat order, by recursion on a left descent of ``v``."""
    if u.length > v.length:
        return False
    if u.length == v.length:
        return u == v
    if u.length == 0:
        return True
    cache = v.group._bruhat
    key = (u.matrix, v.matrix)
    hit = cache.get(key)
    if hit is not None:
        return hit
    s = min(v.descents(Side.LEFT))
    g = v.group.generators[s]
    sv = g * v
    if s in u.descents(Side.LEFT):
        res = bruhat_leq(g * u, sv)
    else:
        res = bruhat_leq(u, sv)
    cache[key] = res
    return res


def min_rep(w: WeylElement, parabolic: Iterable[Node]) -> WeylElement:
    """Minimal-length element of the coset ``w W_I``."""
    cartan = w.group.cartan
    idx = frozenset(cartan.index(x) for x in parabolic)
    while True:
        bad = w.descents(Side.RIGHT) & idx
        if not bad:
            return w
        w = w.times(min(bad))


def is_min_rep(w: WeylElement, parabolic: Iterable[int]) -> bool:
    return not (w.descents(Side.RIGHT) & frozenset(parabolic))


@dataclass(frozen=True)
class BruhatInterval:
    """``[1, w]`` intersected with the minimal coset representatives of ``W_I``."""

    top: WeylElement
    parabolic: frozenset[int]
    elements: tuple[WeylElement, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[WeylElement]:
        return iter(self.elements)

    def __contains__(self, v: object) -> bool:
        return v in self._index

    @cached_property
    def _index(self) -> dict[WeylElement, int]:
        return {v: i for i, v in enumerate(self.elements)}

    def index(self, v: WeylElement) -> int:
        return self._index[v]

    def leq(self, u: WeylElement, v: WeylElement) -> bool:
        return bruhat_leq(u, v)

    def relation(self) -> frozenset[tuple[int, int]]:
        """All index pairs ``(i, j)`` with ``elements[i] <= elements[j]``."""
        els = self.elements
        return frozenset(
            (i, j) for i, u in enumerate(els) for j, v in enumerate(els) if bruhat_leq(u, v)
        )

    def rank_counts(self) -> tuple[int, ...]:
        counts = [0] * (self.top.length + 1)
        for v in self.elements:
            counts[v.length] += 1
        return tuple(counts)


def interval(w: WeylElement, parabolic: Iterable[Node] = ()) -> BruhatInterval:
    cartan = w.group.cartan
    idx = frozenset(cartan.index(x) for x in parabolic)
    if not is_min_rep(w, idx):
        raise NotMinimalRepresentative(
            f"{w!r} has right descents {sorted(cartan.labels[s] for s in w.descents() & idx)} in the parabolic subset"
        )
    group = w.group
    if "elements" in group.__dict__:
        # the sorted element list is already built; a scan is cheapest
        below = [v for v in group.elements if bruhat_leq(v, w)]
    else:
        below = list(_down_closure(w))
    elements = tuple(sorted((v for v in below if is_min_rep(v, idx)), key=_sort_key))
    return BruhatInterval(w, idx, elements)


def _down_closure(w: WeylElement) -> set[WeylElement]:
    # elements covered by x are exactly the single-letter deletions of a reduced
    # word of x that drop the length by one
    seen = {w}
    stack = [w]
    group = w.group
    while stack:
        x = stack.pop()
        word = x.word
        for i in range(len(word)):
            y = group.from_word(word[:i] + word[i + 1 :])
            if y.length == x.length - 1 and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def inversion_set(w: WeylElement) -> frozenset[Root]:
    """Positive roots ``beta`` with ``w^-1(beta)`` negative."""
    inv = w.inverse
    return frozenset(beta for beta in w.group.roots if inv.sends_negative(beta.root))


def reflection_of(a: GroupLike, root: Root | Sequence[int]) -> WeylElement:
    """The reflection ``s_beta`` of a positive root."""
    group = _group(a)
    coords = root.root if isinstance(root, Root) else tuple(root)
    beta = group.roots.find(coords)
    if beta is None:
        raise NotARoot(f"{list(coords)} is not a positive root of {group.cartan}")
    n = group.rank
    ent = group.cartan.entries
    cols = []
    for t in range(n):
        pair = sum(beta.coroot[s] * ent[s][t] for s in range(n))  # <beta^v, alpha_t>
        cols.append([int(i == t) - pair * beta.root[i] for i in range(n)])
    return WeylElement(group, tuple(tuple(cols[t][i] for t in range(n)) for i in range(n)))
