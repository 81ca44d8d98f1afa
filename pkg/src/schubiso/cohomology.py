"""Schubert data and the combinatorics of their Schubert bases.

The basis of ``H*(X(w, A, I))`` is indexed by the interval ``[1, w]^I``;
the class of ``v`` sits in degree ``2 * length(v)``. Multiplication by a
degree-2 class is Chevalley's formula, truncated to the interval. Every
other operation here (the order on basis classes, subring supports,
descents, reduced words of classes) is derived from those products alone,
so it can be checked against the Weyl-group side.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .cartan import CartanMatrix, Node
from .errors import (
    GeneratorInParabolic,
    NotADescent,
    NotInInterval,
    NotMinimalRepresentative,
    ParabolicTooLarge,
    UnknownLabel,
)
from .weyl import (
    BruhatInterval,
    WeylElement,
    Word,
    bruhat_leq,
    interval,
    is_min_rep,
    min_rep,
    reflection_of,
    weyl_group,
)


@dataclass(frozen=True, eq=False)
class SchubertDatum:
    """The triple ``(A, w, I)`` with ``w`` a minimal coset representative."""

    cartan: CartanMatrix
    w: WeylElement
    parabolic: frozenset[int]

    def __post_init__(self) -> None:
        if self.w.group.cartan != self.cartan:
            raise ValueError("w does not belong to the Weyl group of the given Cartan matrix")
        bad = [s for s in self.parabolic if not (isinstance(s, int) and 0 <= s < self.cartan.rank)]
        if bad:
            raise UnknownLabel(f"parabolic nodes {bad} are not node indices")
        if not is_min_rep(self.w, self.parabolic):
            raise NotMinimalRepresentative(
                f"{self.w!r} is not a minimal coset representative for I = {self.parabolic_labels()}"
            )

    @classmethod
    def from_word(cls, cartan: CartanMatrix, word: Iterable[Node], parabolic: Iterable[Node] = ()) -> SchubertDatum:
        w = weyl_group(cartan).from_word(word)
        return cls(cartan, w, frozenset(cartan.index(x) for x in parabolic))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SchubertDatum):
            return NotImplemented
        return (self.cartan, self.w, self.parabolic) == (other.cartan, other.w, other.parabolic)

    def __hash__(self) -> int:
        return hash((self.cartan, self.w, self.parabolic))

    def __repr__(self) -> str:
        return f"X({'*'.join(self.word_labels()) or '1'}, {self.cartan}, {{{','.join(self.parabolic_labels())}}})"

    @property
    def dimension(self) -> int:
        return self.w.length

    @property
    def support(self) -> frozenset[int]:
        return self.w.support

    def word_labels(self) -> list[str]:
        return self.w.labeled_word()

    def parabolic_labels(self) -> list[str]:
        return [self.cartan.labels[s] for s in sorted(self.parabolic)]

    def to_json(self) -> dict:
        return {
            **self.cartan.to_json(),
            "word": self.word_labels(),
            "parabolic": self.parabolic_labels(),
        }

    @cached_property
    def interval(self) -> BruhatInterval:
        return interval(self.w, self.parabolic)

    @cached_property
    def degree_two(self) -> tuple[int, ...]:
        """Generators ``s`` whose classes form the degree-2 part: ``S(w)`` minus ``I``."""
        return tuple(sorted(self.support - self.parabolic))

    @cached_property
    def _products(self) -> dict[tuple[int, WeylElement], dict[WeylElement, int]]:
        return {}


@dataclass(frozen=True)
class SchubertClass:
    """An integer combination of basis classes of one Schubert datum."""

    datum: SchubertDatum = field(repr=False)
    coefficients: Mapping[WeylElement, int]

    def __post_init__(self) -> None:
        for v in self.coefficients:
            if v not in self.datum.interval:
                raise NotInInterval(f"{v!r} is not in the interval of {self.datum!r}")

    @classmethod
    def basis_class(cls, datum: SchubertDatum, v: WeylElement) -> SchubertClass:
        return cls(datum, {v: 1})

    @classmethod
    def zero(cls, datum: SchubertDatum) -> SchubertClass:
        return cls(datum, {})

    def __getitem__(self, v: WeylElement) -> int:
        return self.coefficients.get(v, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SchubertClass):
            return NotImplemented
        return self.datum == other.datum and _nonzero(self.coefficients) == _nonzero(other.coefficients)

    def degrees(self) -> frozenset[int]:
        return frozenset(2 * v.length for v, c in self.coefficients.items() if c)

    def to_json(self) -> dict[str, int]:
        labels = self.datum.cartan.labels
        return {
            ",".join(labels[s] for s in v.word): c
            for v, c in sorted(self.coefficients.items(), key=lambda kv: (kv[0].length, kv[0].word))
            if c
        }

    def __str__(self) -> str:
        labels = self.datum.cartan.labels
        terms = []
        for v, c in sorted(self.coefficients.items(), key=lambda kv: (kv[0].length, kv[0].word)):
            if not c:
                continue
            name = f"σ[{','.join('s' + labels[s] for s in v.word)}]"
            terms.append(name if c == 1 else f"{c}·{name}")
        return " + ".join(terms) or "0"


def _nonzero(coeffs: Mapping[WeylElement, int]) -> dict[WeylElement, int]:
    return {v: c for v, c in coeffs.items() if c}


def basis(d: SchubertDatum) -> list[tuple[WeylElement, int]]:
    """Basis classes as ``(v, degree)`` pairs, ordered by degree."""
    return [(v, 2 * v.length) for v in d.interval]


def _generator(d: SchubertDatum, s: Node) -> int:
    i = d.cartan.index(s)
    if i in d.parabolic:
        raise GeneratorInParabolic(f"s{d.cartan.labels[i]} lies in the parabolic subset")
    if i not in d.support:
        raise NotInInterval(f"s{d.cartan.labels[i]} is not below w, so it has no class")
    return i


def _chevalley_terms(d: SchubertDatum, s: int, v: WeylElement) -> dict[WeylElement, int]:
    key = (s, v)
    cache = d._products
    if key in cache:
        return cache[key]
    group = d.w.group
    out: dict[WeylElement, int] = defaultdict(int)
    for beta in group.roots:
        coeff = beta.coroot[s]
        if not coeff:
            continue
        u = min_rep(v * reflection_of(group, beta), d.parabolic)
        if u.length == v.length + 1 and bruhat_leq(u, d.w):
            out[u] += coeff
    res = dict(out)
    cache[key] = res
    return res


def chevalley(d: SchubertDatum, s: Node, v: WeylElement) -> SchubertClass:
    """The product of the degree-2 class of ``s`` with the basis class of ``v``.

    Sum of ``<fundamental weight of s, beta^v>`` times the class of
    ``min_rep(v * s_beta)`` over positive roots ``beta`` raising the length
    of the representative by one. Terms outside ``[1, w]^I`` vanish in the
    cohomology of the Schubert variety and are dropped.
    """
    i = _generator(d, s)
    if v not in d.interval:
        raise NotInInterval(f"{v!r} is not in the interval of {d!r}")
    return SchubertClass(d, dict(_chevalley_terms(d, i, v)))


def multiply_by_degree2(d: SchubertDatum, s: Node, c: SchubertClass) -> SchubertClass:
    i = _generator(d, s)
    out: dict[WeylElement, int] = defaultdict(int)
    for v, coeff in c.coefficients.items():
        if not coeff:
            continue
        if v not in d.interval:
            raise NotInInterval(f"{v!r} is not in the interval of {d!r}")
        for u, k in _chevalley_terms(d, i, v).items():
            out[u] += coeff * k
    return SchubertClass(d, _nonzero(out))


def class_support(c: SchubertClass) -> frozenset[WeylElement]:
    return frozenset(v for v, k in c.coefficients.items() if k)


@dataclass(frozen=True)
class BasisPoset:
    """Basis classes ordered by the transitive closure of single Chevalley steps."""

    datum: SchubertDatum
    elements: tuple[WeylElement, ...]
    degree_two: tuple[int, ...]
    covers: frozenset[tuple[WeylElement, WeylElement]]

    @cached_property
    def _above(self) -> dict[WeylElement, frozenset[WeylElement]]:
        up: dict[WeylElement, set[WeylElement]] = {v: set() for v in self.elements}
        for u, v in self.covers:
            up[u].add(v)
        # elements are sorted by degree and covers raise degree, so go top-down
        closed: dict[WeylElement, frozenset[WeylElement]] = {}
        for v in reversed(self.elements):
            acc = {v}
            for x in up[v]:
                acc |= closed[x]
            closed[v] = frozenset(acc)
        return closed

    def leq(self, u: WeylElement, v: WeylElement) -> bool:
        return v in self._above[u]

    def less(self, u: WeylElement, v: WeylElement) -> bool:
        return u != v and self.leq(u, v)

    def relation(self) -> frozenset[tuple[int, int]]:
        idx = {v: i for i, v in enumerate(self.elements)}
        return frozenset((idx[u], idx[v]) for u in self.elements for v in self._above[u])


def reconstruct_poset(d: SchubertDatum) -> BasisPoset:
    covers = set()
    for u in d.interval:
        for s in d.degree_two:
            for v, k in _chevalley_terms(d, s, u).items():
                if k:
                    covers.add((u, v))
    return BasisPoset(d, d.interval.elements, d.degree_two, frozenset(covers))


def subring_support(d: SchubertDatum, excluded: Iterable[Node]) -> frozenset[WeylElement]:
    """Union of supports of all monomials in the degree-2 classes not in ``excluded``.

    Chevalley coefficients are nonnegative, so monomial supports never cancel
    and a closure over basis elements suffices.
    """
    ex = {d.cartan.index(x) for x in excluded}
    stray = ex - set(d.degree_two)
    if stray:
        raise NotInInterval(
            f"{sorted(d.cartan.labels[s] for s in stray)} do not index degree-2 classes of {d!r}"
        )
    gens = [s for s in d.degree_two if s not in ex]
    start = d.w.group.identity
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for s in gens:
            for v, k in _chevalley_terms(d, s, u).items():
                if k and v not in seen:
                    seen.add(v)
                    stack.append(v)
    return frozenset(seen)


def class_descents(d: SchubertDatum, v: WeylElement) -> frozenset[int]:
    """Degree-2 generators ``s`` such that ``v`` escapes the subring avoiding ``s``."""
    if v not in d.interval:
        raise NotInInterval(f"{v!r} is not in the interval of {d!r}")
    return frozenset(s for s in d.degree_two if v not in subring_support(d, [s]))


def max_below(d: SchubertDatum, v: WeylElement, t: Node) -> WeylElement:
    """The largest class strictly below ``v`` inside the subring avoiding ``t``."""
    ti = d.cartan.index(t)
    if ti not in class_descents(d, v):
        raise NotADescent(f"s{d.cartan.labels[ti]} is not a descent of the class of {v!r}")
    poset = reconstruct_poset(d)
    sub = subring_support(d, [ti])
    below = [u for u in sub if poset.less(u, v)]
    tops = [u for u in below if not any(poset.less(u, x) for x in below)]
    if len(tops) != 1:  # pragma: no cover - excluded by the poset structure
        raise AssertionError(f"expected a unique maximal element, found {tops}")
    return tops[0]


def class_reduced_words(d: SchubertDatum, v: WeylElement) -> frozenset[Word]:
    """Reduced words of the class of ``v`` when ``I`` is a single node.

    Letters are node indices; the parabolic node stands for the extra symbol
    adjoined to the degree-2 classes. Each word is a reduced word of a class
    below ``v`` followed by an alternating tail of the descent ``t`` and the
    parabolic node, ending in ``t``.
    """
    if len(d.parabolic) != 1:
        raise ParabolicTooLarge(f"reduced words of classes need |I| = 1, got {d.parabolic_labels()}")
    if v not in d.interval:
        raise NotInInterval(f"{v!r} is not in the interval of {d!r}")
    (p,) = tuple(d.parabolic)
    memo: dict[WeylElement, frozenset[Word]] = {}

    def go(x: WeylElement) -> frozenset[Word]:
        if x in memo:
            return memo[x]
        if x.length == 0:
            res = frozenset({()})
        else:
            acc: set[Word] = set()
            for t in sorted(class_descents(d, x)):
                u = max_below(d, x, t)
                n = x.length - u.length
                tail = tuple(t if (n - 1 - i) % 2 == 0 else p for i in range(n))
                acc.update(word + tail for word in go(u))
            res = frozenset(acc)
        memo[x] = res
        return res

    return go(v)


def element_from_labels(d: SchubertDatum, word: Sequence[Node]) -> WeylElement:
    """Interval element named by a word of node labels."""
    v = d.w.group.from_word(word)
    if v not in d.interval:
        raise NotInInterval(f"{v!r} is not in the interval of {d!r}")
    return v
