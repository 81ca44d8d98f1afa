"""Enumeration of small Schubert data and their isomorphism classes."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import __version__
from .cartan import builtin, builtin_names, m_matrix, two_i2
from .cohomology import SchubertDatum
from .errors import AtlasMismatch, LimitExceeded
from .isoclass import IsoVerdict, VerdictKind, check_iso, datum_key
from .weyl import DEFAULT_CAP, is_min_rep, weyl_group

MAX_RANK = 4
MAX_LENGTH = 8


def enumerate_data(max_rank: int, max_length: int) -> list[SchubertDatum]:
    """Every fully supported ``(A, w, I)`` over the built-in Cartan types.

    Each built-in matrix appears once in its standard labeling; data are
    distinct as labeled triples, so a relabeling of the same variety inside
    one matrix (``s1 s2`` versus ``s2 s1`` for A_2) is kept as its own datum.
    """
    if max_rank > MAX_RANK or max_length > MAX_LENGTH:
        raise LimitExceeded(f"enumeration is limited to rank <= {MAX_RANK} and length <= {MAX_LENGTH}")
    if max_rank < 1 or max_length < 0:
        return []
    out: list[SchubertDatum] = []
    seen: set[SchubertDatum] = set()
    for name in builtin_names(max_rank):
        cartan = builtin(name)
        nodes = range(cartan.rank)
        subsets = [frozenset(c) for k in range(cartan.rank + 1) for c in combinations(nodes, k)]
        for w in weyl_group(cartan).elements:
            if w.length > max_length:
                break
            if len(w.support) != cartan.rank:
                continue
            for parabolic in subsets:
                if is_min_rep(w, parabolic):
                    d = SchubertDatum(cartan, w, parabolic)
                    if d not in seen:
                        seen.add(d)
                        out.append(d)
    return out


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


@dataclass(frozen=True)
class Classification:
    data: tuple[SchubertDatum, ...]
    classes: tuple[tuple[int, ...], ...]
    verdicts: dict[tuple[int, int], IsoVerdict]
    unknown_pairs: tuple[tuple[int, int], ...]

    def verdict(self, i: int, j: int) -> IsoVerdict:
        return self.verdicts[(i, j) if i < j else (j, i)]

    def class_of(self, i: int) -> int:
        for c, members in enumerate(self.classes):
            if i in members:
                return c
        raise KeyError(i)


def classify(data: Sequence[SchubertDatum], cap: int = DEFAULT_CAP, threads: int = 1) -> Classification:
    """Merge data along ``isomorphic`` verdicts; ``unknown`` pairs are reported, never merged."""
    data = tuple(data)
    pairs = [(i, j) for i in range(len(data)) for j in range(i + 1, len(data))]

    def run(pair: tuple[int, int]) -> IsoVerdict:
        return check_iso(data[pair[0]], data[pair[1]], cap)

    if threads > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, pairs))
    else:
        results = [run(p) for p in pairs]
    verdicts = dict(zip(pairs, results))
    uf = UnionFind(len(data))
    for (i, j), v in verdicts.items():
        if v.kind is VerdictKind.ISOMORPHIC:
            uf.union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(len(data)):
        groups.setdefault(uf.find(i), []).append(i)
    keys = [datum_key(d) for d in data]
    classes = sorted(
        (tuple(sorted(g, key=lambda i: keys[i])) for g in groups.values()),
        key=lambda g: keys[g[0]],
    )
    unknown = tuple(p for p, v in verdicts.items() if v.kind is VerdictKind.UNKNOWN)
    return Classification(data, tuple(classes), verdicts, unknown)


# -- the surface atlas ---------------------------------------------------------------

SURFACE_LABELS = ("P1xP1", "P2", "Sigma1", "Sigma2", "Sigma3", "ConeOverConic", "G2Exceptional")


def _surface(cartan, word, parabolic=()) -> SchubertDatum:
    return SchubertDatum.from_word(cartan, word, parabolic)


def expected_surface_classes() -> dict[str, frozenset[SchubertDatum]]:
    """Known classes of Schubert surfaces (nodes 0, 1 are s1, s2)."""
    m = m_matrix
    return {
        "P1xP1": frozenset({_surface(two_i2(), (0, 1))}),
        "Sigma1": frozenset({_surface(m(n), (0, 1)) for n in (1, 2, 3)} | {_surface(m(1), (1, 0))}),
        "Sigma2": frozenset({_surface(m(2), (1, 0))}),
        "Sigma3": frozenset({_surface(m(3), (1, 0))}),
        "P2": frozenset({_surface(m(n), (0, 1), (0,)) for n in (1, 2, 3)} | {_surface(m(1), (1, 0), (1,))}),
        "ConeOverConic": frozenset({_surface(m(2), (1, 0), (1,))}),
        "G2Exceptional": frozenset({_surface(m(3), (1, 0), (1,))}),
    }


@dataclass(frozen=True)
class AtlasRecord:
    id: int
    datum: SchubertDatum
    class_id: int
    class_label: str | None
    verdicts: tuple[tuple[int, str], ...]

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "datum": self.datum.to_json(),
            "class_id": self.class_id,
            "class_label": self.class_label,
            "verdicts": [list(v) for v in self.verdicts],
        }


@dataclass(frozen=True)
class Atlas:
    params: dict
    classification: Classification
    labels: tuple[str | None, ...]
    records: tuple[AtlasRecord, ...]

    def header(self) -> dict:
        return {
            "tool": "schubiso",
            "version": __version__,
            "params": self.params,
            "classes": len(self.classification.classes),
            "data": len(self.records),
        }

    def to_jsonl(self) -> str:
        lines = [json.dumps(self.header(), sort_keys=True)]
        lines += [json.dumps(r.to_json(), sort_keys=True) for r in self.records]
        return "\n".join(lines) + "\n"


def build_atlas(cls: Classification, params: dict, labels_by_class: Iterable[str | None] | None = None) -> Atlas:
    labels = tuple(labels_by_class) if labels_by_class is not None else (None,) * len(cls.classes)
    class_of = {i: c for c, members in enumerate(cls.classes) for i in members}
    records = tuple(
        AtlasRecord(
            i,
            d,
            class_of[i],
            labels[class_of[i]],
            tuple((j, cls.verdict(i, j).kind.value) for j in range(len(cls.data)) if j != i),
        )
        for i, d in enumerate(cls.data)
    )
    return Atlas(params, cls, labels, records)


def surface_atlas(cap: int = DEFAULT_CAP, threads: int = 1) -> Atlas:
    """Two-dimensional Schubert varieties, classified and named.

    Raises :class:`AtlasMismatch` unless the classes are exactly the seven
    known ones.
    """
    data = [d for d in enumerate_data(2, 2) if d.dimension == 2]
    data.sort(key=datum_key)
    cls = classify(data, cap=cap, threads=threads)
    expected = expected_surface_classes()
    by_members = {members: name for name, members in expected.items()}
    labels = []
    for members in cls.classes:
        got = frozenset(cls.data[i] for i in members)
        if got not in by_members:
            raise AtlasMismatch(f"unexpected class {sorted(map(repr, got))}")
        labels.append(by_members[got])
    if len(cls.classes) != len(expected) or set(labels) != set(expected):
        raise AtlasMismatch(f"expected {len(expected)} classes, found {len(cls.classes)}")
    if cls.unknown_pairs:
        raise AtlasMismatch(f"{len(cls.unknown_pairs)} undecided pairs among surfaces")
    params = {"max_rank": 2, "max_length": 2, "dimension": 2}
    return build_atlas(cls, params, labels)
