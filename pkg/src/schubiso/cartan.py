"""Finite-type Cartan matrices.

Entries follow the convention ``a[s][t] = <coroot_s, root_t>``, so the
simple reflection ``s`` acts on root coordinates by
``s(alpha_t) = alpha_t - a[s][t] * alpha_s``.

Nodes are addressed internally by their index ``0..n-1``; each node also
carries a display label (``"1"``, ``"2"``, ... for the built-ins) that is
preserved by :func:`submatrix` and used in every serialized form.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence, Union

from .errors import (
    AsymmetricZero,
    DiagonalNotTwo,
    NotFiniteType,
    PositiveOffDiagonal,
    ShapeError,
    UnknownLabel,
)

Node = Union[int, str]

# a[s][t] * a[t][s] -> order of s*t
_BOND_ORDERS = {0: 2, 1: 3, 2: 4, 3: 6}


@dataclass(frozen=True)
class CartanMatrix:
    """A validated finite-type Cartan matrix over labeled nodes.

    Construction checks every invariant; an instance is always valid.
    """

    labels: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        _check(self.labels, self.entries)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def __getitem__(self, st: tuple[int, int]) -> int:
        s, t = st
        return self.entries[s][t]

    def index(self, node: Node) -> int:
        """Resolve a node given either as an index or as a display label."""
        if isinstance(node, bool):
            raise UnknownLabel(f"unknown node {node!r}")
        if isinstance(node, int):
            if 0 <= node < self.rank:
                return node
            raise UnknownLabel(f"node index {node} out of range for rank {self.rank}")
        try:
            return self.labels.index(node)
        except ValueError:
            raise UnknownLabel(f"unknown label {node!r}; labels are {list(self.labels)}") from None

    def label(self, s: int) -> str:
        return self.labels[s]

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "cartan": [list(row) for row in self.entries]}

    def __str__(self) -> str:
        rows = ",".join("[" + ",".join(str(x) for x in row) + "]" for row in self.entries)
        return f"[{rows}]"


def _check(labels: Sequence[str], entries: Sequence[Sequence[int]]) -> None:
    n = len(labels)
    if len(set(labels)) != n:
        raise ShapeError(f"duplicate labels in {list(labels)}")
    if len(entries) != n or any(len(row) != n for row in entries):
        raise ShapeError(f"matrix must be {n}x{n} to match {n} labels")
    for row in entries:
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise ShapeError(f"Cartan entries must be integers, got {x!r}")
    for s in range(n):
        if entries[s][s] != 2:
            raise DiagonalNotTwo(
                f"a[{labels[s]}][{labels[s]}] = {entries[s][s]}, expected 2",
                (labels[s], labels[s]),
            )
    for s in range(n):
        for t in range(n):
            if s == t:
                continue
            pair = (labels[s], labels[t])
            if entries[s][t] > 0:
                raise PositiveOffDiagonal(f"a[{pair[0]}][{pair[1]}] = {entries[s][t]} > 0", pair)
            if (entries[s][t] == 0) != (entries[t][s] == 0):
                raise AsymmetricZero(
                    f"a[{pair[0]}][{pair[1]}] = {entries[s][t]} but a[{pair[1]}][{pair[0]}] = {entries[t][s]}",
                    pair,
                )
            if s < t and entries[s][t] * entries[t][s] not in _BOND_ORDERS:
                raise NotFiniteType(
                    f"bond product a[{pair[0]}][{pair[1]}]*a[{pair[1]}][{pair[0]}] = "
                    f"{entries[s][t] * entries[t][s]} is not in {{0,1,2,3}}",
                    pair,
                )
    _check_positive_definite(labels, entries)


def _check_positive_definite(labels: Sequence[str], entries: Sequence[Sequence[int]]) -> None:
    # Symmetrizer d with d[s]*a[s][t] == d[t]*a[t][s], propagated along bonds.
    n = len(labels)
    d: list[Fraction | None] = [None] * n
    for root in range(n):
        if d[root] is not None:
            continue
        d[root] = Fraction(1)
        queue = deque([root])
        while queue:
            s = queue.popleft()
            for t in range(n):
                if t == s or entries[s][t] == 0:
                    continue
                want = d[s] * entries[s][t] / entries[t][s]
                if d[t] is None:
                    d[t] = want
                    queue.append(t)
                elif d[t] != want:
                    raise NotFiniteType(
                        f"not symmetrizable around a[{labels[s]}][{labels[t]}]",
                        (labels[s], labels[t]),
                    )
    sym = [[d[s] * entries[s][t] for t in range(n)] for s in range(n)]
    for k in range(1, n + 1):
        if _det([row[:k] for row in sym[:k]]) <= 0:
            raise NotFiniteType(
                f"leading principal minor of order {k} of the symmetrized matrix is not positive",
                (labels[0], labels[k - 1]),
            )


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for i in range(n):
        pivot = next((r for r in range(i, n) if m[r][i] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != i:
            m[i], m[pivot] = m[pivot], m[i]
            det = -det
        det *= m[i][i]
        for r in range(i + 1, n):
            f = m[r][i] / m[i][i]
            if f:
                for c in range(i, n):
                    m[r][c] -= f * m[i][c]
    return det


def validate(raw: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> CartanMatrix:
    """Build a :class:`CartanMatrix` from nested sequences, raising on any violation."""
    if labels is None:
        labels = [str(i + 1) for i in range(len(raw))]
    try:
        entries = tuple(tuple(row) for row in raw)
    except TypeError:
        raise ShapeError("Cartan matrix must be a list of integer rows") from None
    return CartanMatrix(tuple(str(x) for x in labels), entries)


def submatrix(a: CartanMatrix, subset: Iterable[Node]) -> CartanMatrix:
    """Restrict to ``subset``, keeping the original node order and display labels."""
    idx = sorted({a.index(x) for x in subset})
    return CartanMatrix(
        tuple(a.labels[s] for s in idx),
        tuple(tuple(a.entries[s][t] for t in idx) for s in idx),
    )


def bond_order(a: CartanMatrix, s: Node, t: Node) -> int:
    """Order of ``s*t`` in the Weyl group."""
    i, j = a.index(s), a.index(t)
    if i == j:
        return 1
    return _BOND_ORDERS[a.entries[i][j] * a.entries[j][i]]


# -- built-in constructors ------------------------------------------------------------


def _from_rows(rows: list[list[int]]) -> CartanMatrix:
    return validate(rows)


def _chain(n: int) -> list[list[int]]:
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 2
        if i + 1 < n:
            rows[i][i + 1] = rows[i + 1][i] = -1
    return rows


def type_a(n: int) -> CartanMatrix:
    if n < 1:
        raise ValueError("A_n needs n >= 1")
    return _from_rows(_chain(n))


def type_b(n: int) -> CartanMatrix:
    """B_n with the double bond in the last row, ``a[n][n-1] = -2``."""
    if n < 2:
        raise ValueError("B_n needs n >= 2")
    rows = _chain(n)
    rows[n - 1][n - 2] = -2
    return _from_rows(rows)


def type_c(n: int) -> CartanMatrix:
    if n < 2:
        raise ValueError("C_n needs n >= 2")
    b = type_b(n).entries
    return _from_rows([[b[t][s] for t in range(n)] for s in range(n)])


def type_d(n: int) -> CartanMatrix:
    if n < 4:
        raise ValueError("D_n needs n >= 4")
    rows = _chain(n)
    rows[n - 1][n - 2] = rows[n - 2][n - 1] = 0
    rows[n - 1][n - 3] = rows[n - 3][n - 1] = -1
    return _from_rows(rows)


def type_f4() -> CartanMatrix:
    return _from_rows([[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]])


def m_matrix(n: int) -> CartanMatrix:
    """``[[2, -1], [-n, 2]]``: A_2, B_2, G_2 for n = 1, 2, 3."""
    if n not in (1, 2, 3):
        raise ValueError("M_n is defined for n = 1, 2, 3")
    return _from_rows([[2, -1], [-n, 2]])


def type_g2() -> CartanMatrix:
    return m_matrix(3)


def two_i2() -> CartanMatrix:
    return _from_rows([[2, 0], [0, 2]])


def block_diagonal(*blocks: CartanMatrix) -> CartanMatrix:
    """Direct sum; nodes are relabeled ``"1".."n"`` in block order."""
    n = sum(b.rank for b in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for s in range(b.rank):
            for t in range(b.rank):
                rows[off + s][off + t] = b.entries[s][t]
        off += b.rank
    return _from_rows(rows)


def irreducible(name: str) -> CartanMatrix:
    name = name.strip().upper()
    if name in ("M1", "M2", "M3"):
        return m_matrix(int(name[1]))
    if name == "F4":
        return type_f4()
    if name == "G2":
        return type_g2()
    kind, digits = name[:1], name[1:]
    if not digits.isdigit():
        raise ValueError(f"unknown Cartan type {name!r}")
    n = int(digits)
    builders = {"A": type_a, "B": type_b, "C": type_c, "D": type_d}
    if kind not in builders:
        raise ValueError(f"unknown Cartan type {name!r}")
    return builders[kind](n)


def builtin(name: str) -> CartanMatrix:
    """Parse names like ``"B4"``, ``"M2"``, ``"2I2"`` or ``"A1xB2"``."""
    if name.strip().upper() == "2I2":
        return two_i2()
    parts = [p for p in name.lower().split("x") if p]
    blocks = [irreducible(p) for p in parts]
    if not blocks:
        raise ValueError(f"unknown Cartan type {name!r}")
    return blocks[0] if len(blocks) == 1 else block_diagonal(*blocks)


# One representative per isomorphism type of connected diagram.
IRREDUCIBLE_BY_RANK: dict[int, tuple[str, ...]] = {
    1: ("A1",),
    2: ("A2", "B2", "G2"),
    3: ("A3", "B3", "C3"),
    4: ("A4", "B4", "C4", "D4", "F4"),
}


def builtin_names(max_rank: int) -> list[str]:
    """All built-in types (products included) of rank at most ``max_rank``.

    Products are listed once, with factors in a fixed order.
    """
    pool = [name for r in sorted(IRREDUCIBLE_BY_RANK) for name in IRREDUCIBLE_BY_RANK[r]]
    rank_of = {name: r for r, names in IRREDUCIBLE_BY_RANK.items() for name in names}
    out: list[str] = []
    for k in range(1, max_rank + 1):
        for combo in combinations_with_replacement(pool, k):
            total = sum(rank_of[c] for c in combo)
            if total <= max_rank:
                out.append("x".join(combo))
    out.sort(key=lambda nm: (sum(rank_of[p] for p in nm.split("x")), nm.count("x"), nm))
    return out
