"""Finite descriptions of abelian semigroups with identity.

Two kinds are supported:

* ``product``: a direct product of free integer coordinates and cyclic groups
  Z/m. Elements are tuples of ints, one entry per component.
* ``table``: an explicit Cayley table on {0, ..., n-1}. Elements are ints.

Elements are plain hashable values, so sets of them are ordinary ``frozenset``
objects and sort deterministically (tuples lexicographically, ints numerically).
"""
from __future__ import annotations

import operator
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    ArityMismatch,
    BadModulus,
    IndexOutOfRange,
    NoIdentity,
    NotAssociative,
    NotCommutative,
    SpecMismatch,
    TableShapeError,
)

Element = Union[int, tuple]


@dataclass(frozen=True)
class FreeInteger:
    def __str__(self):
        return "Z"


@dataclass(frozen=True)
class Modular:
    m: int

    def __str__(self):
        return f"Z/{self.m}"


Component = Union[FreeInteger, Modular]


@dataclass(frozen=True)
class SemigroupSpec:
    kind: str
    components: tuple = ()
    table: tuple = ()
    identity_index: int = 0

    @property
    def is_table(self) -> bool:
        return self.kind == "table"

    @property
    def order(self) -> int:
        """Number of elements for table specs."""
        return len(self.table)

    @property
    def arity(self) -> int:
        return len(self.components)

    @property
    def identity(self) -> Element:
        if self.is_table:
            return self.identity_index
        return (0,) * len(self.components)

    @property
    def is_group_like(self) -> bool:
        """True for product specs, which are always groups."""
        return not self.is_table

    @cached_property
    def moduli(self) -> tuple:
        return tuple(c.m if isinstance(c, Modular) else 0 for c in self.components)

    @cached_property
    def adder(self):
        """Fast binary operation on canonical elements (no checks)."""
        if self.is_table:
            t = self.table
            return lambda x, y: t[x][y]
        mods = self.moduli
        if not any(mods):
            if len(mods) == 1:
                return lambda x, y: (x[0] + y[0],)
            return lambda x, y: tuple(map(operator.add, x, y))
        if len(mods) == 1:
            m = mods[0]
            return lambda x, y: ((x[0] + y[0]) % m,)

        def add_mixed(x, y):
            return tuple(
                (a + b) % m if m else a + b for a, b, m in zip(x, y, mods)
            )

        return add_mixed

    def describe(self) -> str:
        if self.is_table:
            return f"table(n={self.order}, identity={self.identity_index})"
        return " x ".join(str(c) for c in self.components) or "trivial"


def product_spec(*components: Component) -> SemigroupSpec:
    return validate_spec(SemigroupSpec("product", components=tuple(components)))


def integers(d: int = 1) -> SemigroupSpec:
    """Z^d (also the home of N0^d problems)."""
    return product_spec(*[FreeInteger()] * d)


def cyclic(m: int) -> SemigroupSpec:
    return product_spec(Modular(m))


def adjoin_identity(table: Sequence[Sequence[int]]) -> list:
    """Return the table extended by a fresh identity element with index n."""
    n = len(table)
    out = [list(row) + [i] for i, row in enumerate(table)]
    out.append(list(range(n)) + [n])
    return out


def table_spec(table, identity_index: int = 0, adjoin: bool = False) -> SemigroupSpec:
    """Build and validate a Cayley-table spec.

    With ``adjoin=True`` the table is first extended by a new identity element,
    which becomes ``identity_index`` (= old n).
    """
    rows = [list(r) for r in table]
    if adjoin:
        rows = adjoin_identity(rows)
        identity_index = len(rows) - 1
    spec = SemigroupSpec(
        "table", table=tuple(tuple(int(v) for v in r) for r in rows),
        identity_index=int(identity_index),
    )
    return validate_spec(spec)


def _check_table(spec: SemigroupSpec) -> None:
    n = len(spec.table)
    if n < 1:
        raise TableShapeError("table must have order n >= 1")
    for i, row in enumerate(spec.table):
        if len(row) != n:
            raise TableShapeError(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise TableShapeError(f"table[{i}][{j}] = {v} outside [0, {n - 1}]")
    if not 0 <= spec.identity_index < n:
        raise NoIdentity(spec.identity_index)

    t = np.array(spec.table, dtype=np.int64)
    bad = np.argwhere(np.triu(t != t.T))
    if len(bad):
        i, j = bad[0]
        raise NotCommutative(int(i), int(j))

    # left[i, j, k] = (i+j)+k, right[i, j, k] = i+(j+k)
    left = t[t, :]
    right = t[np.arange(n)[:, None, None], t[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad):
        i, j, k = bad[0]
        raise NotAssociative(int(i), int(j), int(k))

    e = spec.identity_index
    bad = np.flatnonzero(t[e] != np.arange(n))
    if len(bad):
        raise NoIdentity(e, int(bad[0]))


def validate_spec(spec: SemigroupSpec) -> SemigroupSpec:
    """Return ``spec`` unchanged if it describes an abelian semigroup with identity.

    Table specs are checked exhaustively (O(n^3) associativity scan).
    """
    if spec.kind == "product":
        for pos, c in enumerate(spec.components):
            if isinstance(c, Modular):
                if not isinstance(c.m, int) or c.m < 1:
                    raise BadModulus(pos, c.m)
            elif not isinstance(c, FreeInteger):
                raise TableShapeError(f"unknown component {c!r} at position {pos}")
        return spec
    if spec.kind == "table":
        _check_table(spec)
        return spec
    raise TableShapeError(f"unknown semigroup kind {spec.kind!r}")


def canonicalize(spec: SemigroupSpec, raw) -> Element:
    """Reduce a raw element to canonical form. Idempotent."""
    if spec.is_table:
        if isinstance(raw, (tuple, list)):
            if len(raw) != 1:
                raise ArityMismatch(1, len(raw))
            raw = raw[0]
        idx = operator.index(raw)
        if not 0 <= idx < spec.order:
            raise IndexOutOfRange(idx, spec.order)
        return idx
    if isinstance(raw, (int, np.integer)):
        raw = (raw,)
    raw = tuple(raw)
    if len(raw) != spec.arity:
        raise ArityMismatch(spec.arity, len(raw))
    return tuple(
        operator.index(v) % m if m else operator.index(v)
        for v, m in zip(raw, spec.moduli)
    )


def is_canonical(spec: SemigroupSpec, x) -> bool:
    try:
        return canonicalize(spec, x) == x and type(x) is type(spec.identity)
    except (ArityMismatch, IndexOutOfRange, TypeError):
        return False


def add(spec: SemigroupSpec, x: Element, y: Element) -> Element:
    """Checked semigroup operation. Use ``spec.adder`` in hot loops."""
    if not (is_canonical(spec, x) and is_canonical(spec, y)):
        raise SpecMismatch(f"{x!r}, {y!r} are not canonical elements of {spec.describe()}")
    return spec.adder(x, y)


@dataclass(frozen=True)
class ElementSet:
    """A finite deduplicated set of canonical elements of one semigroup."""

    spec: SemigroupSpec
    elements: frozenset = field(default_factory=frozenset)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def sorted(self) -> list:
        return sorted(self.elements)

    def __repr__(self):
        return f"ElementSet({self.sorted()!r})"


def element_set(spec: SemigroupSpec, raw: Iterable) -> ElementSet:
    return ElementSet(spec, frozenset(canonicalize(spec, x) for x in raw))


def same_spec(a: SemigroupSpec, b: SemigroupSpec) -> bool:
    return a is b or a == b
