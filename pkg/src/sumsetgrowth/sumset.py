"""Iterated sumsets B + h_1 A_1 + ... + h_r A_r and their growth tables.

Two independent routes compute the same sets:

* the memoized sweep used by :func:`growth_table` (``mode="memoized"``), built
  on the recurrence S(h + e_i) = S(h) + A_i, and
* per-point recomputation (``mode="brute"``, :func:`combined_sumset`) together
  with literal multiset enumeration (:func:`brute_force_sumset`).
"""
from __future__ import annotations

import io
import itertools
from dataclasses import dataclass, field
from math import comb, prod
from typing import Iterable, Sequence

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    EnumerationCapExceeded,
    ProblemError,
    SpecMismatch,
)
from .semigroup import ElementSet, SemigroupSpec, element_set, same_spec

DEFAULT_BUDGET = 10**7
DEFAULT_CAP = 10**7


@dataclass(frozen=True)
class Problem:
    spec: SemigroupSpec
    base: ElementSet
    summands: tuple
    name: str = ""

    def __post_init__(self):
        if not self.summands:
            raise ProblemError("at least one summand set is required (r >= 1)", "A")
        if len(self.base) == 0:
            raise ProblemError("B must be nonempty", "B")
        for i, a in enumerate(self.summands):
            if len(a) == 0:
                raise ProblemError("summand sets must be nonempty", f"A[{i}]")
        for s in (self.base, *self.summands):
            if not same_spec(s.spec, self.spec):
                raise SpecMismatch("problem sets use different semigroups")

    @property
    def r(self) -> int:
        return len(self.summands)

    @property
    def k(self) -> tuple:
        return tuple(len(a) for a in self.summands)

    @property
    def s(self) -> int:
        return sum(self.k)

    def translate_base(self, t) -> "Problem":
        add = self.spec.adder
        base = ElementSet(self.spec, frozenset(add(b, t) for b in self.base))
        return Problem(self.spec, base, self.summands, self.name)


def make_problem(spec: SemigroupSpec, B: Iterable, A: Sequence[Iterable], name="") -> Problem:
    return Problem(
        spec, element_set(spec, B), tuple(element_set(spec, a) for a in A), name
    )


def integer_problem(B, *A, name="") -> Problem:
    """Problem over Z (N0 when all inputs are nonnegative) from plain int lists."""
    from .semigroup import integers

    return make_problem(integers(1), B, A, name)


def set_sum(X: ElementSet, Y: ElementSet) -> ElementSet:
    """Minkowski sum {x + y}."""
    if not same_spec(X.spec, Y.spec):
        raise SpecMismatch()
    if not X.elements or not Y.elements:
        raise ValueError("set_sum requires nonempty operands")
    add = X.spec.adder
    return ElementSet(X.spec, frozenset(add(x, y) for x in X.elements for y in Y.elements))


def h_fold(A: ElementSet, h: int) -> ElementSet:
    """hA, with 0A = {identity}."""
    if h < 0:
        raise ValueError("h must be nonnegative")
    if not A.elements:
        raise ValueError("h_fold requires a nonempty set")
    out = ElementSet(A.spec, frozenset([A.spec.identity]))
    for _ in range(h):
        out = set_sum(out, A)
    return out


def _check_h(p: Problem, h) -> tuple:
    h = tuple(int(x) for x in h)
    if len(h) != p.r:
        raise DimensionMismatch(p.r, len(h))
    if any(x < 0 for x in h):
        raise ValueError(f"exponents must be nonnegative, got {h}")
    return h


def combined_sumset(p: Problem, h) -> ElementSet:
    """B + h_1 A_1 + ... + h_r A_r, computed from scratch."""
    h = _check_h(p, h)
    out = p.base
    for a, hi in zip(p.summands, h):
        if hi:
            out = set_sum(out, h_fold(a, hi))
    return out


def symbol_count(p: Problem, h) -> int:
    """|B| * prod C(h_i + k_i - 1, k_i - 1): the number of formal sums."""
    return len(p.base) * prod(comb(hi + ki - 1, ki - 1) for hi, ki in zip(h, p.k))


def brute_force_sumset(p: Problem, h, cap: int = DEFAULT_CAP) -> ElementSet:
    """Enumerate every multiset of size h_i from each A_i and every b in B.

    Shares nothing with the set-sum machinery except the semigroup operation.
    """
    h = _check_h(p, h)
    count = symbol_count(p, h)
    if count > cap:
        raise EnumerationCapExceeded(count, cap)
    add = p.spec.adder
    e = p.spec.identity

    def multiset_sums(A, n):
        out = set()
        for combo in itertools.combinations_with_replacement(sorted(A.elements), n):
            acc = e
            for a in combo:
                acc = add(acc, a)
            out.add(acc)
        return out

    parts = [sorted(multiset_sums(A, hi)) for A, hi in zip(p.summands, h)]
    result = set()
    for b in p.base.elements:
        for us in itertools.product(*parts):
            acc = b
            for u in us:
                acc = add(acc, u)
            result.add(acc)
    return ElementSet(p.spec, frozenset(result))


@dataclass
class GrowthTable:
    """gamma(h) for every h in the box prod [0, H_i]; optionally the sets too."""

    box: tuple
    gamma: dict
    problem: Problem | None = None
    sets: dict = field(default_factory=dict)

    @property
    def r(self) -> int:
        return len(self.box)

    def points(self):
        return box_points(self.box)

    def __getitem__(self, h):
        if isinstance(h, int):
            h = (h,)
        return self.gamma[tuple(h)]

    def values(self) -> list:
        """Gamma in lexicographic h order."""
        return [self.gamma[h] for h in self.points()]

    def to_csv(self) -> str:
        buf = io.StringIO()
        header = [f"h_{i + 1}" for i in range(self.r)] + ["gamma"]
        buf.write(",".join(header) + "\n")
        for h in self.points():
            buf.write(",".join(str(v) for v in (*h, self.gamma[h])) + "\n")
        return buf.getvalue()


def box_points(box) -> Iterable[tuple]:
    return itertools.product(*(range(H + 1) for H in box))


def _check_box(p: Problem, box) -> tuple:
    if isinstance(box, int):
        box = (box,) * p.r
    box = tuple(int(x) for x in box)
    if len(box) != p.r:
        raise DimensionMismatch(p.r, len(box))
    if any(x < 0 for x in box):
        raise ValueError(f"box bounds must be nonnegative, got {box}")
    return box


def growth_table(
    p: Problem,
    box,
    mode: str = "memoized",
    *,
    order: Sequence[int] | None = None,
    retain=None,
    budget: int = DEFAULT_BUDGET,
) -> GrowthTable:
    """Compute gamma over the box prod [0, H_i].

    ``order`` is a permutation of the coordinates: the memoized sweep is
    lexicographic with ``order[0]`` slowest, and each point is reached from
    the predecessor obtained by decrementing its last nonzero coordinate in
    that order. A set is dropped as soon as every successor that needs it has
    been computed, so only about one hyperplane of the box is live at a time.

    ``retain`` is an iterable of points whose sets are kept in ``table.sets``,
    or ``"all"``. ``budget`` bounds the number of live elements.
    """
    box = _check_box(p, box)
    r = p.r
    if retain == "all":
        keep = None
    else:
        keep = {tuple(h) for h in (retain or ())}

    def want(h):
        return keep is None or h in keep

    gamma = {}
    sets = {}
    if mode == "brute":
        for h in box_points(box):
            S = combined_sumset(p, h)
            if len(S) > budget:
                raise BudgetExceeded(h, len(S), budget)
            gamma[h] = len(S)
            if want(h):
                sets[h] = S
        return GrowthTable(box, gamma, p, sets)
    if mode != "memoized":
        raise ValueError(f"unknown mode {mode!r}")

    order = tuple(range(r)) if order is None else tuple(order)
    if sorted(order) != list(range(r)):
        raise ValueError(f"order must be a permutation of 0..{r - 1}, got {order}")
    pos = {c: i for i, c in enumerate(order)}
    add = p.spec.adder
    summands = [a.elements for a in p.summands]

    def last_nonzero(h):
        for c in reversed(order):
            if h[c]:
                return c
        return None

    def consumers(h):
        # successors h + e_c whose predecessor is h
        j = last_nonzero(h)
        lo = 0 if j is None else pos[j]
        return sum(1 for c in order[lo:] if h[c] < box[c])

    live = {}
    refs = {}
    live_size = 0
    ranges = [range(box[c] + 1) for c in order]
    for q in itertools.product(*ranges):
        h = [0] * r
        for c, v in zip(order, q):
            h[c] = v
        h = tuple(h)
        j = last_nonzero(h)
        if j is None:
            S = p.base.elements
        else:
            prev = h[:j] + (h[j] - 1,) + h[j + 1:]
            P = live[prev]
            A = summands[j]
            S = frozenset(add(x, a) for x in P for a in A)
            refs[prev] -= 1
            if refs[prev] == 0:
                del live[prev], refs[prev]
                live_size -= len(P)
        gamma[h] = len(S)
        if want(h):
            sets[h] = ElementSet(p.spec, S)
        n = consumers(h)
        if n:
            live[h] = S
            refs[h] = n
            live_size += len(S)
            if live_size > budget:
                raise BudgetExceeded(h, live_size, budget)
    return GrowthTable(box, gamma, p, sets)


def oracle_check(
    p: Problem, box, cap: int = DEFAULT_CAP, table: GrowthTable | None = None,
    budget: int = DEFAULT_BUDGET,
):
    """Compare a memoized table against brute mode and, where the enumeration
    cap allows, against multiset enumeration.

    Returns ``(ok, divergence)`` where divergence is ``None`` or a dict naming
    the first point (lexicographic) at which the routes disagree. ``table``
    lets callers inject a precomputed (e.g. cached) memoized table.
    """
    box = _check_box(p, box)
    memo = table if table is not None else growth_table(p, box, budget=budget)
    enumerated = 0
    for h in box_points(box):
        brute = len(combined_sumset(p, h))
        got = memo.gamma.get(h)
        if got != brute:
            return False, {"h": list(h), "memoized": got, "brute": brute, "route": "brute"}
        if symbol_count(p, h) <= cap:
            enum = len(brute_force_sumset(p, h, cap))
            enumerated += 1
            if enum != got:
                return False, {
                    "h": list(h), "memoized": got, "enumerated": enum, "route": "enumeration",
                }
    return True, {"points": len(memo.gamma), "enumerated": enumerated}
