"""Seeded random problems for property tests, acceptance runs and surveys."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .semigroup import FreeInteger, Modular, product_spec, table_spec
from .sumset import Problem, make_problem


# -- commutative monoid tables ------------------------------------------------

def cyclic_monoid_table(index: int, period: int) -> list:
    """<x | x^(index+period) = x^index>, elements 0..index+period-1 (0 = identity).

    index=0 gives Z/period; period=1 gives capped addition.
    """
    n = index + period

    def red(s):
        return s if s < n else index + (s - index) % period

    return [[red(i + j) for j in range(n)] for i in range(n)]


def max_semilattice_table(n: int) -> list:
    return [[max(i, j) for j in range(n)] for i in range(n)]


def union_semilattice_table(bits: int) -> list:
    n = 1 << bits
    return [[i | j for j in range(n)] for i in range(n)]


def null_monoid_table(n: int) -> list:
    """Zero semigroup on n-1 elements (every product is the zero 1) plus identity 0."""
    t = [[1] * n for _ in range(n)]
    t[0] = list(range(n))
    for i in range(n):
        t[i][0] = i
    return t


def direct_product_table(t1, t2) -> list:
    n1, n2 = len(t1), len(t2)
    n = n1 * n2
    return [
        [t1[i // n2][j // n2] * n2 + t2[i % n2][j % n2] for j in range(n)]
        for i in range(n)
    ]


def relabel(table, identity, perm) -> tuple:
    """Apply the bijection i -> perm[i] to a table."""
    n = len(table)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    out = [[perm[table[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
    return out, perm[identity]


def random_table(rng: random.Random, max_order: int = 8):
    """A validated commutative monoid table of order <= max_order."""
    family = rng.choice(["cyclic", "cyclic", "semilattice", "union", "null", "product"])
    if family == "cyclic":
        n = rng.randint(1, max_order)
        index = rng.randint(0, n - 1)
        t = cyclic_monoid_table(index, n - index)
    elif family == "semilattice":
        t = max_semilattice_table(rng.randint(1, max_order))
    elif family == "union":
        t = union_semilattice_table(rng.randint(1, 3))
    elif family == "null":
        t = null_monoid_table(rng.randint(2, max_order))
    else:
        n1 = rng.randint(2, 4)
        n2 = rng.randint(2, max(2, max_order // n1))
        i1, i2 = rng.randint(0, n1 - 1), rng.randint(0, n2 - 1)
        t = direct_product_table(cyclic_monoid_table(i1, n1 - i1), cyclic_monoid_table(i2, n2 - i2))
    perm = list(range(len(t)))
    rng.shuffle(perm)
    t, e = relabel(t, 0, perm)
    return table_spec(t, e)


# -- problems -------------------------------------------------------------------

@dataclass
class Instance:
    family: str
    problem: Problem

    @property
    def finite(self) -> bool:
        return self.family in ("table", "cyclic")


def _subset(rng, pool, kmax):
    k = rng.randint(1, min(kmax, len(pool)))
    return rng.sample(pool, k)


def random_instance(rng: random.Random, family: str, max_r: int = 3, max_k: int = 4) -> Instance:
    if family == "n0":
        r = rng.randint(1, max_r)
        top = {1: 12, 2: 6}.get(r, 4)
        pool = list(range(top + 1))
        spec = product_spec(FreeInteger())
        B = _subset(rng, pool, 3)
        A = [_subset(rng, pool, max_k) for _ in range(r)]
    elif family == "z2":
        r = rng.randint(1, min(2, max_r))
        pool = [(x, y) for x in range(-1, 3) for y in range(-1, 2)]
        spec = product_spec(FreeInteger(), FreeInteger())
        B = _subset(rng, pool, 2)
        A = [_subset(rng, pool, max_k) for _ in range(r)]
    elif family == "cyclic":
        r = rng.randint(1, max_r)
        m = rng.randint(2, 14)
        spec = product_spec(Modular(m))
        pool = list(range(m))
        B = _subset(rng, pool, 3)
        A = [_subset(rng, pool, max_k) for _ in range(r)]
    elif family == "table":
        r = rng.randint(1, max_r)
        spec = random_table(rng)
        pool = list(range(spec.order))
        B = _subset(rng, pool, 3)
        A = [_subset(rng, pool, max_k) for _ in range(r)]
    else:
        raise ValueError(f"unknown family {family!r}")
    return Instance(family, make_problem(spec, B, A, name=family))


FAMILIES = ("n0", "z2", "cyclic", "table")


def random_suite(n: int = 200, seed: int = 20240611) -> list:
    """n instances cycling through the families, reproducible from the seed."""
    rng = random.Random(seed)
    return [random_instance(rng, fam) for fam, _ in zip(itertools.cycle(FAMILIES), range(n))]


def enumeration_box(p: Problem, max_extent: int = 6, budget: int = 100_000) -> tuple:
    """Largest uniform-ish box (<= max_extent per coordinate) whose total
    symbol count stays under ``budget``; shrinks the widest coordinate first."""
    from math import comb

    box = [max_extent] * p.r

    def total(b):
        out = len(p.base)
        for H, k in zip(b, p.k):
            out *= sum(comb(h + k - 1, k - 1) for h in range(H + 1))
        return out

    while total(box) > budget and max(box) > 1:
        i = max(range(p.r), key=lambda j: (box[j], p.k[j]))
        box[i] -= 1
    return tuple(box)
