"""Asymptotic structure of sumsets of integers.

For normalized problems over N0 (0 in every set, gcd of the summands 1) the
sumset at large h is C u [c, F(h) - d] u (F(h) - D) with F(h) the maximum
element b* + sum a*_i h_i. This module finds C, D, c, d and the deficiency
Delta per instance, and computes Frobenius numbers.

Sumsets here are Python ints used as bitsets (bit x set iff x is present), a
representation unrelated to the generic engine in :mod:`sumset`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd

from .errors import EmptyGenerators, GcdNotOne, NotStabilized, ProblemError
from .growth import linear_poly, poly_add, poly_equal


@dataclass(frozen=True)
class NormalizedIntegerProblem:
    base: tuple
    summands: tuple
    base_shift: int
    summand_shifts: tuple
    g: int

    @property
    def r(self) -> int:
        return len(self.summands)

    @property
    def b_star(self) -> int:
        return max(self.base)

    @property
    def a_star(self) -> tuple:
        return tuple(max(a) for a in self.summands)

    def top(self, h) -> int:
        """F(h) = b* + sum a*_i h_i, the largest element of the sumset."""
        return self.b_star + sum(a * x for a, x in zip(self.a_star, h))

    def reflected(self) -> "NormalizedIntegerProblem":
        """(b* - B; a*_1 - A_1, ...), which swaps the roles of low and high gaps."""
        return NormalizedIntegerProblem(
            tuple(sorted(self.b_star - b for b in self.base)),
            tuple(tuple(sorted(max(a) - x for x in a)) for a in self.summands),
            0, (0,) * self.r, self.g,
        )


def _as_ints(values, where):
    out = []
    for j, v in enumerate(values):
        if isinstance(v, (list, tuple)):
            if len(v) != 1:
                raise ProblemError("integer problems need 1-dimensional elements", f"{where}[{j}]")
            v = v[0]
        out.append(int(v))
    if not out:
        raise ProblemError("sets must be nonempty", where)
    return out


def normalize(B, A) -> NormalizedIntegerProblem:
    """Translate every set so its minimum is 0; require gcd(A_1 u ... u A_r) = 1.

    ``B`` and each ``A[i]`` may be int lists, lists of 1-tuples, or
    :class:`~sumsetgrowth.semigroup.ElementSet` objects over Z.
    """
    if not A:
        raise ProblemError("at least one summand set is required", "A")
    B = _as_ints(B, "B")
    A = [_as_ints(a, f"A[{i}]") for i, a in enumerate(A)]
    bs = min(B)
    shifts = tuple(min(a) for a in A)
    base = tuple(sorted({b - bs for b in B}))
    summands = tuple(tuple(sorted({x - s for x in a})) for a, s in zip(A, shifts))
    g = reduce(gcd, (x for a in summands for x in a), 0)
    if g != 1:
        raise GcdNotOne(g)
    return NormalizedIntegerProblem(base, summands, bs, shifts, g)


def from_problem(p) -> NormalizedIntegerProblem:
    """Normalize a :class:`~sumsetgrowth.sumset.Problem` over Z."""
    if p.spec.is_table or p.spec.moduli != (0,):
        raise ProblemError("integer structure needs a problem over Z (or N0)", "semigroup")
    return normalize(list(p.base), [list(a) for a in p.summands])


def _mask(values) -> int:
    m = 0
    for v in values:
        m |= 1 << v
    return m


def _bitset_sum(x: int, a) -> int:
    out = 0
    for v in a:
        out |= x << v
    return out


def _members(x: int, lo: int, hi: int) -> set:
    return {v for v in range(lo, hi + 1) if (x >> v) & 1}


@dataclass
class StructureReport:
    c: int
    C: tuple
    d: int
    D: tuple
    delta: int
    h_star: tuple
    G_low: tuple
    G_top: tuple
    b_star: int
    a_star: tuple
    certified: list = field(default_factory=list)
    window: int = 2

    def top(self, h) -> int:
        return self.b_star + sum(a * x for a, x in zip(self.a_star, h))

    def predicted(self, h) -> set:
        """C u [c, F(h) - d] u (F(h) - D)."""
        F = self.top(h)
        return set(self.C) | set(range(self.c, F - self.d + 1)) | {F - x for x in self.D}

    def predicted_gamma(self, h) -> int:
        return sum(self.a_star[i] * h[i] for i in range(len(h))) + self.b_star + 1 - self.delta

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "C": list(self.C),
            "d": self.d,
            "D": list(self.D),
            "Delta": self.delta,
            "G_low": list(self.G_low),
            "G_top": list(self.G_top),
            "b_star": self.b_star,
            "a_star": list(self.a_star),
            "h_star": list(self.h_star),
            "certified_h": [list(h) for h in self.certified],
            "window": self.window,
        }


def gap_sets(sumset: int, F: int) -> tuple:
    """(G_low, G_top) for a bitset sumset with maximum F, split at F // 2."""
    mid = F // 2
    low = tuple(x for x in range(mid + 1) if not (sumset >> x) & 1)
    top = tuple(sorted(F - x for x in range(mid + 1, F + 1) if not (sumset >> x) & 1))
    return low, top


def diagonal_sumsets(p: NormalizedIntegerProblem, max_threshold: int):
    """Yield (tau, bitset) for h = (tau, ..., tau), tau = 0..T."""
    S = _mask(p.base)
    for tau in range(max_threshold + 1):
        yield tau, S
        for a in p.summands:
            S = _bitset_sum(S, a)


def structure_sets(p: NormalizedIntegerProblem, max_threshold: int = 50, window: int = 2) -> StructureReport:
    """Find the stable gap sets along the diagonal and derive c, C, d, D, Delta.

    Certified once G_low and G_top stay unchanged over ``window`` consecutive
    diagonal steps with a gap-free middle interval.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    history = []
    for tau, S in diagonal_sumsets(p, max_threshold):
        h = (tau,) * p.r
        F = p.top(h)
        low, top = gap_sets(S, F)
        # gaps touching the split point mean the two ends have not separated
        # yet; otherwise [max(G_low)+1, F - max(G_top) - 1] is gap-free
        hi_low = max(low, default=-1)
        hi_top = max(top, default=-1)
        clean = hi_low < F // 2 and F - hi_top > F // 2 + 1
        history.append((h, low, top, clean))
        run = history[-(window + 1):]
        if len(run) == window + 1 and all(
            x[1] == low and x[2] == top and x[3] for x in run
        ):
            h_star = run[0][0]
            c = hi_low + 1 if low else 0
            C = tuple(x for x in range(c - 1) if x not in low) if low else ()
            d = hi_top + 1 if top else 0
            D = tuple(x for x in range(d - 1) if x not in top) if top else ()
            return StructureReport(
                c, C, d, D, len(low) + len(top), h_star, low, top,
                p.b_star, p.a_star, [x[0] for x in run], window,
            )
    raise NotStabilized(max_threshold, "gap sets did not stabilize on the diagonal")


def frobenius_table(generators) -> tuple:
    """(Frobenius number, number of gaps) by dynamic programming on [0, min*max]."""
    gens = sorted({int(g) for g in generators})
    if not gens:
        raise EmptyGenerators()
    if gens[0] < 1:
        raise ValueError(f"generators must be positive, got {gens[0]}")
    g = reduce(gcd, gens)
    if g != 1:
        raise GcdNotOne(g)
    bound = gens[0] * gens[-1]
    reach = bytearray(bound + 1)
    reach[0] = 1
    for x in range(1, bound + 1):
        for a in gens:
            if a > x:
                break
            if reach[x - a]:
                reach[x] = 1
                break
    gaps = [x for x in range(bound + 1) if not reach[x]]
    return (gaps[-1] if gaps else -1), len(gaps)


def frobenius_number(generators) -> int:
    """Largest integer not a nonnegative combination of the generators (-1 if none)."""
    return frobenius_table(generators)[0]


def verify_multilinear(p: NormalizedIntegerProblem, report: StructureReport, fit) -> tuple:
    """Check fit == sum a*_i h_i + b* + 1 - Delta and the decomposition at certified h.

    ``fit`` is a :class:`~sumsetgrowth.growth.FittedPolynomial` (or a bare
    coefficient dict). Returns ``(ok, discrepancies)``.
    """
    coeffs = getattr(fit, "coefficients", fit)
    expected = linear_poly(p.a_star, p.b_star + 1 - report.delta)
    problems = []
    if not poly_equal(coeffs, expected):
        diff = poly_add(coeffs, expected, -1)
        problems.append({
            "kind": "polynomial",
            "difference": {str(list(e)): str(c) for e, c in sorted(diff.items())},
        })
    certified = set(report.certified)
    for tau, S in diagonal_sumsets(p, max(h[0] for h in certified)):
        h = (tau,) * p.r
        if h not in certified:
            continue
        actual = _members(S, 0, p.top(h))
        pred = report.predicted(h)
        if actual != pred:
            problems.append({
                "kind": "decomposition", "h": list(h),
                "missing": sorted(actual - pred), "extra": sorted(pred - actual),
            })
        if len(actual) != report.predicted_gamma(h):
            problems.append({
                "kind": "gamma", "h": list(h), "gamma": len(actual),
                "formula": report.predicted_gamma(h),
            })
    return not problems, problems
