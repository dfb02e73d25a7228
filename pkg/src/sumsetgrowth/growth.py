"""Eventual polynomiality of growth tables: difference operators, exact
tensor-product Newton interpolation, and an empirical threshold search.

Everything here is exact (int / Fraction). Polynomials are dicts mapping an
exponent tuple to a nonzero Fraction coefficient.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .errors import BoxTooSmall, DimensionMismatch, GridOutsideBox
from .sumset import DEFAULT_BUDGET, GrowthTable, Problem, box_points, growth_table

DEFAULT_WINDOW = 2


def default_max_threshold(r: int) -> int:
    return 50 if r == 1 else 12


# -- polynomial helpers ------------------------------------------------------

def _binom(n: int, m: int) -> int:
    """C(n, m) for any integer n and m >= 0 (falling factorial / m!)."""
    if n >= 0:
        return comb(n, m)
    return (-1) ** m * comb(m - n - 1, m)


def _falling_poly(shift: int, m: int) -> list:
    """Coefficients (by power of x) of C(x - shift, m)."""
    coeffs = [Fraction(1)]
    for j in range(m):
        # multiply by (x - shift - j)
        c0 = -(shift + j)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for p, c in enumerate(coeffs):
            nxt[p] += c * c0
            nxt[p + 1] += c
        coeffs = nxt
    f = factorial(m)
    return [c / f for c in coeffs]


def poly_add(p: dict, q: dict, scale=1) -> dict:
    out = dict(p)
    for e, c in q.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = Fraction(v)
        else:
            out.pop(e, None)
    return out


def poly_equal(p: dict, q: dict) -> bool:
    return not poly_add(p, q, -1)


def poly_degree(p: dict, i: int) -> int:
    """Degree in variable i; -1 for the zero polynomial."""
    return max((e[i] for e in p), default=-1)


def poly_eval(p: dict, h) -> Fraction:
    total = Fraction(0)
    for e, c in p.items():
        term = c
        for x, k in zip(h, e):
            if k:
                term *= x ** k
        total += term
    return total


def linear_poly(coeffs, constant) -> dict:
    """sum coeffs[i] * z_i + constant."""
    r = len(coeffs)
    out = {}
    if constant:
        out[(0,) * r] = Fraction(constant)
    for i, a in enumerate(coeffs):
        if a:
            e = [0] * r
            e[i] = 1
            out[tuple(e)] = Fraction(a)
    return out


def format_poly(p: dict, names=None) -> str:
    if not p:
        return "0"
    r = len(next(iter(p)))
    if names is None:
        names = ["h"] if r == 1 else [f"h{i + 1}" for i in range(r)]
    terms = []
    for e in sorted(p, key=lambda e: (-sum(e), tuple(-x for x in e))):
        c = p[e]
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
        )
        mag = abs(c)
        if mono:
            s = mono if mag == 1 else f"{mag}*{mono}"
        else:
            s = str(mag)
        terms.append(("-" if c < 0 else "+", s))
    sign, first = terms[0]
    out = ("-" if sign == "-" else "") + first
    for sign, s in terms[1:]:
        out += f" {sign} {s}"
    return out


# -- tables -------------------------------------------------------------------

def finite_difference(table: GrowthTable, i: int) -> GrowthTable:
    """Forward difference f(h + e_i) - f(h) on the box shrunk by one in direction i."""
    if not 0 <= i < table.r:
        raise DimensionMismatch(table.r, i)
    if table.box[i] < 1:
        raise BoxTooSmall(i)
    box = table.box[:i] + (table.box[i] - 1,) + table.box[i + 1:]
    g = table.gamma
    out = {}
    for h in box_points(box):
        up = h[:i] + (h[i] + 1,) + h[i + 1:]
        out[h] = g[up] - g[h]
    return GrowthTable(box, out)


def iterated_difference(table: GrowthTable, i: int, n: int) -> GrowthTable:
    for _ in range(n):
        table = finite_difference(table, i)
    return table


def slice_thresholds(table: GrowthTable, k) -> tuple:
    """Per direction i, the least u such that the k_i-th difference in
    direction i vanishes at every h of the box with h_i >= u.

    Unlike the diagonal threshold this is uniform over *all* values of the
    other coordinates, small ones included. Returns None in a direction whose
    box is too short to show any vanishing difference.
    """
    out = []
    for i, ki in enumerate(k):
        if table.box[i] < ki:
            out.append(None)
            continue
        diff = iterated_difference(table, i, ki)
        last = max((h[i] for h, v in diff.gamma.items() if v), default=-1)
        u = last + 1
        out.append(u if u <= diff.box[i] else None)
    return tuple(out)


def _newton_coefficients(table: GrowthTable, base, bounds) -> np.ndarray:
    """Mixed forward differences Delta^m gamma(base) for 0 <= m <= bounds."""
    shape = tuple(d + 1 for d in bounds)
    grid = np.empty(shape, dtype=object)
    for m in np.ndindex(*shape):
        grid[m] = table.gamma[tuple(b + x for b, x in zip(base, m))]
    for axis, d in enumerate(bounds):
        a = np.moveaxis(grid, axis, 0)
        for j in range(1, d + 1):
            for k in range(d, j - 1, -1):
                a[k] = a[k] - a[k - 1]
    return grid


@dataclass
class FittedPolynomial:
    r: int
    coefficients: dict
    thresholds: tuple
    window: int
    degree_bounds: tuple
    base: tuple = ()
    newton: np.ndarray | None = field(default=None, repr=False)
    validated_box: tuple | None = None

    def __call__(self, h) -> Fraction:
        return evaluate(self, h)

    def degree(self, i: int) -> int:
        return poly_degree(self.coefficients, i)

    def eval_int(self, h) -> int:
        """Exact evaluation through the integer Newton form (fast path)."""
        if self.newton is None:
            v = evaluate(self, h)
            if v.denominator != 1:
                raise ValueError(f"non-integral value {v} at {h}")
            return v.numerator
        return _newton_eval(self.newton, self.base, h)

    def __str__(self):
        return format_poly(self.coefficients)

    def to_dict(self) -> dict:
        terms = [
            {"monomial": list(e), "num": str(c.numerator), "den": str(c.denominator)}
            for e, c in sorted(self.coefficients.items())
        ]
        out = {
            "r": self.r,
            "polynomial": str(self),
            "terms": terms,
            "thresholds": list(self.thresholds),
            "window": self.window,
            "degree_bounds": list(self.degree_bounds),
            "degrees": [self.degree(i) for i in range(self.r)],
            "interpolation_base": list(self.base),
        }
        if self.validated_box is not None:
            lo, hi = self.validated_box
            out["validated_box"] = {"lower": list(lo), "upper": list(hi)}
        return out


def _newton_eval(newton: np.ndarray, base, h) -> int:
    per_axis = [
        [_binom(x - b, m) for m in range(n)]
        for x, b, n in zip(h, base, newton.shape)
    ]
    total = 0
    for m in np.ndindex(*newton.shape):
        c = newton[m]
        if c:
            term = c
            for ax, mi in enumerate(m):
                term *= per_axis[ax][mi]
            total += term
    return total


def fit_polynomial(table: GrowthTable, base, bounds, window: int = DEFAULT_WINDOW) -> FittedPolynomial:
    """Interpolate gamma on the grid base + prod [0, bounds_i].

    Returns the unique polynomial of degree <= bounds_i in h_i through those
    points, with coefficients converted to the monomial basis.
    """
    r = table.r
    base = tuple(int(b) for b in base)
    bounds = tuple(int(d) for d in bounds)
    if len(base) != r or len(bounds) != r:
        raise DimensionMismatch(r, len(base) if len(base) != r else len(bounds))
    if any(d < 0 for d in bounds) or any(b < 0 for b in base):
        raise GridOutsideBox(f"base {base} / bounds {bounds} must be nonnegative")
    for i in range(r):
        if base[i] + bounds[i] > table.box[i]:
            raise GridOutsideBox(
                f"grid {base} + [0, {bounds}] leaves box {table.box} in direction {i}"
            )
    newton = _newton_coefficients(table, base, bounds)
    uni = [[_falling_poly(b, m) for m in range(d + 1)] for b, d in zip(base, bounds)]
    coeffs: dict = {}
    for m in np.ndindex(*newton.shape):
        c = newton[m]
        if not c:
            continue
        factors = [uni[i][mi] for i, mi in enumerate(m)]
        for e in itertools.product(*(range(len(f)) for f in factors)):
            v = c
            for i, ei in enumerate(e):
                v *= factors[i][ei]
            if v:
                coeffs[e] = coeffs.get(e, 0) + v
    coeffs = {e: Fraction(c) for e, c in coeffs.items() if c}
    return FittedPolynomial(r, coeffs, base, window, bounds, base, newton)


def evaluate(q: FittedPolynomial, h) -> Fraction:
    h = tuple(h)
    if len(h) != q.r:
        raise DimensionMismatch(q.r, len(h))
    return poly_eval(q.coefficients, h)


@dataclass
class StabilizationReport:
    status: str
    fitted: FittedPolynomial | None
    search_limit: int
    window: int
    box: tuple
    witnesses: list = field(default_factory=list)
    relaxed_thresholds: tuple | None = None
    table: GrowthTable | None = field(default=None, repr=False)

    @property
    def stabilized(self) -> bool:
        return self.status == "stabilized"

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "search_limit": self.search_limit,
            "window": self.window,
            "examined_box": list(self.box),
            "witnesses": self.witnesses,
        }
        if self.fitted is not None:
            out["fit"] = self.fitted.to_dict()
            out["relaxed_thresholds"] = list(self.relaxed_thresholds)
        return out


def _first_mismatch(fit: FittedPolynomial, table: GrowthTable, lower, upper):
    ranges = [range(lo, hi + 1) for lo, hi in zip(lower, upper)]
    for h in itertools.product(*ranges):
        v = fit.eval_int(h)
        if v != table.gamma[h]:
            return h, v
    return None


def detect_stabilization(
    p: Problem,
    max_threshold: int | None = None,
    window: int = DEFAULT_WINDOW,
    *,
    budget: int = DEFAULT_BUDGET,
    table: GrowthTable | None = None,
) -> StabilizationReport:
    """Search the diagonal t = (tau, ..., tau), tau = 0..T, for a threshold.

    The growth table is computed once on the box with extent T + d_i + w in
    direction i (d_i = k_i - 1). A candidate fitted on t + prod [0, d_i] is
    accepted only if it reproduces gamma at every lattice point h >= t of that
    box, which contains the window t + prod [0, d_i + w]. Afterwards each
    coordinate of the accepted threshold is lowered greedily while agreement
    on the examined box persists.
    """
    if max_threshold is None:
        max_threshold = default_max_threshold(p.r)
    if max_threshold < 0 or window < 1:
        raise ValueError("need max_threshold >= 0 and window >= 1")
    bounds = tuple(k - 1 for k in p.k)
    box = tuple(max_threshold + d + window for d in bounds)
    if table is None:
        table = growth_table(p, box, budget=budget)
    elif any(a < b for a, b in zip(table.box, box)):
        raise BoxTooSmall(-1, f"table box {table.box} smaller than required {box}")
    witnesses = []
    for tau in range(max_threshold + 1):
        t = (tau,) * p.r
        fit = fit_polynomial(table, t, bounds, window)
        bad = _first_mismatch(fit, table, t, box)
        if bad is not None:
            h, v = bad
            witnesses.append({"tau": tau, "h": list(h), "gamma": table.gamma[h], "fit": v})
            continue
        fit.validated_box = (t, box)
        relaxed = list(t)
        for i in range(p.r):
            while relaxed[i] > 0:
                trial = relaxed.copy()
                trial[i] -= 1
                if _first_mismatch(fit, table, trial, box) is not None:
                    break
                relaxed = trial
        return StabilizationReport(
            "stabilized", fit, max_threshold, window, box, witnesses, tuple(relaxed), table
        )
    return StabilizationReport("not_stabilized", None, max_threshold, window, box, witnesses,
                               table=table)
