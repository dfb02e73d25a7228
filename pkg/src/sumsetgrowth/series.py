"""Truncated growth series and their numerators.

The series sum_h gamma(h) z^h times prod_i (1 - z_i)^{k_i} should be a
polynomial. Multiplying by (1 - z_i) is a backward difference along axis i, so
the product is exact on the whole truncation box (the coefficient at h only
uses gamma at h' <= h).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import BoxTooSmall, DimensionMismatch
from .growth import DEFAULT_WINDOW, detect_stabilization
from .sumset import DEFAULT_BUDGET, GrowthTable, Problem, growth_table

MIN_MARGIN = 2


@dataclass
class TruncatedSeries:
    coeffs: np.ndarray  # object dtype, exact ints

    @property
    def r(self) -> int:
        return self.coeffs.ndim

    @property
    def box(self) -> tuple:
        return tuple(n - 1 for n in self.coeffs.shape)

    def __add__(self, other):
        return TruncatedSeries(self.coeffs + other.coeffs)


def to_series(table: GrowthTable) -> TruncatedSeries:
    arr = np.empty(tuple(H + 1 for H in table.box), dtype=object)
    for h in table.points():
        arr[h] = int(table.gamma[h])
    return TruncatedSeries(arr)


def series_from_array(values) -> TruncatedSeries:
    arr = np.array(values, dtype=object)
    return TruncatedSeries(arr)


def multiply_one_minus(coeffs: np.ndarray, axis: int, times: int = 1) -> np.ndarray:
    """coeffs * (1 - z_axis)^times, truncated to the same box."""
    out = coeffs.copy()
    for _ in range(times):
        a = np.moveaxis(out, axis, 0)
        nxt = a.copy()
        nxt[1:] = a[1:] - a[:-1]
        out = np.moveaxis(nxt, 0, axis)
    return out


@dataclass
class NumeratorReport:
    coeffs: np.ndarray
    k: tuple
    box: tuple
    beta: tuple | None
    degree_box: tuple | None
    margin: tuple
    terminated: bool
    anomalies: list = field(default_factory=list)

    def support(self) -> list:
        """Nonzero (exponent, coefficient) pairs in lexicographic exponent order."""
        return [
            (tuple(int(x) for x in e), int(self.coeffs[tuple(e)]))
            for e in sorted(map(tuple, np.argwhere(self.coeffs != 0)))
        ]

    @property
    def degree(self) -> int | None:
        """Total degree of P (max |m| over the support)."""
        sup = self.support()
        return max(sum(e) for e, _ in sup) if sup else None

    def to_dict(self) -> dict:
        return {
            "k": list(self.k),
            "box": list(self.box),
            "terms": [{"exponent": list(e), "coefficient": str(c)} for e, c in self.support()],
            "beta": None if self.beta is None else list(self.beta),
            "degree_box": None if self.degree_box is None else list(self.degree_box),
            "total_degree": self.degree,
            "margin": list(self.margin),
            "terminated": self.terminated,
            "anomalies": self.anomalies,
        }


def numerator(series: TruncatedSeries, k) -> NumeratorReport:
    """Multiply by prod (1 - z_i)^{k_i} and inspect the support.

    ``terminated`` requires at least MIN_MARGIN zero layers past the support
    in every direction.
    """
    k = tuple(int(x) for x in k)
    if series.coeffs.size == 0 or series.r == 0:
        raise BoxTooSmall(0, "empty series")
    if len(k) != series.r:
        raise DimensionMismatch(series.r, len(k))
    box = series.box
    for i, (H, ki) in enumerate(zip(box, k)):
        if H < ki:
            raise BoxTooSmall(i, f"box extent {H} < k_{i + 1} = {ki}")
    out = series.coeffs
    for i, ki in enumerate(k):
        out = multiply_one_minus(out, i, ki)
    nz = np.argwhere(out != 0)
    anomalies = []
    if len(nz) == 0:
        beta = degree_box = None
        margin = tuple(H + 1 for H in box)
    else:
        beta = tuple(int(x) for x in nz.min(axis=0))
        degree_box = tuple(int(x) for x in nz.max(axis=0))
        margin = tuple(H - d for H, d in zip(box, degree_box))
        if any(beta):
            anomalies.append(f"beta = {list(beta)} is not the zero vector")
        if out[beta] == 0:
            anomalies.append("coefficient at z^beta vanishes")
    terminated = all(m >= MIN_MARGIN for m in margin)
    return NumeratorReport(out, k, box, beta, degree_box, margin, terminated, anomalies)


def tail_from_numerator(rep: NumeratorReport, h) -> int:
    """gamma(h) reconstructed from P: sum_m P_m prod C(h_i - m_i + k_i - 1, k_i - 1)."""
    total = 0
    for e, c in rep.support():
        term = c
        for x, m, ki in zip(h, e, rep.k):
            n = x - m
            if n < 0:
                term = 0
                break
            term *= comb(n + ki - 1, ki - 1)
        total += term
    return total


def rational_form_check(
    p: Problem,
    box,
    *,
    max_threshold: int | None = None,
    window: int = DEFAULT_WINDOW,
    budget: int = DEFAULT_BUDGET,
    table: GrowthTable | None = None,
) -> dict:
    """growth table -> series -> numerator, then cross-check against the fit.

    If the numerator terminated with degree box D, the fitted polynomial from
    :func:`detect_stabilization` has to match gamma at every h >= D + 1 in the
    box.
    """
    if isinstance(box, int):
        box = (box,) * p.r
    box = tuple(box)
    if len(box) != p.r:
        raise DimensionMismatch(p.r, len(box))
    for i, (H, ki) in enumerate(zip(box, p.k)):
        if H < ki:
            raise BoxTooSmall(i, f"box extent {H} < k_{i + 1} = {ki}")
    if table is None:
        table = growth_table(p, box, budget=budget)
    rep = numerator(to_series(table), p.k)
    summary = {
        "numerator": rep.to_dict(),
        "terminated": rep.terminated,
        "beta": None if rep.beta is None else list(rep.beta),
        "degree_box": None if rep.degree_box is None else list(rep.degree_box),
        "fit": None,
        "tail_agrees": None,
        "tail_checked": 0,
        "tail_mismatches": [],
    }
    if not rep.terminated:
        return summary
    stab = detect_stabilization(p, max_threshold, window, budget=budget)
    summary["fit"] = stab.to_dict()
    if not stab.stabilized:
        summary["tail_agrees"] = False
        return summary
    fit = stab.fitted
    lo = tuple(d + 1 for d in rep.degree_box)
    checked = 0
    for h in table.points():
        if all(x >= l for x, l in zip(h, lo)):
            checked += 1
            g = table.gamma[h]
            v = fit.eval_int(h)
            w = tail_from_numerator(rep, h)
            if not (g == v == w):
                summary["tail_mismatches"].append(
                    {"h": list(h), "gamma": g, "fit": v, "numerator": w}
                )
    summary["tail_checked"] = checked
    summary["tail_agrees"] = not summary["tail_mismatches"]
    return summary
