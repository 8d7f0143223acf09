"""Empirical CDFs and the two-sample Kolmogorov-Smirnov test."""

from dataclasses import dataclass

import numba
import numpy as np

__all__ = [
    "EmpiricalCdf",
    "KsResult",
    "ecdf",
    "ks_statistic",
    "ks_statistic_sorted",
    "ks_critical",
    "ks_test",
]


@dataclass(frozen=True)
class EmpiricalCdf:
    """Right-continuous step function ``x -> #(values <= x) / n``."""

    sorted_values: np.ndarray

    @property
    def n(self):
        return self.sorted_values.size

    def __call__(self, x):
        counts = np.searchsorted(self.sorted_values, x, side="right")
        return counts / self.n


@dataclass(frozen=True)
class KsResult:
    statistic: float
    critical: float
    alpha: float
    n: int
    m: int

    @property
    def reject(self):
        return self.statistic > self.critical


def _as_sample(x, name):
    x = np.asarray(x, dtype=float).ravel()
    if x.size == 0:
        raise ValueError(f"{name} is empty")
    if np.isnan(x).any():
        raise ValueError(f"{name} contains NaN")
    return x


def ecdf(sample):
    """Build the empirical CDF of a nonempty sample (ties allowed)."""
    x = np.sort(_as_sample(sample, "sample"))
    x.setflags(write=False)
    return EmpiricalCdf(x)


@numba.njit(cache=True)
def _merge_gap(x, y, scale):
    # max |i m - j n| over pooled breakpoints of x and scale * y, both sorted
    n, m = x.size, y.size
    i = 0
    j = 0
    best = 0
    while i < n and j < m:
        yj = scale * y[j]
        v = x[i] if x[i] < yj else yj
        while i < n and x[i] <= v:
            i += 1
        while j < m and scale * y[j] <= v:
            j += 1
        gap = abs(i * m - j * n)
        if gap > best:
            best = gap
    # once one sample is exhausted the gap only shrinks towards 0
    return best


@numba.njit(cache=True)
def _profile_gaps(x, y, scales):
    out = np.empty(scales.size, dtype=np.int64)
    for k in range(scales.size):
        out[k] = _merge_gap(x, y, scales[k])
    return out


def ks_statistic_sorted(x, y, scale=1.0):
    """
    KS statistic between sorted `x` and ``scale * y`` (sorted `y`, scale > 0).

    A single merge scan over the pooled breakpoints; at each breakpoint all
    tied values from both samples are consumed before the gap is measured
    (right-continuous ECDFs). The gap is kept in integer units of
    ``1 / (n m)``, so the result is exactly ``k / (n m)``.
    """
    x = np.ascontiguousarray(x, dtype=float)
    y = np.ascontiguousarray(y, dtype=float)
    return _merge_gap(x, y, float(scale)) / (x.size * y.size)


def ks_statistic(x, y):
    """Two-sample statistic ``sup_x |F_x(t) - F_y(t)|``."""
    x = np.sort(_as_sample(x, "x"))
    y = np.sort(_as_sample(y, "y"))
    return ks_statistic_sorted(x, y)


def ks_critical(alpha, n, m):
    """
    Large-sample critical value ``sqrt(-ln(alpha/2) (1 + m/n) / (2m))``.

    The null of equal distributions is rejected when the statistic exceeds it.
    """
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if n < 1 or m < 1:
        raise ValueError("sample sizes must be positive")
    return float(np.sqrt(-np.log(alpha / 2.0) * (1.0 + m / n) / (2.0 * m)))


def ks_test(x, y, alpha=0.05):
    """Statistic, critical value and verdict at level `alpha`."""
    x = _as_sample(x, "x")
    y = _as_sample(y, "y")
    crit = ks_critical(alpha, x.size, y.size)
    return KsResult(ks_statistic(x, y), crit, float(alpha), x.size, y.size)
