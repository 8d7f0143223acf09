"""Slow, independent reference computations used by the tests."""

import numpy as np
from scipy.stats import norm


def brute_ks(x, y):
    """O(n m) KS statistic: evaluate both ECDFs by direct counting at every pooled point."""
    x = list(map(float, x))
    y = list(map(float, y))
    n, m = len(x), len(y)
    best = 0
    for t in x + y:
        cx = sum(1 for v in x if v <= t)
        cy = sum(1 for v in y if v <= t)
        best = max(best, abs(cx * m - cy * n))
    return best / (n * m)


def gaussian_diameter(h, h0, a, xs=None):
    """``sup_x |Phi(x) - Phi(a**(h - h0) x)|`` by a fine grid search over x."""
    if xs is None:
        xs = np.linspace(-8.0, 8.0, 200_001)
    r = float(a) ** (h - h0)
    return float(np.max(np.abs(norm.cdf(xs) - norm.cdf(r * xs))))


def gaussian_diameter_closed(h, h0, a):
    """Closed form of :func:`gaussian_diameter` (stationary point of the gap)."""
    r = float(a) ** (h - h0)
    if r == 1.0:
        return 0.0
    x = np.sqrt(2.0 * np.log(r) / (r * r - 1.0))
    return float(abs(norm.cdf(x) - norm.cdf(r * x)))


def direct_acov(z, lag):
    """Mean-known (zero) autocovariance estimate at one lag, divided by n - lag."""
    z = np.asarray(z, dtype=float)
    return float(np.dot(z[: z.size - lag], z[lag:]) / (z.size - lag))


def fgn_ess_closed(n, h):
    """Effective sample size of n fGn points: n**2 / Var(B_n) = n**(2 - 2h)."""
    return float(n) ** (2.0 - 2.0 * h)
