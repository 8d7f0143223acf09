"""
Fractional Gaussian noise / fractional Brownian motion generation.

Paths are drawn by circulant embedding of the exact fGn autocovariance
(Davies-Harte / Wood-Chan), so the generated vector has precisely the
target covariance. The analytic autocovariance, the power spectrum and the
effective sample size live here as well since they are the validation
oracles for the generator.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import gamma

__all__ = [
    "FgnPath",
    "FbmPath",
    "IncrementSeries",
    "check_hurst",
    "gen_fgn",
    "fbm_from_fgn",
    "increments",
    "theoretical_acf",
    "spectral_density",
    "spectral_tail_bound",
    "ess",
    "sample_acf",
    "circulant_eigenvalues",
]

# relative tolerance on negative circulant eigenvalues (FFT round-off)
EIG_RTOL = 1e-10


def check_hurst(h):
    """Validate a Hurst exponent, 0 < h <= 1, and return it as float."""
    h = float(h)
    if not (0.0 < h <= 1.0) or not np.isfinite(h):
        raise ValueError(f"Hurst exponent must lie in (0, 1], got {h!r}")
    return h


def _check_scale(c):
    c = float(c)
    if not (c > 0.0 and np.isfinite(c)):
        raise ValueError(f"scale C must be a positive finite number, got {c!r}")
    return c


def _frozen(arr):
    arr = np.ascontiguousarray(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class FgnPath:
    """
    Fractional Gaussian noise sampled at unit spacing.

    `hurst` may be None for observed data whose exponent is unknown.
    """

    samples: np.ndarray
    hurst: float
    scale_c: float = 1.0
    seed: int = 0

    def __post_init__(self):
        samples = _frozen(self.samples)
        if samples.ndim != 1 or samples.size < 2:
            raise ValueError("an fGn path needs at least 2 samples")
        if not np.all(np.isfinite(samples)):
            raise ValueError("fGn samples must be finite")
        object.__setattr__(self, "samples", samples)
        if self.hurst is not None:
            object.__setattr__(self, "hurst", check_hurst(self.hurst))
        object.__setattr__(self, "scale_c", _check_scale(self.scale_c))

    def __len__(self):
        return self.samples.size


@dataclass(frozen=True)
class FbmPath:
    """Fractional Brownian motion levels B_0 = 0, B_1, ..., B_n."""

    samples: np.ndarray
    hurst: float
    scale_c: float = 1.0
    seed: int = 0

    def __post_init__(self):
        samples = _frozen(self.samples)
        if samples.ndim != 1 or samples.size < 2:
            raise ValueError("an fBm path needs at least 2 levels")
        if samples[0] != 0.0:
            raise ValueError("an fBm path starts at 0")
        object.__setattr__(self, "samples", samples)
        if self.hurst is not None:
            object.__setattr__(self, "hurst", check_hurst(self.hurst))
        object.__setattr__(self, "scale_c", _check_scale(self.scale_c))

    def __len__(self):
        return self.samples.size


@dataclass(frozen=True)
class IncrementSeries:
    """Overlapping increments ``B[j + a] - B[j]`` of a path at timescale a."""

    values: np.ndarray
    timescale_a: int
    source_length: int = field(default=0)

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values))
        if self.timescale_a < 1:
            raise ValueError("timescale must be >= 1")

    def __len__(self):
        return self.values.size


def theoretical_acf(h, a, c, lag):
    """
    Autocovariance of the increments ``B[t + a] - B[t]`` of an fBm.

    ``(c**2 / 2) * (|lag + a|^2h + |lag - a|^2h - 2 |lag|^2h)``

    `lag` may be an array. At lag 0 this is the increment variance
    ``c**2 * a**(2h)``.
    """
    h = check_hurst(h)
    if a <= 0:
        raise ValueError("timescale a must be positive")
    tau = np.abs(np.asarray(lag, dtype=float))
    two_h = 2.0 * h
    out = 0.5 * c**2 * (
        np.abs(tau + a) ** two_h + np.abs(tau - a) ** two_h - 2.0 * tau**two_h
    )
    return out if np.ndim(out) else float(out)


@lru_cache(maxsize=64)
def _eigenvalues(n, h):
    lags = np.arange(n + 1, dtype=float)
    gam = theoretical_acf(h, 1, 1.0, lags)
    row = np.concatenate([gam, gam[-2:0:-1]])
    lam = np.fft.rfft(row).real
    floor = -EIG_RTOL * max(float(lam.max()), 1.0)
    if lam.min() < floor:
        raise ValueError(
            f"circulant embedding not nonnegative definite for H={h}, n={n} "
            f"(min eigenvalue {lam.min():.3e})"
        )
    lam = np.where(lam < 0.0, 0.0, lam)
    lam.setflags(write=False)
    return lam


def circulant_eigenvalues(n, h):
    """
    Eigenvalues of the 2n-circulant embedding of the unit-scale fGn covariance.

    Only the ``n + 1`` non-redundant eigenvalues are returned (the spectrum
    of a symmetric circulant is symmetric). Raises ``ValueError`` naming
    H and n when an eigenvalue is negative beyond round-off.
    """
    return _eigenvalues(int(n), check_hurst(h))


def gen_fgn(n, h, c=1.0, seed=0):
    """
    Sample ``n`` points of fractional Gaussian noise.

    Parameters
    ----------
    n : int
        Number of samples, at least 2.
    h : float
        Hurst exponent in (0, 1].
    c : float
        Standard deviation at unit lag.
    seed : int
        Seed for ``numpy.random.default_rng``; equal arguments give
        bit-identical paths.

    Returns
    -------
    FgnPath
    """
    n = int(n)
    if n < 2:
        raise ValueError("n must be >= 2")
    h = check_hurst(h)
    c = _check_scale(c)
    lam = circulant_eigenvalues(n, h)
    m = 2 * n
    rng = np.random.default_rng(seed)
    # Hermitian-symmetric spectrum -> real field with circulant covariance.
    w = np.empty(n + 1, dtype=complex)
    w.real = rng.standard_normal(n + 1)
    w.imag = rng.standard_normal(n + 1)
    w[0] = w[0].real * np.sqrt(2.0)
    w[n] = w[n].real * np.sqrt(2.0)
    w *= np.sqrt(lam / (2.0 * m))
    z = np.fft.irfft(w, m) * m
    return FgnPath(c * z[:n], h, c, seed)


def fbm_from_fgn(fgn):
    """Cumulative sum of an fGn path with a leading zero."""
    levels = np.concatenate([[0.0], np.cumsum(fgn.samples)])
    return FbmPath(levels, fgn.hurst, fgn.scale_c, fgn.seed)


def increments(fbm, a):
    """
    Overlapping increments of `fbm` at integer timescale `a`.

    For a path with ``N + 1`` levels the result has ``N - a + 1`` values,
    ``values[j] = B[j + a] - B[j]``.
    """
    b = fbm.samples if isinstance(fbm, FbmPath) else np.asarray(fbm, dtype=float)
    a = int(a)
    if a < 1:
        raise ValueError("timescale a must be >= 1")
    if a >= b.size:
        raise ValueError(f"timescale a={a} must be smaller than path length {b.size}")
    return IncrementSeries(b[a:] - b[:-a], a, b.size)


def spectral_tail_bound(h, c, trunc_j):
    """
    Upper bound on the dropped ``|j| > trunc_j`` part of the fGn spectrum.

    Decays as ``trunc_j ** (-2h)``; valid uniformly on ``[-pi, pi]``.
    """
    h = check_hurst(h)
    c_h = c**2 / (2 * np.pi) * np.sin(np.pi * h) * gamma(2 * h + 1)
    # |2 pi j +- omega| >= 2 pi (j - 1/2) for |omega| <= pi, 1 - cos <= 2,
    # and the sum over j > J is dominated by the integral from J.
    one_side = (2 * np.pi * (trunc_j - 0.5)) ** (-2 * h) / (4 * np.pi * h)
    return 2 * c_h * 2.0 * 2.0 * one_side


def spectral_density(h, c, omega, trunc_j=1000, tail_correction=False):
    """
    Power spectrum of unit-spacing fGn on ``[-pi, pi]``.

    ``2 c_H (1 - cos w) sum_{|j| <= J} |2 pi j + w|^(-1 - 2H)`` with
    ``c_H = C^2 sin(pi H) Gamma(2H + 1) / (2 pi)``, normalised so that
    ``K(q) = int_{-pi}^{pi} exp(i q w) S(w) dw``.

    The truncation error is bounded by :func:`spectral_tail_bound`, i.e.
    ``O(trunc_j ** -2H)``; for small H that is slow, and
    ``tail_correction=True`` adds the midpoint-rule integral of both
    dropped tails, leaving an ``O(trunc_j ** (-2H - 2))`` error.

    At ``omega == 0`` the value is the limit 0 for H < 1 (the vanishing
    ``1 - cos`` factor beats the ``|w|^(-1-2H)`` term).
    """
    h = check_hurst(h)
    c = _check_scale(c)
    if trunc_j < 1:
        raise ValueError("trunc_j must be >= 1")
    w = np.asarray(omega, dtype=float)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    if np.any(np.abs(w) > np.pi + 1e-12):
        raise ValueError("omega must lie in [-pi, pi]")
    c_h = c**2 / (2 * np.pi) * np.sin(np.pi * h) * gamma(2 * h + 1)
    expo = -1.0 - 2.0 * h
    j = np.arange(1, trunc_j + 1, dtype=float)[:, None]
    two_pi_j = 2 * np.pi * j
    total = (np.abs(two_pi_j + w) ** expo + np.abs(two_pi_j - w) ** expo).sum(axis=0)
    if tail_correction:
        x0 = 2 * np.pi * (trunc_j + 0.5)
        total += ((x0 + w) ** (-2 * h) + (x0 - w) ** (-2 * h)) / (2 * np.pi * 2 * h)
    nz = w != 0.0
    centre = np.zeros_like(w)
    centre[nz] = np.abs(w[nz]) ** expo
    out = 2 * c_h * (1.0 - np.cos(w)) * (total + centre)
    if h < 1.0:
        out[~nz] = 0.0
    else:
        # at H = 1 the limit is finite and nonzero: (1 - cos w) / w^2 -> 1/2
        out[~nz] = 2 * c_h * 0.5
    return float(out[0]) if scalar else out


def ess(acf, n=None):
    """
    Effective sample size of ``n`` observations with autocorrelation `acf`.

    ``n / sum_{|tau| < n} (1 - |tau| / n) rho(tau)`` using rho(-tau) = rho(tau).
    `acf` is indexed by lag starting at 0 and must have ``acf[0] == 1``;
    lags beyond ``len(acf) - 1`` are taken as zero.
    """
    rho = np.asarray(acf, dtype=float)
    if n is None:
        n = rho.size
    n = int(n)
    if n < 1:
        raise ValueError("n must be positive")
    if rho.size == 0 or not np.isclose(rho[0], 1.0):
        raise ValueError("acf[0] must equal 1")
    rho = rho[:n]
    tau = np.arange(rho.size)
    denom = 1.0 + 2.0 * np.sum((1.0 - tau[1:] / n) * rho[1:])
    if denom <= 0.0:
        raise ValueError(f"non-positive ESS denominator ({denom:.3g}); acf is pathological")
    return n / denom


def sample_acf(series, max_lag):
    """
    Biased sample autocorrelation at lags ``0..max_lag``.

    The lag-tau autocovariance is divided by n (not n - tau) and the result
    is normalised to 1 at lag 0.
    """
    x = np.asarray(series, dtype=float)
    n = x.size
    max_lag = int(max_lag)
    if not 0 <= max_lag < n:
        raise ValueError(f"max_lag must be in [0, {n - 1}], got {max_lag}")
    x = x - x.mean()
    var = np.dot(x, x)
    if var == 0.0:
        raise ValueError("sample ACF undefined for a constant series")
    nfft = 1 << int(np.ceil(np.log2(2 * n - 1)))
    f = np.fft.rfft(x, nfft)
    acov = np.fft.irfft(f * np.conj(f), nfft)[: max_lag + 1]
    return acov / var
