"""
Decorrelation of stationary sequences by random permutation.

A uniform random permutation of block length L, composed with an independent
uniform phase, turns a stationary sequence into one whose covariance tends
to that of white noise as L grows, while leaving the multiset of values (and
hence every ECDF-based statistic) untouched. Independent random subsequences
then break the dependence between the two increment series compared by the
KS test.
"""

from dataclasses import dataclass

import numpy as np

from .fracgen import sample_acf

__all__ = [
    "PermutationPlan",
    "Subsample",
    "random_permutation",
    "permute_with_phase",
    "sample_subsequence",
    "d_l_kernel",
    "whiteness_fraction",
]


@dataclass(frozen=True)
class PermutationPlan:
    """A permutation ``b`` of ``0..L-1`` plus a phase in ``0..L-1``."""

    perm: np.ndarray
    phase: int
    seed: int = 0

    def __post_init__(self):
        perm = np.asarray(self.perm, dtype=np.intp)
        if perm.ndim != 1 or perm.size == 0:
            raise ValueError("perm must be a nonempty 1-D array")
        if not np.array_equal(np.sort(perm), np.arange(perm.size)):
            raise ValueError("perm is not a bijection on 0..L-1")
        if not 0 <= self.phase < perm.size:
            raise ValueError("phase must lie in 0..L-1")
        perm.setflags(write=False)
        object.__setattr__(self, "perm", perm)

    @property
    def block_len(self):
        return self.perm.size


@dataclass(frozen=True)
class Subsample:
    values: np.ndarray
    indices: np.ndarray
    seed: int = 0

    def __len__(self):
        return self.values.size


def random_permutation(L, seed):
    """
    Draw a uniform permutation of ``0..L-1`` and an independent uniform phase.

    Both come from ``numpy.random.default_rng(seed)``; the permutation is a
    Fisher-Yates shuffle.
    """
    L = int(L)
    if L < 1:
        raise ValueError("block length L must be >= 1")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(L)
    phase = int(rng.integers(0, L))
    return PermutationPlan(perm, phase, seed)


def permute_with_phase(series, plan):
    """
    Rearrange `series` block-wise: ``out[l] = z[q L + b[r]]`` with
    ``(q, r) = divmod(l + phase, L)``.

    Only complete blocks are emitted, so the output has
    ``(len(series) // L) * L`` values; the shifted index wraps around within
    that emitted range.
    """
    z = np.asarray(series, dtype=float)
    L = plan.block_len
    if L > z.size:
        raise ValueError(f"block length L={L} exceeds series length {z.size}")
    emitted = (z.size // L) * L
    ell = (np.arange(emitted) + plan.phase) % emitted
    q, r = np.divmod(ell, L)
    return z[q * L + plan.perm[r]]


def sample_subsequence(series, T, seed):
    """Draw `T` values uniformly without replacement."""
    z = np.asarray(series, dtype=float)
    T = int(T)
    if T < 1:
        raise ValueError("subsequence length T must be >= 1")
    if T > z.size:
        raise ValueError(f"T={T} exceeds series length {z.size}")
    rng = np.random.default_rng(seed)
    idx = rng.choice(z.size, size=T, replace=False)
    return Subsample(z[idx], idx, seed)


def d_l_kernel(omega, L):
    """
    Characteristic function of ``b_1 - b_2`` for a uniform permutation:

    ``((sin(L w / 2) / sin(w / 2))**2 - L) / (L (L - 1))``

    Equal to 1 where ``sin(w / 2) == 0`` (the Fejer ratio tends to L**2).
    """
    L = int(L)
    if L < 2:
        raise ValueError("L must be >= 2")
    # the kernel is 2 pi periodic; wrapping keeps the ratio well conditioned
    w = np.mod(np.asarray(omega, dtype=float) + np.pi, 2.0 * np.pi) - np.pi
    s = np.sin(w / 2.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        fejer = (np.sin(L * w / 2.0) / s) ** 2
    fejer = np.where(np.abs(s) < 1e-300, float(L) ** 2, fejer)
    out = (fejer - L) / (L * (L - 1.0))
    return float(out) if out.ndim == 0 else out


def whiteness_fraction(series, max_lag=50):
    """Fraction of lags ``1..max_lag`` whose sample ACF lies outside ``+-1.96/sqrt(n)``."""
    x = np.asarray(series, dtype=float)
    rho = sample_acf(x, max_lag)[1:]
    bound = 1.96 / np.sqrt(x.size)
    return float(np.mean(np.abs(rho) > bound))
