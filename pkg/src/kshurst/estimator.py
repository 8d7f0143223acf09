"""
Hurst exponent estimation by minimising the KS diameter.

For a self-similar process with stationary increments the unit-scale
increments and the rescaled increments ``a**(-H) (B[t + a] - B[t])`` share
one distribution exactly when H equals the true exponent. The estimator
scans a grid of H values, measures the two-sample KS distance between the
two increment samples at each, and returns the grid point where it is
smallest.
"""

from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import decorr
from .fracgen import FbmPath, FgnPath, fbm_from_fgn, increments
from .ks import KsResult, _profile_gaps, ks_critical, ks_statistic_sorted

__all__ = [
    "HGrid",
    "DiameterProfile",
    "EstimatorConfig",
    "HurstEstimate",
    "rescaled_diameter",
    "diameter_profile",
    "argmin_h",
    "decorrelated_samples",
    "estimate_hurst",
]


@dataclass(frozen=True)
class HGrid:
    """Search grid ``h_min, h_min + step, ...`` up to and including `h_max`."""

    h_min: float = 0.01
    h_max: float = 1.0
    step: float = 0.01

    def __post_init__(self):
        if not 0.0 < self.h_min <= self.h_max <= 1.0:
            raise ValueError("grid needs 0 < h_min <= h_max <= 1")
        if not self.step > 0.0:
            raise ValueError("grid step must be positive")

    @classmethod
    def single(cls, h):
        return cls(h, h, 1.0)

    @property
    def points(self):
        k = int(np.floor((self.h_max - self.h_min) / self.step + 1e-9)) + 1
        # rounding keeps the points free of accumulated step error
        return np.round(self.h_min + self.step * np.arange(k), 12)

    def __len__(self):
        return self.points.size


@dataclass(frozen=True)
class DiameterProfile:
    grid: HGrid
    deltas: np.ndarray

    def __post_init__(self):
        if self.deltas.shape != (len(self.grid),):
            raise ValueError("one diameter per grid point expected")


@dataclass(frozen=True)
class EstimatorConfig:
    """
    Settings of the estimation pipeline.

    With ``decorrelate=False`` the full overlapping increment series are
    compared directly and `t` and `center` are ignored. `max_t_fraction`
    bounds the subsequence length by ``T <= max_t_fraction * (N - a_high)``.

    `center` subtracts each increment series' own mean before permuting.
    The permuted sequence only whitens around the realised mean, and for
    persistent paths that mean differs between the two timescales by far
    more than the rescaling can absorb.
    """

    a_high: int = 10
    t: int = 100
    grid: HGrid = field(default_factory=HGrid)
    alpha: float = 0.05
    seed: int = 0
    decorrelate: bool = True
    center: bool = True
    max_t_fraction: float = 0.25

    def validate(self, n_levels):
        problems = []
        if self.a_high < 2:
            problems.append(f"a_high={self.a_high} must be >= 2")
        if self.a_high >= n_levels - 1:
            problems.append(f"a_high={self.a_high} must be < path length - 1 ({n_levels - 1})")
        if not 0.0 < self.alpha < 1.0:
            problems.append(f"alpha={self.alpha} must lie in (0, 1)")
        if self.decorrelate:
            limit = self.max_t_fraction * (n_levels - 1 - self.a_high)
            if self.t < 1:
                problems.append(f"t={self.t} must be >= 1")
            elif self.t > limit:
                problems.append(
                    f"t={self.t} exceeds {self.max_t_fraction} * (N - a_high) = {limit:g}"
                )
        if problems:
            raise ValueError("invalid estimator config: " + "; ".join(problems))


@dataclass(frozen=True)
class HurstEstimate:
    h_hat: float
    delta_min: float
    ks: KsResult
    profile: DiameterProfile
    config: EstimatorConfig

    @property
    def reject(self):
        return self.ks.reject

    def to_dict(self):
        cfg = asdict(self.config)
        return {
            "h_hat": self.h_hat,
            "delta_min": self.delta_min,
            "critical": self.ks.critical,
            "reject": bool(self.ks.reject),
            "n": self.ks.n,
            "m": self.ks.m,
            "config": cfg,
        }


def rescaled_diameter(z1, za, a_high, h):
    """KS distance between `z1` and ``a_high**(-h) * za``."""
    if a_high < 2:
        raise ValueError("a_high must be >= 2")
    if not 0.0 < h <= 1.0:
        raise ValueError("h must lie in (0, 1]")
    x = np.sort(np.asarray(z1, dtype=float))
    y = np.sort(np.asarray(za, dtype=float))
    if x.size == 0 or y.size == 0:
        raise ValueError("samples must be nonempty")
    return ks_statistic_sorted(x, y, float(a_high) ** -h)


def diameter_profile(z1, za, a_high, grid=None):
    """
    Diameter at every grid point.

    Both samples are sorted once; a positive rescaling keeps the order, so
    each grid point costs one merge scan.
    """
    grid = HGrid() if grid is None else grid
    if a_high < 2:
        raise ValueError("a_high must be >= 2")
    x = np.sort(np.asarray(z1, dtype=float))
    y = np.sort(np.asarray(za, dtype=float))
    if x.size == 0 or y.size == 0:
        raise ValueError("samples must be nonempty")
    scales = float(a_high) ** -grid.points
    gaps = _profile_gaps(x, y, scales)
    return DiameterProfile(grid, gaps / (x.size * y.size))


def argmin_h(profile):
    """Grid point with the smallest diameter; ties go to the lowest H."""
    k = int(np.argmin(profile.deltas))
    return float(profile.grid.points[k]), float(profile.deltas[k])


def _as_fbm(path):
    if isinstance(path, FbmPath):
        return path
    if isinstance(path, FgnPath):
        return fbm_from_fgn(path)
    raise TypeError("expected an FbmPath or FgnPath")


def decorrelated_samples(z1, za, t, seed, center=True):
    """
    Permute both increment series with independent full-length plans and
    draw an independent size-`t` subsequence from each.
    """
    z1 = np.asarray(z1, dtype=float)
    za = np.asarray(za, dtype=float)
    if center:
        z1 = z1 - z1.mean()
        za = za - za.mean()
    s_perm1, s_perma, s_sub1, s_suba = np.random.SeedSequence(seed).generate_state(
        4, dtype=np.uint64
    )
    p1 = decorr.permute_with_phase(z1, decorr.random_permutation(len(z1), int(s_perm1)))
    pa = decorr.permute_with_phase(za, decorr.random_permutation(len(za), int(s_perma)))
    sub1 = decorr.sample_subsequence(p1, t, int(s_sub1))
    suba = decorr.sample_subsequence(pa, t, int(s_suba))
    return sub1.values, suba.values


def estimate_hurst(path, config=None, **overrides):
    """
    Estimate the Hurst exponent of an fBm (or fGn) path.

    Steps: unit and `a_high` increments, optional decorrelation (random
    permutation plus independent subsequences of length `t`), the diameter
    profile over the grid, its argmin, and a KS test at the minimiser. The
    test verdict is reported in ``ks`` and never changes ``h_hat``.
    """
    config = EstimatorConfig() if config is None else config
    if overrides:
        config = replace(config, **overrides)
    fbm = _as_fbm(path)
    config.validate(len(fbm))
    z1 = increments(fbm, 1).values
    za = increments(fbm, config.a_high).values
    if config.decorrelate:
        z1, za = decorrelated_samples(z1, za, config.t, config.seed, config.center)
    profile = diameter_profile(z1, za, config.a_high, config.grid)
    h_hat, delta_min = argmin_h(profile)
    crit = ks_critical(config.alpha, z1.size, za.size)
    ks = KsResult(delta_min, crit, config.alpha, z1.size, za.size)
    return HurstEstimate(h_hat, delta_min, ks, profile, config)
