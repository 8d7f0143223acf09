"""
Seeded Monte Carlo harness for the simulation study.

Every replicate draws its randomness from a ``numpy.random.SeedSequence``
keyed by ``(master_seed; h0, a, t, replicate)``, so a replicate's result
does not depend on execution order or on how many worker processes run the
sweep. Results aggregate into one row per ``(h0, a, t, alpha)`` cell.
"""

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace

import numpy as np

from .estimator import (
    EstimatorConfig,
    HGrid,
    argmin_h,
    decorrelated_samples,
    diameter_profile,
)
from .fracgen import fbm_from_fgn, gen_fgn, increments
from .ks import ks_critical, ks_statistic_sorted

__all__ = [
    "KINDS",
    "COLUMNS",
    "ExperimentConfig",
    "CellSummary",
    "McSummary",
    "replicate_seeds",
    "run_replicate",
    "run_experiment",
    "significance_at_truth",
    "emit_results",
    "load_results",
    "nearest_rank_quantile",
]

KINDS = (
    "fig1_bm",
    "bias_vs_h0",
    "bias_vs_a",
    "perm_vs_h0",
    "perm_vs_a",
    "significance_table",
)

COLUMNS = (
    "kind", "h0", "a", "t", "alpha",
    "mean_h", "sd_h", "q05_h", "q50_h", "q95_h",
    "q05_delta", "q50_delta", "q95_delta",
    "rejection_rate", "m", "seed",
)

_H0_SWEEP = tuple(round(0.2 + 0.05 * k, 2) for k in range(13))

_PRESETS = {
    "fig1_bm": dict(replicates=1000, h0_list=(0.5,), a_list=(5,), decorrelate=False),
    "bias_vs_h0": dict(replicates=500, h0_list=_H0_SWEEP, a_list=(10,), decorrelate=False),
    "bias_vs_a": dict(
        replicates=500, h0_list=(0.25, 0.75), a_list=(2, 5, 10, 20, 50, 100), decorrelate=False
    ),
    "perm_vs_h0": dict(
        replicates=500, h0_list=_H0_SWEEP, a_list=(10,),
        t_list=tuple(range(100, 1001, 100)), decorrelate=True,
    ),
    "perm_vs_a": dict(
        replicates=500, h0_list=(0.25, 0.75), a_list=(2, 5, 10, 20, 50, 200),
        t_list=(200, 400, 600, 800), decorrelate=True,
    ),
    "significance_table": dict(
        replicates=1000, h0_list=(0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8), a_list=(10, 50, 100),
        t_list=(100,), alpha_list=(0.1, 0.05, 0.025, 0.01), decorrelate=True,
    ),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Declarative description of a Monte Carlo sweep.

    Cells are the product ``h0_list x a_list x t_list``; each cell runs
    `replicates` independent fBm paths of `n_path` increments. Without
    decorrelation the full increment series are compared and the ``t``
    column records `n_path` instead of a subsequence length.
    """

    kind: str
    n_path: int = 4096
    replicates: int = 500
    h0_list: tuple = (0.5,)
    a_list: tuple = (10,)
    t_list: tuple = (100,)
    grid: HGrid = field(default_factory=HGrid)
    alpha_list: tuple = (0.05,)
    master_seed: int = 0
    decorrelate: bool = True
    center: bool = True
    scale_c: float = 1.0
    max_t_fraction: float = 0.25
    max_samples: int = 2_000_000_000

    def __post_init__(self):
        for name in ("h0_list", "a_list", "t_list", "alpha_list"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if isinstance(self.grid, dict):
            object.__setattr__(self, "grid", HGrid(**self.grid))
        self.validate()

    @classmethod
    def preset(cls, kind, **overrides):
        """Configuration matching the published experiment of that kind."""
        if kind not in _PRESETS:
            raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
        return cls(kind=kind, **{**_PRESETS[kind], **overrides})

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self):
        d = asdict(self)
        for name in ("h0_list", "a_list", "t_list", "alpha_list"):
            d[name] = list(d[name])
        return d

    def cells(self):
        ts = self.t_list if self.decorrelate else (self.n_path,)
        return [(h0, a, t) for h0 in self.h0_list for a in self.a_list for t in ts]

    def budget(self):
        """Number of fGn samples the run would generate."""
        return len(self.cells()) * self.replicates * self.n_path

    def validate(self):
        problems = []
        if self.kind not in KINDS:
            problems.append(f"kind {self.kind!r} not in {KINDS}")
        for name in ("h0_list", "a_list", "t_list", "alpha_list"):
            if not getattr(self, name):
                problems.append(f"{name} is empty")
        if self.replicates < 1:
            problems.append("replicates must be >= 1")
        if any(not 0.0 < h <= 1.0 for h in self.h0_list):
            problems.append("every h0 must lie in (0, 1]")
        if any(not 0.0 < al < 1.0 for al in self.alpha_list):
            problems.append("every alpha must lie in (0, 1)")
        if self.kind == "significance_table" and not self.decorrelate:
            problems.append("significance_table requires decorrelate=true")
        if problems:
            raise ValueError("invalid experiment config: " + "; ".join(problems))
        for a in self.a_list:
            for t in (self.t_list if self.decorrelate else (self.n_path,)):
                self.estimator_config(a, t, 0).validate(self.n_path + 1)
        if self.budget() > self.max_samples:
            raise ValueError(
                f"run would generate {self.budget():,} samples, above the cap of "
                f"{self.max_samples:,}; lower replicates/n_path or raise max_samples"
            )

    def estimator_config(self, a, t, seed):
        return EstimatorConfig(
            a_high=int(a), t=int(t), grid=self.grid, alpha=self.alpha_list[0], seed=seed,
            decorrelate=self.decorrelate, center=self.center,
            max_t_fraction=self.max_t_fraction,
        )


@dataclass(frozen=True)
class CellSummary:
    kind: str
    h0: float
    a: int
    t: int
    alpha: float
    mean_h: float
    sd_h: float
    q05_h: float
    q50_h: float
    q95_h: float
    q05_delta: float
    q50_delta: float
    q95_delta: float
    rejection_rate: float
    m: int
    seed: int

    def as_row(self):
        return [getattr(self, c) for c in COLUMNS]


@dataclass(frozen=True)
class McSummary:
    rows: tuple = ()

    def __len__(self):
        return len(self.rows)

    def select(self, **coords):
        """Rows whose fields equal every given value."""
        return [r for r in self.rows if all(getattr(r, k) == v for k, v in coords.items())]


def nearest_rank_quantile(values, p):
    """Smallest order statistic with at least a fraction `p` of the data at or below it."""
    v = np.sort(np.asarray(values, dtype=float))
    if v.size == 0:
        raise ValueError("no values")
    k = max(int(math.ceil(p * v.size - 1e-9)), 1)
    return float(v[k - 1])


def replicate_seeds(master_seed, h0, a, t, replicate):
    """
    Path and estimator seeds for one replicate.

    ``SeedSequence(master_seed, spawn_key=(round(h0 * 1e6), a, t, replicate))``
    is a documented, platform-stable hash of its inputs.
    """
    ss = np.random.SeedSequence(
        int(master_seed), spawn_key=(int(round(h0 * 1e6)), int(a), int(t), int(replicate))
    )
    path_seed, est_seed = ss.generate_state(2, dtype=np.uint64)
    return int(path_seed), int(est_seed)


def run_replicate(cfg, h0, a, t, replicate):
    """
    One replicate of a cell: ``(h_hat, delta_min, delta_at_h0)``.

    `delta_at_h0` is the diameter evaluated at the true exponent on the same
    (possibly decorrelated) samples.
    """
    path_seed, est_seed = replicate_seeds(cfg.master_seed, h0, a, t, replicate)
    fbm = fbm_from_fgn(gen_fgn(cfg.n_path, h0, cfg.scale_c, path_seed))
    z1 = increments(fbm, 1).values
    za = increments(fbm, a).values
    if cfg.decorrelate:
        z1, za = decorrelated_samples(z1, za, t, est_seed, cfg.center)
    x = np.sort(z1)
    y = np.sort(za)
    h_hat, delta_min = argmin_h(diameter_profile(x, y, a, cfg.grid))
    delta_h0 = ks_statistic_sorted(x, y, float(a) ** -h0)
    return h_hat, delta_min, delta_h0, x.size, y.size


def _run_block(args):
    cfg, h0, a, t, start, stop = args
    return [run_replicate(cfg, h0, a, t, r) for r in range(start, stop)]


def _summarise(cfg, h0, a, t, results):
    h = np.array([r[0] for r in results])
    dmin = np.array([r[1] for r in results])
    dtruth = np.array([r[2] for r in results])
    n, m = results[0][3], results[0][4]
    at_truth = cfg.kind == "significance_table"
    delta = dtruth if at_truth else dmin
    rows = []
    for alpha in cfg.alpha_list:
        crit = ks_critical(alpha, n, m)
        rows.append(
            CellSummary(
                kind=cfg.kind, h0=float(h0), a=int(a), t=int(t), alpha=float(alpha),
                mean_h=float(h.mean()),
                sd_h=float(h.std(ddof=1)) if h.size > 1 else float("nan"),
                q05_h=nearest_rank_quantile(h, 0.05),
                q50_h=nearest_rank_quantile(h, 0.50),
                q95_h=nearest_rank_quantile(h, 0.95),
                q05_delta=nearest_rank_quantile(delta, 0.05),
                q50_delta=nearest_rank_quantile(delta, 0.50),
                q95_delta=nearest_rank_quantile(delta, 0.95),
                rejection_rate=float(np.mean(delta > crit)),
                m=int(h.size),
                seed=int(cfg.master_seed),
            )
        )
    return rows


def run_experiment(cfg, workers=1, block=50):
    """
    Run every cell of `cfg` and aggregate.

    For ``significance_table`` the delta quantiles and rejection rate refer
    to the diameter at the true H0 against ``K_alpha(T, T)``; for the other
    kinds they refer to the minimised diameter and the KS verdict at the
    estimate. Output is independent of `workers`.
    """
    cfg.validate()
    tasks = []
    for h0, a, t in cfg.cells():
        for start in range(0, cfg.replicates, block):
            tasks.append((cfg, h0, a, t, start, min(start + block, cfg.replicates)))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(_run_block, tasks))
    else:
        blocks = [_run_block(task) for task in tasks]
    per_cell = {}
    for task, res in zip(tasks, blocks):
        per_cell.setdefault(task[1:4], []).extend(res)
    rows = []
    for cell in cfg.cells():
        rows.extend(_summarise(cfg, *cell, per_cell[cell]))
    return McSummary(tuple(rows))


def significance_at_truth(cfg, workers=1):
    """Rows ``(h0, a, alpha, empirical_rate)`` of the significance table."""
    if not cfg.decorrelate:
        raise ValueError("significance at the true H0 needs decorrelate=true")
    if cfg.kind != "significance_table":
        cfg = replace(cfg, kind="significance_table")
    summary = run_experiment(cfg, workers=workers)
    return [(r.h0, r.a, r.alpha, r.rejection_rate) for r in summary.rows]


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_results(summary, fmt, path):
    """Write `summary` as CSV (header always present) or JSON (list of row objects)."""
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent):
        raise OSError(f"cannot write {path}: directory {parent} does not exist")
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(COLUMNS)
            for row in summary.rows:
                writer.writerow([_fmt(v) for v in row.as_row()])
    else:
        records = [dict(zip(COLUMNS, row.as_row())) for row in summary.rows]
        with open(path, "w") as fh:
            json.dump(records, fh, indent=1)
            fh.write("\n")


_INT_COLUMNS = {"a", "t", "m", "seed"}


def _parse(col, text):
    if col == "kind":
        return text
    if col in _INT_COLUMNS:
        return int(text)
    return float(text)


def load_results(path):
    """Read a CSV or JSON file written by :func:`emit_results`."""
    if path.endswith(".json"):
        with open(path) as fh:
            records = json.load(fh)
        rows = [CellSummary(**rec) for rec in records]
    else:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if tuple(header) != COLUMNS:
                raise ValueError(f"unexpected CSV header in {path}")
            rows = [CellSummary(**{c: _parse(c, v) for c, v in zip(COLUMNS, rec)}) for rec in reader]
    return McSummary(tuple(rows))
