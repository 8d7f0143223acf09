"""Command line entry points: ``generate``, ``estimate`` and ``experiment``."""

import argparse
import csv
import json
import os
import sys

import numpy as np

from .estimator import EstimatorConfig, HGrid, estimate_hurst
from .experiments import ExperimentConfig, emit_results, run_experiment
from .fracgen import FbmPath, FgnPath, fbm_from_fgn, gen_fgn


def write_series(values, column, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["index", column])
    for i, v in enumerate(values):
        writer.writerow([i, repr(float(v))])


def read_series(path):
    """Return ``(column_name, values)`` from an ``index,<column>`` CSV file."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if len(header) != 2 or header[0] != "index" or header[1] not in ("value", "level"):
            raise ValueError(f"{path}: expected header 'index,value' or 'index,level'")
        values = np.array([float(row[1]) for row in reader if row])
    return header[1], values


def _cmd_generate(args):
    fgn = gen_fgn(args.n, args.hurst, args.scale, args.seed)
    if args.fbm:
        values, column = fbm_from_fgn(fgn).samples, "level"
    else:
        values, column = fgn.samples, "value"
    if args.out in (None, "-"):
        write_series(values, column, sys.stdout)
    else:
        with open(args.out, "w", newline="") as fh:
            write_series(values, column, fh)
    return 0


def _cmd_estimate(args):
    column, values = read_series(args.input)
    kind = args.input_kind or ("fbm" if column == "level" else "fgn")
    if kind == "fbm":
        path = FbmPath(values - values[0], None)
    else:
        path = fbm_from_fgn(FgnPath(values, None))
    cfg = EstimatorConfig(
        a_high=args.a_high, t=args.t, grid=HGrid(args.dh, 1.0, args.dh), alpha=args.alpha,
        seed=args.seed, decorrelate=not args.no_decorrelate, center=not args.no_center,
        max_t_fraction=args.max_t_fraction,
    )
    doc = estimate_hurst(path, cfg).to_dict()
    text = json.dumps(doc, indent=2)
    if args.out in (None, "-"):
        print(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return 0


def _cmd_experiment(args):
    cfg = ExperimentConfig.load(args.config)
    os.makedirs(args.out, exist_ok=True)
    summary = run_experiment(cfg, workers=args.workers)
    target = os.path.join(args.out, f"{cfg.kind}.{args.format}")
    emit_results(summary, args.format, target)
    print(target)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="kshurst", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample fGn (or fBm with --fbm) to CSV")
    g.add_argument("--n", type=int, default=4096, help="number of fGn samples")
    g.add_argument("--hurst", type=float, required=True)
    g.add_argument("--scale", type=float, default=1.0, help="std. dev. at unit lag")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--fbm", action="store_true", help="emit fBm levels (n + 1 rows)")
    g.add_argument("--out", help="output path (default stdout)")
    g.set_defaults(func=_cmd_generate)

    e = sub.add_parser("estimate", help="estimate H from an fBm/fGn CSV")
    e.add_argument("input")
    e.add_argument("--input-kind", choices=("fbm", "fgn"),
                   help="default: fbm for an 'index,level' file, fgn for 'index,value'")
    e.add_argument("--a-high", type=int, default=10)
    e.add_argument("--t", type=int, default=100, help="subsequence length")
    e.add_argument("--dh", type=float, default=0.01, help="grid step on (0, 1]")
    e.add_argument("--alpha", type=float, default=0.05)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--max-t-fraction", type=float, default=0.25)
    e.add_argument("--no-decorrelate", action="store_true",
                   help="compare the full increment series without permutation")
    e.add_argument("--no-center", action="store_true")
    e.add_argument("--out", help="output JSON path (default stdout)")
    e.set_defaults(func=_cmd_estimate)

    x = sub.add_parser("experiment", help="run a Monte Carlo sweep from a JSON config")
    x.add_argument("--config", required=True)
    x.add_argument("--out", required=True, help="output directory")
    x.add_argument("--format", choices=("csv", "json"), default="csv")
    x.add_argument("--workers", type=int, default=1)
    x.set_defaults(func=_cmd_experiment)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"kshurst {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
