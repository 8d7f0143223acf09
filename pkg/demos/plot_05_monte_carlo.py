"""
A small Monte Carlo sweep
=========================

Seeded replicates aggregated per cell; the CSV is the same whatever the
worker count.
"""

import sys

from kshurst import ExperimentConfig, emit_results, run_experiment

# a reduced version of the significance table: 100 paths per cell
cfg = ExperimentConfig.preset("significance_table", replicates=100, a_list=(10,), h0_list=(0.3, 0.5, 0.7))
summary = run_experiment(cfg)

for row in summary.rows:
    print(f"H0={row.h0} a={row.a} alpha={row.alpha:<5} rejection rate {row.rejection_rate:.3f}")

emit_results(summary, "csv", sys.argv[1] if len(sys.argv) > 1 else "significance_small.csv")
