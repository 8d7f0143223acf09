"""
Kolmogorov-Smirnov estimation of the self-similarity exponent of
fractional processes, with random-permutation decorrelation.
"""

from .decorr import (
    PermutationPlan,
    Subsample,
    d_l_kernel,
    permute_with_phase,
    random_permutation,
    sample_subsequence,
    whiteness_fraction,
)
from .estimator import (
    DiameterProfile,
    EstimatorConfig,
    HGrid,
    HurstEstimate,
    argmin_h,
    diameter_profile,
    estimate_hurst,
    rescaled_diameter,
)
from .experiments import (
    CellSummary,
    ExperimentConfig,
    McSummary,
    emit_results,
    load_results,
    run_experiment,
    significance_at_truth,
)
from .fracgen import (
    FbmPath,
    FgnPath,
    IncrementSeries,
    ess,
    fbm_from_fgn,
    gen_fgn,
    increments,
    sample_acf,
    spectral_density,
    theoretical_acf,
)
from .ks import EmpiricalCdf, KsResult, ecdf, ks_critical, ks_statistic, ks_test

__version__ = "0.1.0"
