"""
Sampling fractional Gaussian noise
==================================

Exact circulant-embedding draws, checked against the theoretical
autocovariance.
"""

import numpy as np

from kshurst import fbm_from_fgn, gen_fgn, sample_acf, theoretical_acf, ess

# one persistent and one antipersistent path of 2**16 steps
for h in (0.3, 0.75):
    z = gen_fgn(2**16, h, 1.0, seed=1)
    print(f"H={h}: variance {z.samples.var():.4f}")
    print("  lag  sample   exact")
    rho = sample_acf(z.samples, 5)
    for k in range(1, 6):
        print(f"  {k:>3}  {rho[k]:+.4f}  {theoretical_acf(h, 1, 1.0, k):+.4f}")

# the fBm is the running sum, starting at zero
b = fbm_from_fgn(gen_fgn(8, 0.5, 1.0, seed=0))
print(b.samples.round(3))

# dependence changes the effective number of independent observations
n = 4096
for h in (0.25, 0.5, 0.75):
    print(f"H={h}: ESS of {n} points = {ess(theoretical_acf(h, 1, 1.0, np.arange(n)), n):.1f}")
