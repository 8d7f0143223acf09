"""
The KS diameter over a grid of H
================================

Unit and coarse increments of one path are compared after rescaling by
a**(-H); the distance vanishes near the true exponent.
"""

import numpy as np

from kshurst import HGrid, diameter_profile, fbm_from_fgn, gen_fgn, increments, ks_critical

h0, a = 0.5, 5
fbm = fbm_from_fgn(gen_fgn(4096, h0, 1.0, seed=2))
z1 = increments(fbm, 1).values
za = increments(fbm, a).values

prof = diameter_profile(z1, za, a, HGrid())
k = int(np.argmin(prof.deltas))
print(f"argmin at H={prof.grid.points[k]:.2f}, diameter {prof.deltas[k]:.4f}")
print(f"critical value at alpha=0.05: {ks_critical(0.05, z1.size, za.size):.4f}")

# a coarse look at the profile
for h, d in zip(prof.grid.points[::10], prof.deltas[::10]):
    print(f"  H={h:.2f}  {'#' * int(d * 100)}")
