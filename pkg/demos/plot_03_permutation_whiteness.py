"""
Whitening by random permutation
===============================

A full-length random permutation with random phase removes the serial
correlation of persistent noise and leaves its values untouched.
"""

import numpy as np

from kshurst import gen_fgn, permute_with_phase, random_permutation, whiteness_fraction
from kshurst.decorr import d_l_kernel

n = 4095
z = gen_fgn(n, 0.75, 1.0, seed=3).samples
p = permute_with_phase(z, random_permutation(n, seed=4))

print(f"lags outside +-1.96/sqrt(n), before: {whiteness_fraction(z):.2f}")
print(f"lags outside +-1.96/sqrt(n), after:  {whiteness_fraction(p):.2f}")
print("same multiset:", np.array_equal(np.sort(z), np.sort(p)))

# the kernel that multiplies the spectrum flattens as the block grows
for L in (2, 10, 100, 10_000):
    print(f"L={L:>5}: d_L(0.5) = {d_l_kernel(0.5, L):+.5f}")
