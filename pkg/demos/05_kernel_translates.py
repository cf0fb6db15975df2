"""The nine translates of the divisor by the polarization kernel are distinct.

For each pair of translates a witness is a sampled zero of one where the other
stays clearly nonzero. The matrix of best witnesses is printed.
"""

import numpy as np

from theta13 import polarization_kernel, random_siegel, translates_distinct

Z = random_siegel(np.random.default_rng(11))
print(f"kernel order: {len(polarization_kernel(Z))}")

w = translates_distinct(Z, 12, seed=0)
np.set_printoptions(precision=3, suppress=True, linewidth=120)
print("best witness per ordered pair (row: zeros of, column: tested against):")
print(w.best)
print(f"all pairwise distinct: {w.all_distinct}")
