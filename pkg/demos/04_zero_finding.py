"""Count and locate zeros of theta_A on complex lines, then sample the curve.

On a line the restriction of theta_A is a one-variable holomorphic function.
The argument principle counts its zeros in a rectangle; Newton refines them.
"""

import numpy as np

from theta13 import ComplexLine, Window, locate_zeros_on_line, sample_curve_points, smoothness_report
from theta13.divisor import product_siegel
from theta13.torus import random_siegel

# on the product locus a v2-line meets the three horizontal components
tau = 1j
Z = product_siegel(tau, tau)
line = ComplexLine.make([0.31 + 0.17j, 0], [0, 1], Window(complex(-0.37, -0.23), 3.0, tau.imag))
res = locate_zeros_on_line(line, Z)
print(f"zeros on the v2-line: {res.count}")
for t in res.ts:
    print(f"  t = {t.real:+.12f} {t.imag:+.12f}i")

# on a generic modulus, sample points of the curve and check smoothness
Z = random_siegel(np.random.default_rng(3))
sample = sample_curve_points(Z, 20, seed=0)
print(f"sampled {len(sample)} curve points, max residual {max(sample.residuals):.1e} (scale {sample.scale:.3g})")
rep = smoothness_report(Z, n=50, seed=1)
print(f"smoothness: min |grad|/scale {rep.min_relative:.3g}, generic = {rep.generic}")
