"""Energy of a jittered sinc series.

On the integer grid the sinc translates are orthonormal and the energy is the
plain sum of squared sample magnitudes. Moving the instants off the grid
couples neighbouring terms; the off-diagonal Gram sum is the Parseval residual.
"""

import numpy as np

from jitter_energy import SampleSequence, SamplingGrid, energy_closed_form, gram_matrix

a = SampleSequence([1, 1, 1])

for lam in ([0.0, 1.0, 2.0], [0.0, 1.1, 2.2], [0.0, 0.5, 1.0]):
    grid = SamplingGrid(lam)
    rep = energy_closed_form(a, grid)
    print(f"instants {lam}: E_f = {rep.closed_form:.12f}, sum|a|^2 = {rep.coefficient_norm:g}, "
          f"residual = {rep.parseval_residual:+.12f}")

# the Gram matrix behind the last line
np.set_printoptions(precision=6, suppress=True)
print(gram_matrix(SamplingGrid([0.0, 0.5, 1.0])).entries)
