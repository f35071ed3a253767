"""Two-sided energy bounds as the separation grows.

For gamma above the frame constant C the ratio E_f / sum|a|^2 is trapped in
[1 - C/gamma, 1 + C/gamma]; at or below C the check reports that the
hypothesis does not hold instead of claiming a failure.
"""

import numpy as np

from jitter_energy import FRAME_CONSTANT, SampleSequence, SamplingGrid, corollary_equivalence
from jitter_energy.bounds import bound_constants

print(f"C = {FRAME_CONSTANT:.12f}")
rng = np.random.default_rng(1)
base = np.cumsum(1.0 + rng.uniform(0, 0.8, 10))
base = base / np.min(np.diff(base))
a = SampleSequence(rng.normal(size=10) + 1j * rng.normal(size=10))

for gamma in (1.0, 1.08, 1.5, 2.0, 5.0, 10.0):
    grid = SamplingGrid(base * gamma)
    lower, upper = corollary_equivalence(a, grid)
    c1, c2 = bound_constants(gamma)
    ratio = upper.lhs / a.norm_squared
    print(f"gamma={gamma:5.2f}  [{c1:+.5f}, {c2:.5f}]  ratio {ratio:.5f}  {lower.status}/{upper.status}")
