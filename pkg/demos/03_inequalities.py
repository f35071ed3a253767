"""Pointwise csc bounds, Hilbert's inequality and the csc bilinear form."""

import numpy as np

from jitter_energy import SampleSequence
from jitter_energy.bounds import (
    BilinearFormInput,
    hilbert_form,
    lemma2_pointwise,
    lemma2_scan,
    mv_bound_check,
    skew_hermitian_check,
)

for x in (0.5, 0.25, 0.01):
    lhs1, rhs1, lhs2, rhs2 = lemma2_pointwise(x)
    print(f"x={x}: {lhs1:.6f} <= {rhs1:.6f}   {lhs2:.6f} <= {rhs2:.6f}")

for check in lemma2_scan(1e-4):
    print(f"{check.name:22s} {check.status}")

rng = np.random.default_rng(0)
a = SampleSequence(rng.normal(size=20) + 1j * rng.normal(size=20))
res = hilbert_form(a, rng.choice(np.arange(-100, 100), size=20, replace=False))
print(f"Hilbert: {res.lhs:.4f} <= {res.rhs:.4f} ({res.status})")

inp = BilinearFormInput(SampleSequence([1, 1]), [0.0, 0.25], [0.5, 0.75])
res = mv_bound_check(inp)
print(f"csc form, delta={inp.delta}: {res.lhs:.4f} <= {res.rhs:.4f} ({res.status})")

# two tight clusters half a period apart push every csc term towards +1
x = 0.01 * np.arange(8)
res = mv_bound_check(BilinearFormInput(SampleSequence(np.ones(8)), x, x + 0.5))
print(f"clustered sets: {res.lhs:.2f} vs {res.rhs:.2f} ({res.status})")

res = skew_hermitian_check(SampleSequence([1, 1j, 2 - 1j]), [0.0, 0.3, 0.71])
print(f"skew-Hermitian: |Re| = {res.lhs:.1e}, Im = {res.context['imag']:+.6f}")
