"""Energy of an ideal DAC output under sampling-clock jitter.

The output ``f(t) = sum_n a_n sinc(t - lambda_n)`` with jittered instants
``lambda_n = n + eps_n`` has energy ``a^H G a`` for the sinc Gram matrix
``G``. For separation ``gamma > C = sqrt(1/3 + pi^2/12)`` that energy lies
within ``(1 -/+ C/gamma) * sum |a_n|^2``; this package computes the energy,
cross-checks it by quadrature, and verifies the bounds numerically.
"""

from .bounds import (
    BilinearFormInput,
    BoundCheckResult,
    bound_constants,
    corollary_equivalence,
    csc_bilinear_form,
    hilbert_form,
    lemma2_pointwise,
    lemma2_scan,
    mv_bound_check,
    skew_hermitian_check,
    theorem_lower_bound,
    upper_bound_check,
)
from .core import (
    FRAME_CONSTANT,
    SampleSequence,
    SamplingGrid,
    distance_to_nearest_integer,
    frame_constant,
    min_plus_separation,
    signal_eval,
    sinc_eval,
    sinc_inner_product,
)
from .energy import (
    EnergyReport,
    GramMatrix,
    QuadratureError,
    energy_closed_form,
    energy_quadrature,
    gram_matrix,
    parseval_residual,
)
from .jitter import JitterSpec, admissible_scaled_grid, generate_grid, validate_spacing

__version__ = "0.1.0"
