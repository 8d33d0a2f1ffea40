"""Numerical laboratory for cosine functions in matrix algebras.

Cosine functions ``C(0) = 1, C(s+t) + C(s-t) = 2 C(s) C(t)`` are realized
in finite-dimensional Banach algebras (complex matrices) and on scalar
exact-coordinate groups.  The package checks the zero-two law and all of
its ingredients numerically: Chebyshev extension of cosine sequences, the
binomial square-root series and its norm bound, half-angle reconstruction,
spectral-radius analysis and the explicit contraction envelope.
"""

from .algebra import (
    Spectrum,
    as_matrix,
    identity,
    load_matrix,
    matrix_cos,
    matrix_sqrt_newton,
    operator_norm,
    save_matrix,
    spectral_radius_eig,
    spectral_radius_gelfand,
    spectrum,
)
from .chebyshev import (
    ChebCoeffs,
    cheb_coeffs,
    cheb_explicit,
    cheb_norm_bound,
    cheb_recurrence,
    extend_cosine_sequence,
)
from .errors import (
    ArgumentTypeError,
    CosineLabError,
    DomainError,
    InvalidInputError,
    NumericalFailureError,
    OverflowGuardError,
    PrecisionBudgetError,
    SlowConvergenceError,
)
from .families import (
    CosineFamily,
    Generator,
    GroupPoint,
    Hamel,
    HamelSpec,
    ScalarCos,
    ScalarCosh,
    commutation_residual,
    convergent_points,
    convergents,
    dalembert_residual,
    evaluate,
    load_family,
    product_identity_residual,
    save_family,
)
from .sqrt_series import (
    SqrtSeriesCoeffs,
    alpha_coeffs,
    bound_rhs,
    halfplane_check,
    matrix_sqrt_series,
    scalar_sqrt_series,
)
from .zero_two import (
    ContractionSequence,
    RefinementTrace,
    SamplingPlan,
    TrichotomyReport,
    check_half_angle,
    contraction_sequence,
    dyadic_refine,
    fixed_point_scan,
    half_angle_bound,
    half_angle_reconstruct,
    limsup_estimate,
    spectral_limsup,
    spectral_zero_two_check,
)

__version__ = "0.1.0"
