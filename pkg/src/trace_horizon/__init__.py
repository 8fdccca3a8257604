"""Trace-positivity certificates for SL(m, Z) and the dilatation bounds built on them."""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    SurfaceParams,
    bound_report,
    constant_assembly,
    lefschetz_floor,
    main_lower,
    penner_lower,
    theta,
    tsai_lower,
    tsai_upper,
)
from .errors import ContractViolation, NumericalFailure, ParseError, SearchExhausted
from .lefschetz import LefschetzCertificate, dilatation_lower_from_homology, lefschetz_number
from .matrix_core import IntMatrix, char_poly, det, is_symplectic, parse_matrix, trace_power_direct
from .polynomial import (
    CyclotomicFactorization,
    IntPolynomial,
    cyclotomic,
    cyclotomic_factorization,
    euler_phi,
    power_roots_poly,
    power_sums,
    totient_threshold,
)
from .spectral import house, roots, spectral_radius
from .trace_search import (
    NuCertificate,
    SearchFailure,
    dirichlet_nu,
    fejer_value,
    find_nu,
    find_nu_cyclotomic,
    find_nu_expanding,
    newton_girard_nu,
)
