"""quadcheck: high-precision numerical verification of a catalog of
definite-integral identities.

The package verifies, to a user-chosen number of decimal digits, twelve
two-sided identities mixing Gaussian and hyperbolic-secant integrands
(two of them built around Euler's constant and Catalan's constant),
together with the Gaussian sech transform, its y <-> pi/y reciprocity,
and its derivative structure.  All arithmetic is arbitrary-precision
(mpmath) with faithful rounding; integrals are computed by
double-exponential (tanh-sinh / exp-sinh) quadrature.
"""

from .catalog import (
    DerivativeCheck,
    Identity,
    IntegralTerm,
    SideSpec,
    SideValue,
    VerificationRecord,
    builtin_catalog,
    evaluate_side,
    m_transform,
    m_transform_derivative,
    m_transform_derivative_check,
    make_term,
    modular_residual,
    verification_tolerance,
    verify_catalog,
    verify_identity,
)
from .catalog_io import load_catalog_file, load_catalog_text, serialize_catalog
from .constants import (
    catalan,
    catalan_alternating,
    certified_digits,
    euler_gamma,
    euler_gamma_zeta_series,
    named_constant,
    pi,
    pi_agm,
    pi_machin,
    sqrt_pi,
)
from .errors import (
    CatalogFormatError,
    ConfigurationError,
    DomainError,
    ExprSyntaxError,
    NonConvergenceError,
    QuadcheckError,
    SourceSpan,
    UnknownConstantError,
)
from .expressions import (
    Binary,
    ConstRef,
    Expr,
    Literal,
    StableKernel,
    Unary,
    Var,
    eval_const,
    eval_expr,
    parse_expression,
    print_expression,
    rewrite_stable,
)
from .kernels import self_log_power, sin_over_x, stable_sech, x_over_sinh
from .precision import PrecisionContext, Real, decimal_digits, make_context
from .quadrature import (
    Finite,
    Interval,
    QuadratureResult,
    SemiInfinite,
    integrate_finite,
    integrate_semi_infinite,
    integrate_semi_infinite_from,
    integrate_term,
)
from .report import (
    RunConfig,
    VerificationReport,
    render_report,
    run_verification,
)

__version__ = "0.1.0"
