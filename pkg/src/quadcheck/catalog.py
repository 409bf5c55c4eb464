"""The builtin identity catalog and its verification operations.

Twelve two-sided identities are encoded as data: each side is a sum of
definite integrals plus an optional exact constant.  Integrands mix
Gaussian factors at several scales with hyperbolic-secant kernels; two
of them involve Euler's constant and Catalan's constant inside the
integrand.  Multiplicative prefactors on right-hand sides are folded
into the term integrands so that a side is always a plain sum of terms.

Verification evaluates both sides with the double-exponential engine
and compares the relative residual against 10**-(target_digits - 5):
quadrature terminates around target + guard/2 agreeing digits, and five
digits of slack absorb summation noise across multi-term sides.

The same module hosts the Gaussian transform

    transform(y) = integral_0^inf exp(-x^2) sech(x y) dx,

whose reciprocity y*T(y) = sqrt(pi)*T(pi/y) and y-derivative (the
sinh/cosh^2 kernel integrals) provide independent structural checks on
the machinery that the catalog identities are built from.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import mpmath as mp
from mpmath import mpf

from .constants import sqrt_pi
from .errors import DomainError, NonConvergenceError
from .expressions import (
    Expr,
    Literal,
    contains_var,
    eval_const,
    parse_expression,
    rewrite_stable,
)
from .kernels import stable_sech
from .precision import PrecisionContext, Real, underflow_floor
from .quadrature import (
    MAX_LEVELS,
    Finite,
    Interval,
    QuadratureResult,
    SemiInfinite,
    integrate_semi_infinite,
    integrate_term,
)

# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class IntegralTerm:
    """One integral: an interval plus the integrand in source form and
    in the stability-rewritten form actually evaluated."""

    interval: Interval
    integrand: Expr
    rewritten: Expr


def make_term(interval: Interval, integrand: Expr) -> IntegralTerm:
    return IntegralTerm(interval, integrand, rewrite_stable(integrand))


@dataclass(frozen=True)
class SideSpec:
    terms: tuple[IntegralTerm, ...]
    exact_constant: Optional[Expr] = None

    def __post_init__(self) -> None:
        if not self.terms and self.exact_constant is None:
            raise ValueError("a side needs at least one term or an exact constant")
        if self.exact_constant is not None and contains_var(self.exact_constant):
            raise ValueError("exact_constant must not reference x")


@dataclass(frozen=True)
class Identity:
    id: int
    lhs: SideSpec
    rhs: SideSpec
    note: str = field(default="", compare=False)  # free text, not structural


@dataclass(frozen=True)
class SideValue:
    value: Real
    error_bound: Real
    nodes: int
    converged: bool


@dataclass(frozen=True)
class VerificationRecord:
    id: int
    lhs_value: Real
    rhs_value: Real
    abs_residual: Real
    rel_residual: Real
    tolerance: Real
    passed: bool
    converged: bool
    nodes: int
    elapsed_ms: float


@dataclass(frozen=True)
class DerivativeCheck:
    direct: Real
    finite_diff: Real
    residual: Real
    step: Real


# ---------------------------------------------------------------------------
# builtin catalog
#
# Each entry: (id, [(lower, upper, integrand), ...], const_or_None) per side.
# Bounds are "0", "1", "inf", or an expression string.  Right-side
# prefactors are folded into the integrand text.

_BUILTIN = (
    (
        1,
        [("0", "inf",
          "x*(gamma*sinh(gamma*x)/cosh(gamma*x)^2*exp(-x^2/pi^2)"
          " + sqrt(pi)*sinh(x)/cosh(x)^2*exp(-gamma^2*x^2))")],
        None,
        [("0", "inf", "exp(-x^2/pi^2)/cosh(gamma*x)")],
        None,
        "two Gaussian scales tied together by Euler's constant",
    ),
    (
        2,
        [("0", "inf", "x*(1/pi*exp(-x^2/pi^2) + 1/sqrt(pi)*exp(-x^2))*sinh(x)/cosh(x)^2")],
        None,
        [("0", "inf", "exp(-x^2)/cosh(pi*x)")],
        None,
        "reciprocal Gaussian widths 1/pi^2 and 1 against sech(pi x)",
    ),
    (
        3,
        [("0", "inf", "x*(exp(-x^2/pi) + 2*exp(-16*x^2/pi))*sinh(2*x)/cosh(2*x)^2")],
        None,
        [("0", "inf", "exp(-4*x^2/pi)/cosh(4*x)")],
        None,
        "doubled hyperbolic frequency, widths pi and pi/16",
    ),
    (
        4,
        [("0", "inf", "(sinh(x)/cosh(x)^2 + pi^(3/2)*sinh(pi*x)/cosh(pi*x)^2)*x*exp(-x^2)")],
        None,
        [("0", "inf", "exp(-x^2)/cosh(x)")],
        None,
        "same Gaussian against kernels at frequencies 1 and pi",
    ),
    (
        5,
        [("0", "inf", "x*exp(-x^2/pi)*sinh(x)/cosh(x)^2")],
        None,
        [("0", "inf", "exp(-4*x^2/pi)/cosh(2*x)")],
        None,
        "single-term kernel pair at frequency ratio 2",
    ),
    (
        6,
        [("0", "1", "x^(-ln(x))/(1+x^2)")],
        None,
        [("0", "inf", "exp(-4*x^2/pi)/cosh(2*sqrt(pi)*x)")],
        None,
        "self-power integrand on the unit interval",
    ),
    (
        7,
        [("0", "inf", "x^2*exp(-x^2)/cosh(sqrt(pi)*x)")],
        None,
        [("0", "inf", "1/4*exp(-x^2)/cosh(sqrt(pi)*x)")],
        None,
        "second moment equals a quarter of the zeroth moment",
    ),
    (
        8,
        [("0", "inf", "(exp(-x^2/pi^2) + pi^(5/2)*exp(-x^2))*x^2/cosh(x)")],
        None,
        [("0", "inf", "pi^2/2*exp(-x^2/pi^2)/cosh(x)")],
        None,
        "second moments at two widths against half of a zeroth moment",
    ),
    (
        9,
        [("0", "inf", "(sqrt(pi)*exp(-x^2/3) + 9*sqrt(3)/pi^2*exp(-3*x^2/pi^2))*x^2/cosh(x)")],
        None,
        [("0", "inf", "3*pi*sqrt(3)/2*exp(-3*x^2)/cosh(pi*x)")],
        None,
        "width-3 family with sqrt(3) weights",
    ),
    (
        10,
        [("0", "inf",
          "(pi^5*exp(-pi^3*x^2/catalan) + catalan^(5/2)*exp(-catalan*x^2/pi))*x^2/cosh(pi*x)")],
        None,
        [("0", "inf", "pi*catalan^(3/2)/2*exp(-catalan*x^2/pi)/cosh(pi*x)")],
        None,
        "Catalan's constant as the Gaussian width",
    ),
    (
        11,
        [("0", "inf", "x*(3 - 4*pi*x^2)*exp(-pi*x*(x+1))/sinh(pi*x)")],
        None,
        [],
        "1/(2*pi)",
        "cubic polynomial over sinh with an exact closed form",
    ),
    (
        12,
        [("0", "inf", "(sin(x)^2/x^2)/(cosh(x) + cos(x))"),
         ("0", "exp(-pi/2)", "2/pi*atan(x)/x")],
        None,
        [],
        "pi/4",
        "squared-sinc term plus an inverse-tangent tail",
    ),
)


def _parse_bound(text: str) -> Expr:
    if text in ("0", "1"):
        return Literal(text)
    return parse_expression(text)


def _make_interval(lower: str, upper: str) -> Interval:
    if upper == "inf":
        if lower != "0":
            raise ValueError("semi-infinite intervals must start at 0")
        return SemiInfinite()
    return Finite(_parse_bound(lower), _parse_bound(upper))


def _make_side(items, const_text) -> SideSpec:
    terms = tuple(
        make_term(_make_interval(lo, hi), parse_expression(src)) for lo, hi, src in items
    )
    const = parse_expression(const_text) if const_text is not None else None
    return SideSpec(terms, const)


_builtin_cache: Optional[tuple[Identity, ...]] = None


def builtin_catalog() -> list[Identity]:
    """The twelve builtin identities, in ascending id order."""
    global _builtin_cache
    if _builtin_cache is None:
        _builtin_cache = tuple(
            Identity(
                id=ident,
                lhs=_make_side(lhs_items, lhs_const),
                rhs=_make_side(rhs_items, rhs_const),
                note=note,
            )
            for ident, lhs_items, lhs_const, rhs_items, rhs_const, note in _BUILTIN
        )
    return list(_builtin_cache)


# ---------------------------------------------------------------------------
# verification


def evaluate_side(
    side: SideSpec, ctx: PrecisionContext, max_levels: int = MAX_LEVELS
) -> SideValue:
    """Sum of the side's integrals plus its exact constant.

    The error bound is the sum of the term error estimates (0 for a
    constant-only side); ``converged`` is the conjunction over terms.
    """
    with ctx.workdps():
        value = mpf(0)
        error = mpf(0)
        nodes = 0
        converged = True
        for index, term in enumerate(side.terms):
            try:
                result = integrate_term(term, ctx, max_levels)
            except DomainError as exc:
                raise DomainError(f"term {index}: {exc}") from exc
            value += result.value
            error += result.error_estimate
            nodes += result.nodes_evaluated
            converged = converged and result.converged
        if side.exact_constant is not None:
            value += eval_const(side.exact_constant, ctx)
        return SideValue(+value, +error, nodes, converged)


def verification_tolerance(ctx: PrecisionContext) -> Real:
    """Relative pass threshold: 10**-(target_digits - 5)."""
    with ctx.workdps():
        return mpf(10) ** (-(ctx.target_digits - 5))


def verify_identity(
    identity: Identity, ctx: PrecisionContext, max_levels: int = MAX_LEVELS
) -> VerificationRecord:
    """Evaluate both sides and compare at the context's tolerance.

    A non-converged underlying integral is reported through the record's
    ``converged`` flag and forces ``passed`` to False; it never passes
    silently on a small-looking residual.
    """
    start = time.perf_counter()
    lhs = evaluate_side(identity.lhs, ctx, max_levels)
    rhs = evaluate_side(identity.rhs, ctx, max_levels)
    with ctx.workdps():
        abs_residual = abs(lhs.value - rhs.value)
        rel_residual = abs_residual / max(abs(lhs.value), abs(rhs.value), mpf(1))
        tolerance = verification_tolerance(ctx)
        converged = lhs.converged and rhs.converged
        passed = bool(converged and rel_residual <= tolerance)
        return VerificationRecord(
            id=identity.id,
            lhs_value=lhs.value,
            rhs_value=rhs.value,
            abs_residual=+abs_residual,
            rel_residual=+rel_residual,
            tolerance=tolerance,
            passed=passed,
            converged=converged,
            nodes=lhs.nodes + rhs.nodes,
            elapsed_ms=(time.perf_counter() - start) * 1000.0,
        )


def verify_catalog(
    identities, ctx: PrecisionContext, max_levels: int = MAX_LEVELS
) -> list[VerificationRecord]:
    """Verify identities in ascending id order."""
    return [
        verify_identity(identity, ctx, max_levels)
        for identity in sorted(identities, key=lambda i: i.id)
    ]


# ---------------------------------------------------------------------------
# Gaussian sech transform


def _require_result(result: QuadratureResult, what: str) -> Real:
    if not result.converged:
        raise NonConvergenceError(
            f"{what} did not converge within the level budget",
            best_value=result.value,
        )
    return result.value


def m_transform(y, ctx: PrecisionContext, max_levels: int = MAX_LEVELS) -> Real:
    """integral_0^inf exp(-x^2) sech(x*y) dx for y >= 0.

    At y = 0 the kernel collapses and the value is sqrt(pi)/2.
    """
    with ctx.workdps():
        y = mpf(y)
        if y < 0:
            raise DomainError(f"transform requires y >= 0, got {y}")
        floor = underflow_floor(ctx)

        def integrand(x: Real) -> Real:
            gauss = mp.exp(-x * x)
            if gauss < floor:
                return mpf(0)
            return gauss * stable_sech(x * y, ctx)

        result = integrate_semi_infinite(integrand, ctx, max_levels)
        return +_require_result(result, f"transform at y = {mp.nstr(y, 12)}")


def modular_residual(y, ctx: PrecisionContext, max_levels: int = MAX_LEVELS) -> Real:
    """|y*T(y) - sqrt(pi)*T(pi/y)| for the transform T, y > 0.

    The reciprocity is symmetric under y <-> pi/y, with fixed point
    y = sqrt(pi); an exact transform would make this identically zero.
    """
    with ctx.workdps():
        y = mpf(y)
        if y <= 0:
            raise DomainError(f"modular residual requires y > 0, got {y}")
        left = y * m_transform(y, ctx, max_levels)
        right = sqrt_pi(ctx) * m_transform(mp.pi / y, ctx, max_levels)
        return abs(left - right)


def m_transform_derivative(y, ctx: PrecisionContext, max_levels: int = MAX_LEVELS) -> Real:
    """d/dy of the transform by differentiation under the integral sign:

        -integral_0^inf x exp(-x^2) sinh(x y)/cosh(x y)^2 dx,

    evaluated as -x exp(-x^2) tanh(x y) sech(x y)."""
    with ctx.workdps():
        y = mpf(y)
        floor = underflow_floor(ctx)

        def integrand(x: Real) -> Real:
            gauss = mp.exp(-x * x)
            if gauss < floor:
                return mpf(0)
            xy = x * y
            return x * gauss * mp.tanh(xy) * stable_sech(xy, ctx)

        result = integrate_semi_infinite(integrand, ctx, max_levels)
        return -_require_result(result, f"transform derivative at y = {mp.nstr(y, 12)}")


def m_transform_derivative_check(
    y,
    ctx: PrecisionContext,
    step=None,
    max_levels: int = MAX_LEVELS,
) -> DerivativeCheck:
    """Compare the direct derivative integral against a central
    difference of the transform with step 10**-(target_digits/3).

    The central difference is second order, so halving the step should
    shrink the residual by about a factor of four.
    """
    with ctx.workdps():
        y = mpf(y)
        if y <= 0:
            raise DomainError(f"derivative check requires y > 0, got {y}")
        if step is None:
            step = mp.power(10, -mpf(ctx.target_digits) / 3)
        else:
            step = mpf(step)
        direct = m_transform_derivative(y, ctx, max_levels)
        upper = m_transform(y + step, ctx, max_levels)
        lower = m_transform(y - step, ctx, max_levels)
        finite_diff = (upper - lower) / (2 * step)
        return DerivativeCheck(
            direct=+direct,
            finite_diff=+finite_diff,
            residual=abs(direct - finite_diff),
            step=+step,
        )
