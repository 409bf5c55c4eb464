"""Double-exponential quadrature for the catalog's integrand family.

Two change-of-variable schemes drive a refined trapezoidal sum:

* finite intervals use tanh-sinh, ``x = mid + half*tanh((pi/2) sinh t)``;
* ``[0, inf)`` uses exp-sinh, ``x = exp((pi/2) sinh t)``.

Both make the transformed integrand decay doubly exponentially in ``t``
for analytic integrands with (at least) exponential decay, so halving
the step roughly doubles the number of correct digits.  Levels halve the
step ``h`` starting from 1; the sum at each level reuses the previous
level through ``S_new = S_old/2 + h * (terms at odd multiples of h)``.

Termination requires two consecutive level agreements within

    tol = 10**-(target_digits + guard_digits//2) * max(1, |value|)

to avoid stopping on a false plateau.  The reported error estimate is
the last successive-level difference, floored at the working-precision
resolution of the value (an estimate of exactly 0 would be dishonest).

Abscissas are generated strictly inside the interval: near a finite
endpoint the node is formed by subtracting the endpoint distance
``half*(1 - tanh|u|)``, computed from decaying exponentials, and the
walk stops if that distance rounds to zero at working precision.  The
integrand is therefore never called at an endpoint.

Node evaluation order is fixed (center, then the positive side
ascending, then the negative side), so results are reproducible
bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

import mpmath as mp
from mpmath import mpf

from .errors import ConfigurationError, DomainError
from .expressions import Expr, eval_const, eval_expr
from .precision import PrecisionContext, Real, underflow_floor

MAX_LEVELS = 14

# consecutive below-floor terms required before a side walk stops; three
# in a row protects against an accidental near-zero of the integrand
_SMALL_STREAK = 3


@dataclass(frozen=True)
class Finite:
    """Interval [lower, upper] with constant expression bounds."""

    lower: Expr
    upper: Expr


@dataclass(frozen=True)
class SemiInfinite:
    """The interval [0, inf)."""


Interval = Union[Finite, SemiInfinite]


@dataclass(frozen=True)
class QuadratureResult:
    value: Real
    error_estimate: Real
    levels_used: int
    nodes_evaluated: int
    converged: bool


def _call_integrand(f: Callable[[Real], Real], x: Real) -> Real:
    try:
        fx = f(x)
    except DomainError as exc:
        raise DomainError(
            f"integrand evaluation failed at x = {mp.nstr(x, 12)}: {exc}"
        ) from exc
    if not mp.isfinite(fx):
        raise DomainError(f"integrand is non-finite at x = {mp.nstr(x, 12)}")
    return fx


class _Refiner:
    """Level-refinement driver shared by the two schemes.

    ``walk(h, only_odd)`` sums the transformed terms at multiples of
    ``h`` (odd multiples only after the first level), reporting the
    partial sum, node count, and whether any term rose above the
    truncation floor.
    """

    def __init__(self, ctx: PrecisionContext, max_levels: int):
        if max_levels < 1:
            raise ConfigurationError(f"max_levels must be >= 1, got {max_levels}")
        self.ctx = ctx
        self.max_levels = max_levels
        self.floor = underflow_floor(ctx)
        # beyond this |t| even a unit integrand contributes below floor
        self.t_cap = mp.asinh(
            2 * (ctx.working_digits + 80) * mp.log(10) / mp.pi
        ) + mpf(1) / 2

    def run(self, walk) -> QuadratureResult:
        ctx = self.ctx
        with ctx.workdps():
            tol_scale = mpf(10) ** (-ctx.quad_tol_digits)
            est_floor = mpf(10) ** (-(ctx.working_digits - 2))
            h = mpf(1)
            first, nodes, significant = walk(h, False)
            value = h * first
            if not significant:
                # every coarse-level term sat below the truncation floor:
                # the integral is zero to working accuracy
                return QuadratureResult(+value, mpf(0), 1, nodes, True)
            level = 1
            diff = abs(value)
            prev_ok = False
            while level < self.max_levels:
                h = h / 2
                level += 1
                new_sum, new_nodes, _ = walk(h, True)
                nodes += new_nodes
                new_value = value / 2 + h * new_sum
                diff = abs(new_value - value)
                value = new_value
                ok = diff <= tol_scale * max(1, abs(value))
                if ok and prev_ok:
                    est = max(diff, est_floor * max(1, abs(value)))
                    return QuadratureResult(+value, +est, level, nodes, True)
                prev_ok = ok
            est = max(diff, est_floor * max(1, abs(value)))
            return QuadratureResult(+value, +est, level, nodes, False)


def integrate_finite(
    f: Callable[[Real], Real],
    a,
    b,
    ctx: PrecisionContext,
    max_levels: int = MAX_LEVELS,
) -> QuadratureResult:
    """Tanh-sinh integration of ``f`` over the finite interval [a, b]."""
    refiner = _Refiner(ctx, max_levels)
    with ctx.workdps():
        a = mpf(a)
        b = mpf(b)
        if not (a < b):
            raise ConfigurationError(f"integration bounds must satisfy a < b, got [{a}, {b}]")
        half = (b - a) / 2
        mid = (a + b) / 2
        piby2 = mp.pi / 2
        floor = refiner.floor

        def node(t: Real) -> Optional[tuple[Real, Real]]:
            u = piby2 * mp.sinh(t)
            au = abs(u)
            distance = half * 2 / (mp.exp(2 * au) + 1)  # half*(1 - tanh|u|)
            x = b - distance if t > 0 else a + distance
            if x <= a or x >= b:
                return None  # collapsed into an endpoint at working precision
            weight = half * piby2 * mp.cosh(t) * mp.sech(u) ** 2
            return x, weight

        def walk(h: Real, only_odd: bool):
            nodes = 0
            significant = False
            total = mpf(0)
            if not only_odd:
                total += _call_integrand(f, mid) * half * piby2
                nodes += 1
                if abs(total) >= floor:
                    significant = True
            for sign in (1, -1):
                k = 1
                step = 2 if only_odd else 1
                small = 0
                while k * h <= refiner.t_cap:
                    made = node(sign * k * h)
                    if made is None:
                        break
                    x, weight = made
                    term = _call_integrand(f, x) * weight
                    total += term
                    nodes += 1
                    if abs(term) < floor:
                        small += 1
                        if small >= _SMALL_STREAK:
                            break
                    else:
                        small = 0
                        significant = True
                    k += step
            return total, nodes, significant

        return refiner.run(walk)


def integrate_semi_infinite(
    f: Callable[[Real], Real],
    ctx: PrecisionContext,
    max_levels: int = MAX_LEVELS,
) -> QuadratureResult:
    """Exp-sinh integration of ``f`` over [0, inf).

    Requires at least exponential decay of ``f`` at infinity; the upper
    side of the walk stops once terms fall below the truncation floor,
    which for Gaussian- or exponentially-decaying integrands happens
    after a handful of nodes per level.
    """
    refiner = _Refiner(ctx, max_levels)
    with ctx.workdps():
        piby2 = mp.pi / 2
        floor = refiner.floor

        def term_at(t: Real) -> Real:
            x = mp.exp(piby2 * mp.sinh(t))  # always strictly positive
            weight = x * piby2 * mp.cosh(t)
            return _call_integrand(f, x) * weight

        def walk(h: Real, only_odd: bool):
            nodes = 0
            significant = False
            total = mpf(0)
            if not only_odd:
                total += term_at(mpf(0))
                nodes += 1
                if abs(total) >= floor:
                    significant = True
            for sign in (1, -1):
                k = 1
                step = 2 if only_odd else 1
                small = 0
                while k * h <= refiner.t_cap:
                    term = term_at(sign * k * h)
                    total += term
                    nodes += 1
                    if abs(term) < floor:
                        small += 1
                        if small >= _SMALL_STREAK:
                            break
                    else:
                        small = 0
                        significant = True
                    k += step
            return total, nodes, significant

        return refiner.run(walk)


def integrate_semi_infinite_from(
    f: Callable[[Real], Real],
    a,
    ctx: PrecisionContext,
    max_levels: int = MAX_LEVELS,
) -> QuadratureResult:
    """Exp-sinh integration over [a, inf) via the shift x = a + u."""
    with ctx.workdps():
        a = mpf(a)
    return integrate_semi_infinite(lambda u: f(a + u), ctx, max_levels)


def integrate_term(term, ctx: PrecisionContext, max_levels: int = MAX_LEVELS) -> QuadratureResult:
    """Integrate a catalog term (an object with ``interval`` and
    ``rewritten`` attributes) by dispatching on its interval."""

    def f(x: Real) -> Real:
        return eval_expr(term.rewritten, x, ctx)

    interval = term.interval
    if isinstance(interval, SemiInfinite):
        return integrate_semi_infinite(f, ctx, max_levels)
    lower = eval_const(interval.lower, ctx)
    upper = eval_const(interval.upper, ctx)
    return integrate_finite(f, lower, upper, ctx, max_levels)
