"""Named constants: pi, sqrt(pi), Euler's constant, Catalan's constant.

These four are the only constants appearing in the builtin catalog.
Each is available through two algorithmically independent routes so the
test suite can cross-check them against each other:

* ``pi``          -- mpmath's builtin (binary-splitting Chudnovsky);
                     oracles :func:`pi_machin` and :func:`pi_agm`.
* ``euler_gamma`` -- Bessel-quotient scheme of Brent and McMillan
                     (the defining harmonic-sum limit gains digits only
                     logarithmically and is never used);
                     oracle :func:`euler_gamma_zeta_series`.
* ``catalan``     -- central-binomial series (geometric ratio 1/4);
                     oracle :func:`catalan_alternating` which accelerates
                     the defining alternating sum over odd squares.

Values are cached per working precision: the constants appear inside
integrands evaluated at thousands of quadrature nodes.  The cache is a
plain dict written once per key; recomputation on a racing first access
is idempotent, so no coordination is needed.
"""

from __future__ import annotations

import mpmath as mp
from mpmath import mpf

from .errors import UnknownConstantError
from .precision import PrecisionContext, Real, decimal_digits

CONSTANT_NAMES = ("pi", "sqrt_pi", "gamma", "catalan")

_cache: dict[tuple[str, int], Real] = {}


def pi(ctx: PrecisionContext) -> Real:
    """pi at working precision."""
    with ctx.workdps():
        return +mp.pi


def sqrt_pi(ctx: PrecisionContext) -> Real:
    """sqrt(pi) at working precision."""
    with ctx.workdps():
        return mp.sqrt(mp.pi)


def euler_gamma(ctx: PrecisionContext) -> Real:
    """Euler's constant via the Brent-McMillan Bessel quotient.

    With n chosen so that pi*exp(-4n) is negligible,

        gamma = A(n)/B(n) - ln n + O(exp(-4n)),

    where B = sum_k (n^k/k!)^2 and A = sum_k (n^k/k!)^2 * H_k with H_k
    the k-th harmonic number.
    """
    wd = ctx.working_digits
    with mp.workdps(wd + 15):
        n = int(mp.ceil(mp.log(10) * (wd + 10) / 4)) + 1
        a_sum = mpf(0)
        b_sum = mpf(0)
        term = mpf(1)  # (n^k/k!)^2
        harmonic = mpf(0)
        n_squared = mpf(n) ** 2
        stop = mpf(10) ** (-(wd + 12))
        k = 0
        while True:
            a_sum += term * harmonic
            b_sum += term
            k += 1
            term = term * n_squared / (k * k)
            harmonic += mpf(1) / k
            if k > 2 * n and term * (harmonic + 1) < stop * b_sum:
                break
        value = a_sum / b_sum - mp.log(n)
    with ctx.workdps():
        return +value


def euler_gamma_zeta_series(ctx: PrecisionContext) -> Real:
    """Independent route: gamma = 1 - sum_{k>=2} (zeta(k) - 1)/k.

    The terms decay like 2**-k; zeta at integer arguments comes from
    mpmath, which shares no machinery with the Bessel quotient above.
    """
    wd = ctx.working_digits
    with mp.workdps(wd + 15):
        stop = mpf(10) ** (-(wd + 12))
        total = mpf(0)
        k = 2
        while True:
            term = (mp.zeta(k) - 1) / k
            total += term
            if term < stop:
                break
            k += 1
        value = 1 - total
    with ctx.workdps():
        return +value


def catalan(ctx: PrecisionContext) -> Real:
    """Catalan's constant via the central-binomial series

        G = (pi/8) ln(2 + sqrt 3) + (3/8) sum_n 1/(binom(2n,n) (2n+1)^2).

    The summand shrinks by a factor ~4 per term, so ~1.7 digits/term;
    the defining alternating sum over odd squares gains one digit per
    three terms and is used only as the accelerated cross-check below.
    """
    wd = ctx.working_digits
    with mp.workdps(wd + 15):
        total = mpf(0)
        inv_binom = mpf(1)  # 1/binom(2n, n)
        stop = mpf(10) ** (-(wd + 12))
        n = 0
        while True:
            term = inv_binom / (2 * n + 1) ** 2
            total += term
            if term < stop:
                break
            inv_binom = inv_binom * (n + 1) / (2 * (2 * n + 1))
            n += 1
        value = mp.pi / 8 * mp.log(2 + mp.sqrt(3)) + mpf(3) / 8 * total
    with ctx.workdps():
        return +value


def catalan_alternating(ctx: PrecisionContext) -> Real:
    """Independent route: Cohen-Rodriguez Villegas-Zagier acceleration of
    the defining series sum_k (-1)^k/(2k+1)^2.

    The coefficients 1/(2k+1)^2 are a moment sequence, so the scheme
    converges geometrically at rate (3 + sqrt 8)^-n.
    """
    wd = ctx.working_digits
    with mp.workdps(wd + 15):
        n = int(mp.ceil((wd + 10) * mp.log(10) / mp.log(3 + mp.sqrt(8)))) + 3
        d = (3 + mp.sqrt(8)) ** n
        d = (d + 1 / d) / 2
        b = mpf(-1)
        c = -d
        s = mpf(0)
        for k in range(n):
            c = b - c
            s += c / (2 * k + 1) ** 2
            b = (k + n) * (k - n) * b / ((k + mpf(1) / 2) * (k + 1))
        value = s / d
    with ctx.workdps():
        return +value


def pi_machin(ctx: PrecisionContext) -> Real:
    """Oracle: Machin's formula pi = 16 atan(1/5) - 4 atan(1/239)."""
    wd = ctx.working_digits

    def atan_inv(q: int) -> Real:
        # atan(1/q) = sum_k (-1)^k / ((2k+1) q^(2k+1))
        q2 = mpf(q) * q
        power = mpf(1) / q
        stop = mpf(10) ** (-(wd + 12))
        total = mpf(0)
        k = 0
        while True:
            term = power / (2 * k + 1)
            total += -term if k % 2 else term
            if term < stop:
                break
            power /= q2
            k += 1
        return total

    with mp.workdps(wd + 15):
        value = 16 * atan_inv(5) - 4 * atan_inv(239)
    with ctx.workdps():
        return +value


def pi_agm(ctx: PrecisionContext) -> Real:
    """Oracle: Gauss-Legendre arithmetic-geometric-mean iteration."""
    wd = ctx.working_digits
    with mp.workdps(wd + 20):
        a = mpf(1)
        b = 1 / mp.sqrt(2)
        t = mpf(1) / 4
        p = mpf(1)
        stop = mpf(10) ** (-(wd + 12))
        while abs(a - b) > stop:
            a_next = (a + b) / 2
            b = mp.sqrt(a * b)
            t -= p * (a - a_next) ** 2
            a = a_next
            p *= 2
        value = (a + b) ** 2 / (4 * t)
    with ctx.workdps():
        return +value


_DISPATCH = {
    "pi": pi,
    "sqrt_pi": sqrt_pi,
    "gamma": euler_gamma,
    "catalan": catalan,
}


def named_constant(name: str, ctx: PrecisionContext) -> Real:
    """Cached lookup of one of pi, sqrt_pi, gamma, catalan."""
    if name not in _DISPATCH:
        raise UnknownConstantError(
            f"unknown constant {name!r}; expected one of {', '.join(CONSTANT_NAMES)}"
        )
    key = (name, ctx.working_digits)
    value = _cache.get(key)
    if value is None:
        value = _DISPATCH[name](ctx)
        _cache[key] = value
    return value


def certified_digits(name: str, ctx: PrecisionContext) -> str:
    """Decimal string of the constant, truncated to target_digits digits.

    Truncation (rather than rounding) makes the string at a lower target
    a prefix of the string at a higher target.
    """
    return decimal_digits(named_constant(name, ctx), ctx.target_digits)
