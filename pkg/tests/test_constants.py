import mpmath as mp
import pytest
from mpmath import mpf

from quadcheck import UnknownConstantError, make_context
from quadcheck.constants import (
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

ctx = make_context(30)

PI_30 = "3.14159265358979323846264338327"
GAMMA_30 = "0.577215664901532860606512090082"
CATALAN_30 = "0.915965594177219015054603514932"


def working_tol(c):
    return mpf(10) ** (-c.working_digits)


def test_pi_digit_string():
    assert certified_digits("pi", ctx) == PI_30


def test_gamma_digit_string():
    assert certified_digits("gamma", ctx) == GAMMA_30


def test_catalan_digit_string():
    assert certified_digits("catalan", ctx) == CATALAN_30


def test_pi_two_independent_oracles_agree():
    reference = pi(ctx)
    assert abs(pi_machin(ctx) - reference) <= working_tol(ctx)
    assert abs(pi_agm(ctx) - reference) <= working_tol(ctx)
    assert abs(pi_machin(ctx) - pi_agm(ctx)) <= working_tol(ctx)


def test_sin_of_pi_vanishes():
    with ctx.workdps():
        value = mp.sin(pi(ctx))
    assert abs(value) <= mpf(10) ** (-(ctx.working_digits - 2))


def test_pi_precision_consistency():
    a = pi(make_context(20))
    b = pi(make_context(40))
    assert abs(a - b) < mpf(10) ** -25  # a carries 30 working digits


def test_gamma_two_algorithms_agree():
    assert abs(euler_gamma(ctx) - euler_gamma_zeta_series(ctx)) <= working_tol(ctx)


def test_gamma_against_library_constant():
    with mp.workdps(2 * ctx.working_digits):
        reference = +mp.euler
    assert abs(euler_gamma(ctx) - reference) <= working_tol(ctx)


def test_gamma_bracket():
    value = euler_gamma(ctx)
    assert mpf("0.577") < value < mpf("0.578")


def test_gamma_precision_consistency():
    a = euler_gamma(make_context(20))
    b = euler_gamma(make_context(40))
    assert abs(a - b) < mpf(10) ** -25


def test_catalan_two_algorithms_agree():
    assert abs(catalan(ctx) - catalan_alternating(ctx)) <= working_tol(ctx)


def test_catalan_against_library_constant():
    with mp.workdps(2 * ctx.working_digits):
        reference = +mp.catalan
    assert abs(catalan(ctx) - reference) <= working_tol(ctx)


def test_catalan_precision_consistency():
    a = catalan(make_context(20))
    b = catalan(make_context(40))
    assert abs(a - b) < mpf(10) ** -25


def partial_sum(n):
    # defining alternating series over odd squares, terms k = 0..n
    with ctx.workdps():
        total = mpf(0)
        for k in range(n + 1):
            term = mpf(1) / (2 * k + 1) ** 2
            total += -term if k % 2 else term
        return total


@pytest.mark.parametrize("n", range(21))
def test_alternating_series_bracketing(n):
    value = catalan(ctx)
    if n % 2 == 0:
        assert partial_sum(n) > value
    else:
        assert partial_sum(n) < value


def test_sqrt_pi_squares_to_pi():
    with ctx.workdps():
        square = sqrt_pi(ctx) ** 2
    assert abs(square - pi(ctx)) <= mpf(10) ** (-(ctx.working_digits - 2))


def test_named_constant_dispatch():
    assert named_constant("pi", ctx) == pi(ctx)
    assert named_constant("sqrt_pi", ctx) == sqrt_pi(ctx)
    assert named_constant("gamma", ctx) == euler_gamma(ctx)
    assert named_constant("catalan", ctx) == catalan(ctx)


def test_named_constant_rejects_unknown_names():
    with pytest.raises(UnknownConstantError):
        named_constant("planck", ctx)


def test_named_constant_caches():
    assert named_constant("gamma", ctx) is named_constant("gamma", ctx)


def test_digit_prefix_monotone_refinement():
    # digits certified at target D are a prefix of those at target 2D
    for name in ("pi", "gamma", "catalan"):
        low = certified_digits(name, make_context(20))
        high = certified_digits(name, make_context(40))
        assert high.startswith(low)
