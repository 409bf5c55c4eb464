import mpmath as mp
import pytest

from quadcheck import ConfigurationError, make_context
from quadcheck.precision import PrecisionContext, decimal_digits, underflow_floor


def test_make_context_thirty():
    ctx = make_context(30)
    assert ctx.target_digits == 30
    assert ctx.guard_digits == 15
    assert ctx.working_digits == 45


def test_make_context_floor_of_guard_rule():
    ctx = make_context(10)
    assert ctx.target_digits == 10
    assert ctx.guard_digits == 10
    assert ctx.working_digits == 20


def test_make_context_rejects_small_targets():
    with pytest.raises(ConfigurationError):
        make_context(9)
    with pytest.raises(ConfigurationError):
        make_context(0)
    with pytest.raises(ConfigurationError):
        make_context(-5)


def test_make_context_rejects_non_integers():
    with pytest.raises(ConfigurationError):
        make_context(30.0)


def test_working_digits_always_sum():
    for target in (10, 17, 30, 41, 100):
        ctx = make_context(target)
        assert ctx.working_digits == ctx.target_digits + ctx.guard_digits
        assert ctx.guard_digits >= 10


def test_context_is_immutable():
    ctx = make_context(30)
    with pytest.raises(Exception):
        ctx.target_digits = 50


def test_direct_construction_validates():
    with pytest.raises(ConfigurationError):
        PrecisionContext(target_digits=30, guard_digits=5)


def test_workdps_produces_working_precision_values():
    ctx = make_context(40)
    with ctx.workdps():
        assert mp.mp.dps == 60
        third = mp.mpf(1) / 3
    # 60 digits of 1/3 means the error is below 1e-59
    with mp.workdps(120):
        assert abs(third - mp.mpf(1) / 3) < mp.mpf(10) ** -59


def test_underflow_floor_scale():
    ctx = make_context(30)
    floor = underflow_floor(ctx)
    assert mp.mpf(10) ** -96 < floor < mp.mpf(10) ** -94


def test_extreme_exponents_are_representable():
    ctx = make_context(30)
    with ctx.workdps():
        huge = mp.mpf(10) ** (10**6)
        tiny = mp.mpf(10) ** (-(10**6))
        assert mp.isfinite(huge) and huge > 0
        assert mp.isfinite(tiny) and tiny > 0
        assert abs(huge * tiny - 1) < mp.mpf(10) ** -40


def test_decimal_digits_truncates():
    with mp.workdps(50):
        value = mp.mpf("3.14159265358979323846")
    assert decimal_digits(value, 6) == "3.14159"  # truncated, not rounded
    assert decimal_digits(value, 1) == "3"
    with mp.workdps(50):
        small = mp.mpf("0.00123456789")
    assert decimal_digits(small, 4) == "0.001234"


def test_decimal_digits_rejects_nonpositive():
    with pytest.raises(ValueError):
        decimal_digits(mp.mpf(0), 5)
