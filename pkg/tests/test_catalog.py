import mpmath as mp
import pytest
from mpmath import mpf

from quadcheck import DomainError, builtin_catalog, make_context
from quadcheck.catalog import (
    Identity,
    SideSpec,
    evaluate_side,
    m_transform,
    m_transform_derivative_check,
    make_term,
    modular_residual,
    verification_tolerance,
    verify_identity,
)
from quadcheck.expressions import Literal, parse_expression, print_expression
from quadcheck.quadrature import Finite, SemiInfinite

ctx = make_context(30)
fast = make_context(14)


# ---------------------------------------------------------------------------
# catalog structure


def test_catalog_has_twelve_identities():
    cat = builtin_catalog()
    assert len(cat) == 12
    assert [identity.id for identity in cat] == list(range(1, 13))


def test_identity_11_shape():
    identity = builtin_catalog()[10]
    assert identity.id == 11
    assert identity.rhs.terms == ()
    assert identity.rhs.exact_constant == parse_expression("1/(2*pi)")
    assert len(identity.lhs.terms) == 1
    assert isinstance(identity.lhs.terms[0].interval, SemiInfinite)


def test_identity_12_shape():
    identity = builtin_catalog()[11]
    assert identity.id == 12
    assert identity.rhs.exact_constant == parse_expression("pi/4")
    assert len(identity.lhs.terms) == 2
    first, second = identity.lhs.terms
    assert isinstance(first.interval, SemiInfinite)
    assert isinstance(second.interval, Finite)
    assert second.interval.lower == Literal("0")
    assert second.interval.upper == parse_expression("exp(-pi/2)")


def test_all_other_sides_are_single_integrals():
    for identity in builtin_catalog()[:10]:
        for side in (identity.lhs, identity.rhs):
            assert len(side.terms) == 1
            assert side.exact_constant is None
            assert isinstance(side.terms[0].interval, (SemiInfinite, Finite))


def test_identity_6_lhs_is_unit_interval():
    identity = builtin_catalog()[5]
    interval = identity.lhs.terms[0].interval
    assert isinstance(interval, Finite)
    assert interval.lower == Literal("0")
    assert interval.upper == Literal("1")


def test_side_spec_requires_content():
    with pytest.raises(ValueError):
        SideSpec(terms=())
    with pytest.raises(ValueError):
        SideSpec(terms=(), exact_constant=parse_expression("x+1"))


# ---------------------------------------------------------------------------
# side evaluation


def test_constant_only_side():
    side = SideSpec(terms=(), exact_constant=parse_expression("pi/4"))
    result = evaluate_side(side, ctx)
    with ctx.workdps():
        assert abs(result.value - mp.pi / 4) < mpf(10) ** -40
    assert result.error_bound == 0
    assert result.nodes == 0
    assert result.converged


def test_zero_constant_side():
    side = SideSpec(terms=(), exact_constant=Literal("0"))
    result = evaluate_side(side, ctx)
    assert result.value == 0
    assert result.error_bound == 0
    assert result.nodes == 0


def test_identity5_sides_agree():
    identity = builtin_catalog()[4]
    lhs = evaluate_side(identity.lhs, ctx)
    rhs = evaluate_side(identity.rhs, ctx)
    with ctx.workdps():
        diff = abs(lhs.value - rhs.value)
        budget = max(lhs.error_bound + rhs.error_bound, mpf(10) ** -40)
    assert diff <= 10 * budget


# ---------------------------------------------------------------------------
# verification records


def test_verify_identity_7_cross_checked_at_doubled_precision():
    identity = builtin_catalog()[6]
    record = verify_identity(identity, fast)
    assert record.passed and record.converged
    # independent oracle: both sides via the library integrator at
    # doubled precision
    with mp.workdps(2 * fast.working_digits):
        lhs = mp.quad(lambda x: x**2 * mp.exp(-(x**2)) / mp.cosh(mp.sqrt(mp.pi) * x), [0, mp.inf])
        rhs = mp.quad(lambda x: mp.exp(-(x**2)) / mp.cosh(mp.sqrt(mp.pi) * x), [0, mp.inf]) / 4
        assert abs(record.lhs_value - lhs) < mpf(10) ** (-(fast.working_digits - 2))
        assert abs(record.rhs_value - rhs) < mpf(10) ** (-(fast.working_digits - 2))


def test_verify_identity_11_record_fields():
    identity = builtin_catalog()[10]
    record = verify_identity(identity, fast)
    assert record.passed
    assert record.id == 11
    assert record.nodes > 0
    assert record.elapsed_ms > 0
    assert record.abs_residual >= 0
    assert record.rel_residual >= 0
    with fast.workdps():
        expected_tol = mpf(10) ** (-(fast.target_digits - 5))
        assert record.tolerance == expected_tol
        scale = max(abs(record.lhs_value), abs(record.rhs_value), mpf(1))
        assert abs(record.rel_residual - record.abs_residual / scale) < mpf(10) ** -20


def test_negative_control_perturbed_identity_11():
    source = "x*(3 - 4.000001*pi*x^2)*exp(-pi*x*(x+1))/sinh(pi*x)"
    perturbed = Identity(
        id=11,
        lhs=SideSpec(terms=(make_term(SemiInfinite(), parse_expression(source)),)),
        rhs=SideSpec(terms=(), exact_constant=parse_expression("1/(2*pi)")),
    )
    record = verify_identity(perturbed, ctx)
    assert not record.passed
    assert record.converged  # it fails on the residual, not on convergence
    assert record.rel_residual > mpf(10) ** -8


def test_non_convergence_is_flagged_not_silent():
    identity = builtin_catalog()[10]
    record = verify_identity(identity, ctx, max_levels=2)
    assert not record.converged
    assert not record.passed


def test_precision_ladder_residuals_shrink(records20, records40, ctx20):
    records40, _ = records40
    # an exactly-zero low-precision residual means "below the 20-digit
    # resolution"; the 40-digit residual must then also be below it
    resolution = mpf(10) ** (-(ctx20.working_digits - 2))
    for low, high in zip(records20, records40):
        assert low.id == high.id
        assert high.rel_residual <= max(low.rel_residual, resolution)


# ---------------------------------------------------------------------------
# transform


def test_transform_at_zero_is_gaussian_integral():
    value = m_transform(0, ctx)
    with mp.workdps(90):
        assert abs(value - mp.sqrt(mp.pi) / 2) < mpf(10) ** -40


def test_transform_at_pi_matches_identity2_rhs():
    identity = builtin_catalog()[1]
    rhs = evaluate_side(identity.rhs, ctx)
    with ctx.workdps():
        value = m_transform(+mp.pi, ctx)
        assert abs(value - rhs.value) < mpf(10) ** -40


def test_transform_strictly_below_gaussian_value_for_positive_y():
    with ctx.workdps():
        value = m_transform(1, ctx)
        assert 0 < value < mp.sqrt(mp.pi) / 2


def test_transform_rejects_negative_argument():
    with pytest.raises(DomainError):
        m_transform(-1, ctx)


def test_modular_fixed_point():
    with ctx.workdps():
        y = mp.sqrt(mp.pi)
        residual = modular_residual(y, ctx)
        value = y * m_transform(y, ctx)
        tol = verification_tolerance(ctx) * max(1, abs(value))
    assert residual <= tol


def test_modular_residual_symmetry():
    with ctx.workdps():
        y = mpf(3)
        a = modular_residual(y, ctx)
        b = modular_residual(mp.pi / y, ctx)
        # |y T(y) - sqrt(pi) T(pi/y)| is symmetric under y <-> pi/y
        assert abs(a - b) < mpf(10) ** -40


def test_modular_residual_small_at_two():
    with ctx.workdps():
        y = mpf(2)
        residual = modular_residual(y, ctx)
        scale = abs(y * m_transform(y, ctx))
        assert residual <= verification_tolerance(ctx) * max(1, scale)


def test_derivative_check_bound_and_step_halving():
    check = m_transform_derivative_check(1, ctx)
    with ctx.workdps():
        bound = mpf(10) ** (-(2 * ctx.target_digits // 3 - 3))
    assert check.residual <= bound
    halved = m_transform_derivative_check(1, ctx, step=check.step / 2)
    assert halved.residual * 3 <= check.residual


def test_derivative_direct_matches_kernel_integral_at_pi():
    from quadcheck.catalog import m_transform_derivative
    from quadcheck.quadrature import integrate_semi_infinite

    direct = m_transform_derivative(mp.pi, ctx)
    explicit = integrate_semi_infinite(
        lambda x: x * mp.exp(-x * x) * mp.sinh(x * mp.pi) / mp.cosh(x * mp.pi) ** 2, ctx
    )
    with ctx.workdps():
        assert abs(direct + explicit.value) < mpf(10) ** -38
    assert direct < 0


def test_transcription_audit_against_golden_file(tmp_path):
    from pathlib import Path

    from quadcheck.catalog_io import serialize_catalog

    golden = Path(__file__).parent / "golden" / "builtin_catalog.txt"
    assert serialize_catalog(builtin_catalog()) == golden.read_text(encoding="utf-8")
