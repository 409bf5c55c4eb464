"""Run configuration, report assembly, and rendering.

A verification run produces one :class:`VerificationReport`: per-identity
records, transform-reciprocity records over a grid of y values,
derivative-consistency records over the same grid, and a digest of the
constants at target digits.  Rendering is a pure function of the report,
byte-for-byte deterministic; the elapsed-time fields are informational
and simply render whatever the records carry.

JSON output writes every computed numeric as a decimal string so no
consumer ever sees a binary floating-point approximation.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import mpmath as mp
from mpmath import mpf

from .catalog import (
    DerivativeCheck,
    Identity,
    VerificationRecord,
    m_transform,
    m_transform_derivative_check,
    verification_tolerance,
    verify_identity,
)
from .constants import certified_digits, sqrt_pi
from .errors import ConfigurationError, DomainError, ExprSyntaxError, NonConvergenceError
from .expressions import contains_var, eval_const, parse_expression
from .precision import PrecisionContext, Real, make_context
from .quadrature import MAX_LEVELS

DEFAULT_DIGITS = 30
DEFAULT_MODULAR_GRID = ("1/2", "1", "2", "pi")


@dataclass(frozen=True)
class RunConfig:
    digits: int = DEFAULT_DIGITS
    selection: Optional[tuple[int, ...]] = None  # None selects every identity
    catalog_path: Optional[str] = None  # None selects the builtin catalog
    fmt: str = "text"
    modular_grid: tuple[str, ...] = DEFAULT_MODULAR_GRID
    output: Optional[str] = None
    max_levels: int = MAX_LEVELS

    @property
    def catalog_label(self) -> str:
        return self.catalog_path if self.catalog_path is not None else "builtin"


@dataclass(frozen=True)
class ModularRecord:
    y_text: str
    y: Real
    transform_value: Real
    residual: Real
    tolerance: Real
    passed: bool
    converged: bool


@dataclass(frozen=True)
class DerivativeRecord:
    y_text: str
    y: Real
    check: Optional[DerivativeCheck]  # None when the integrals failed to converge
    converged: bool


@dataclass(frozen=True)
class VerificationReport:
    config: RunConfig
    selection: tuple[int, ...]
    identities: tuple[VerificationRecord, ...]
    modular: tuple[ModularRecord, ...]
    derivative_checks: tuple[DerivativeRecord, ...]
    constants_digest: dict[str, str]
    total_elapsed_ms: float
    overall_pass: bool
    any_nonconverged: bool


def parse_grid_value(text: str, ctx: PrecisionContext) -> Real:
    """Parse a y-grid entry; constant expressions like 'pi' are allowed."""
    try:
        expr = parse_expression(text)
    except ExprSyntaxError as exc:
        raise ConfigurationError(f"bad grid value {text!r}: {exc}") from exc
    if contains_var(expr):
        raise ConfigurationError(f"grid value {text!r} must not reference x")
    value = eval_const(expr, ctx)
    if not value > 0:
        raise ConfigurationError(f"grid value {text!r} must be positive")
    return value


def select_identities(
    identities: Sequence[Identity], selection: Optional[tuple[int, ...]]
) -> list[Identity]:
    by_id = {identity.id: identity for identity in identities}
    if selection is None:
        return [by_id[i] for i in sorted(by_id)]
    chosen = []
    for ident in selection:
        if ident not in by_id:
            raise ConfigurationError(f"unknown identity id {ident}")
        chosen.append(by_id[ident])
    return sorted(chosen, key=lambda identity: identity.id)


def _modular_record(y_text: str, ctx: PrecisionContext, max_levels: int) -> ModularRecord:
    y = parse_grid_value(y_text, ctx)
    with ctx.workdps():
        try:
            value = m_transform(y, ctx, max_levels)
            reciprocal = m_transform(mp.pi / y, ctx, max_levels)
            residual = abs(y * value - sqrt_pi(ctx) * reciprocal)
            converged = True
        except NonConvergenceError as exc:
            value = mpf(exc.best_value) if exc.best_value is not None else mpf(0)
            residual = mpf("inf")
            converged = False
        tolerance = verification_tolerance(ctx) * max(mpf(1), abs(y * value))
        passed = bool(converged and residual <= tolerance)
        return ModularRecord(y_text, y, +value, +residual, +tolerance, passed, converged)


def _derivative_record(y_text: str, ctx: PrecisionContext, max_levels: int) -> DerivativeRecord:
    y = parse_grid_value(y_text, ctx)
    try:
        check = m_transform_derivative_check(y, ctx, max_levels=max_levels)
        return DerivativeRecord(y_text, y, check, True)
    except NonConvergenceError:
        return DerivativeRecord(y_text, y, None, False)


def run_verification(config: RunConfig, identities: Sequence[Identity]) -> VerificationReport:
    """Run the full verification described by ``config``."""
    start = time.perf_counter()
    ctx = make_context(config.digits)
    chosen = select_identities(identities, config.selection)
    if not chosen:
        raise ConfigurationError("selection is empty")
    for y_text in config.modular_grid:
        parse_grid_value(y_text, ctx)  # validate before any slow work

    records = tuple(verify_identity(identity, ctx, config.max_levels) for identity in chosen)
    modular = tuple(
        _modular_record(y_text, ctx, config.max_levels) for y_text in config.modular_grid
    )
    derivative = tuple(
        _derivative_record(y_text, ctx, config.max_levels) for y_text in config.modular_grid
    )
    digest = {name: certified_digits(name, ctx) for name in ("pi", "gamma", "catalan")}

    overall = all(r.passed for r in records) and all(m.passed for m in modular)
    nonconverged = (
        any(not r.converged for r in records)
        or any(not m.converged for m in modular)
        or any(not d.converged for d in derivative)
    )
    return VerificationReport(
        config=config,
        selection=tuple(identity.id for identity in chosen),
        identities=records,
        modular=modular,
        derivative_checks=derivative,
        constants_digest=digest,
        total_elapsed_ms=(time.perf_counter() - start) * 1000.0,
        overall_pass=overall,
        any_nonconverged=nonconverged,
    )


# ---------------------------------------------------------------------------
# rendering


def _num(value: Real, digits: int) -> str:
    # nstr reads the value's own precision; never re-round through mpf()
    # here, which would truncate to the ambient context precision
    return mp.nstr(value, digits)


def _report_json(report: VerificationReport) -> dict:
    digits = report.config.digits
    return {
        "config": {
            "digits": digits,
            "catalog": report.config.catalog_label,
            "selection": list(report.selection),
        },
        "constants": dict(report.constants_digest),
        "identities": [
            {
                "id": r.id,
                "lhs": _num(r.lhs_value, digits),
                "rhs": _num(r.rhs_value, digits),
                "abs_residual": _num(r.abs_residual, digits),
                "rel_residual": _num(r.rel_residual, digits),
                "tolerance": _num(r.tolerance, digits),
                "pass": r.passed,
                "converged": r.converged,
                "nodes": r.nodes,
                "elapsed_ms": f"{r.elapsed_ms:.3f}",
            }
            for r in report.identities
        ],
        "modular": [
            {
                "y": _num(m.y, digits),
                "residual": _num(m.residual, digits),
                "pass": m.passed,
                "converged": m.converged,
            }
            for m in report.modular
        ],
        "derivative_checks": [
            {
                "y": _num(d.y, digits),
                "direct": _num(d.check.direct, digits) if d.check else None,
                "finite_diff": _num(d.check.finite_diff, digits) if d.check else None,
                "residual": _num(d.check.residual, digits) if d.check else None,
                "converged": d.converged,
            }
            for d in report.derivative_checks
        ],
        "overall_pass": report.overall_pass,
    }


def _render_text(report: VerificationReport) -> str:
    digits = report.config.digits
    lines = []
    lines.append("quadcheck verification report")
    lines.append(
        f"digits: {digits}   catalog: {report.config.catalog_label}"
        f"   max_levels: {report.config.max_levels}"
    )
    lines.append("")
    lines.append("constants (truncated to target digits):")
    for name in ("pi", "gamma", "catalan"):
        lines.append(f"  {name:<8} {report.constants_digest[name]}")
    lines.append("")
    lines.append("identities:")
    header = f"  {'id':>3}  {'status':<6} {'conv':<5} {'rel_residual':<14} {'nodes':>7} {'ms':>9}"
    lines.append(header)
    for r in report.identities:
        status = "PASS" if r.passed else "FAIL"
        conv = "yes" if r.converged else "NO"
        lines.append(
            f"  {r.id:>3}  {status:<6} {conv:<5} {_num(r.rel_residual, 5):<14}"
            f" {r.nodes:>7} {r.elapsed_ms:>9.1f}"
        )
    lines.append("")
    lines.append("transform reciprocity y*T(y) = sqrt(pi)*T(pi/y):")
    for m in report.modular:
        status = "PASS" if m.passed else "FAIL"
        lines.append(
            f"  y = {m.y_text:<10} residual = {_num(m.residual, 5):<14} {status}"
        )
    lines.append("")
    lines.append("transform derivative vs central difference:")
    for d in report.derivative_checks:
        if d.check is None:
            lines.append(f"  y = {d.y_text:<10} NOT CONVERGED")
        else:
            lines.append(
                f"  y = {d.y_text:<10} residual = {_num(d.check.residual, 5):<14}"
                f" (step {_num(d.check.step, 3)})"
            )
    lines.append("")
    lines.append(f"overall: {'PASS' if report.overall_pass else 'FAIL'}")
    return "\n".join(lines) + "\n"


def render_report(report: VerificationReport, fmt: str) -> bytes:
    """Render the report as UTF-8 bytes in 'text' or 'json' format."""
    if fmt == "json":
        return (json.dumps(_report_json(report), indent=2) + "\n").encode("utf-8")
    if fmt == "text":
        return _render_text(report).encode("utf-8")
    raise ConfigurationError(f"unknown report format {fmt!r}")
