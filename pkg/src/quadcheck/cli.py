"""Command-line interface.

Subcommands:

    verify          run identity verification and print a report
    constants       print the named constants at target digits
    eval            evaluate one expression at one point
    transform       Gaussian sech transform value and reciprocity residual
    export-catalog  emit the builtin catalog in the catalog file format

Exit codes: 0 all checks passed; 1 at least one verification failed;
2 usage, parse, or configuration error; 3 quadrature non-convergence.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

import mpmath as mp

from .catalog import builtin_catalog, m_transform, modular_residual, verification_tolerance
from .catalog_io import load_catalog_file, serialize_catalog
from .constants import CONSTANT_NAMES, certified_digits
from .errors import (
    CatalogFormatError,
    ConfigurationError,
    DomainError,
    ExprSyntaxError,
    NonConvergenceError,
    UnknownConstantError,
)
from .expressions import contains_var, eval_const, eval_expr, parse_expression, rewrite_stable
from .precision import make_context
from .quadrature import MAX_LEVELS
from .report import (
    DEFAULT_DIGITS,
    DEFAULT_MODULAR_GRID,
    RunConfig,
    parse_grid_value,
    render_report,
    run_verification,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NONCONVERGED = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadcheck",
        description="High-precision numerical verification of definite-integral identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="verify catalog identities")
    verify.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    verify.add_argument(
        "--identity", type=int, action="append", dest="identities",
        help="identity id to verify (repeatable); default: all",
    )
    verify.add_argument("--all", action="store_true", help="verify every identity")
    verify.add_argument("--catalog", help="catalog file to load instead of the builtin")
    verify.add_argument("--format", choices=("text", "json"), default="text")
    verify.add_argument("--output", help="write the report to this path instead of stdout")
    verify.add_argument(
        "--modular-y", action="append", dest="modular_y",
        help="y value for the transform checks (repeatable); default: 1/2 1 2 pi",
    )
    verify.add_argument("--max-levels", type=int, default=MAX_LEVELS)

    constants = sub.add_parser("constants", help="print the named constants")
    constants.add_argument("--digits", type=int, default=DEFAULT_DIGITS)

    evaluate = sub.add_parser("eval", help="evaluate an expression at a point")
    evaluate.add_argument("--expr", required=True)
    evaluate.add_argument("--at", required=True, help="value of x (a constant expression)")
    evaluate.add_argument("--digits", type=int, default=DEFAULT_DIGITS)

    transform = sub.add_parser("transform", help="Gaussian sech transform at y")
    transform.add_argument("--y", required=True, help="transform argument (a constant expression)")
    transform.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    transform.add_argument("--max-levels", type=int, default=MAX_LEVELS)

    export = sub.add_parser("export-catalog", help="emit the builtin catalog")
    export.add_argument("--output", help="write to this path instead of stdout")
    return parser


def _write_output(data: bytes, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(data.decode("utf-8"))
    else:
        with open(path, "wb") as handle:
            handle.write(data)


def _cmd_verify(ns: argparse.Namespace) -> int:
    if ns.identities and ns.all:
        raise ConfigurationError("--identity and --all are mutually exclusive")
    selection = tuple(ns.identities) if ns.identities else None
    grid = tuple(ns.modular_y) if ns.modular_y else DEFAULT_MODULAR_GRID
    config = RunConfig(
        digits=ns.digits,
        selection=selection,
        catalog_path=ns.catalog,
        fmt=ns.format,
        modular_grid=grid,
        output=ns.output,
        max_levels=ns.max_levels,
    )
    identities = (
        load_catalog_file(config.catalog_path)
        if config.catalog_path is not None
        else builtin_catalog()
    )
    report = run_verification(config, identities)
    _write_output(render_report(report, config.fmt), config.output)
    if report.any_nonconverged:
        return EXIT_NONCONVERGED
    return EXIT_PASS if report.overall_pass else EXIT_FAIL


def _cmd_constants(ns: argparse.Namespace) -> int:
    ctx = make_context(ns.digits)
    for name in CONSTANT_NAMES:
        sys.stdout.write(f"{name} = {certified_digits(name, ctx)}\n")
    return EXIT_PASS


def _parse_point(text: str, ctx):
    """Constant-expression argument value (may be zero or negative)."""
    expr = parse_expression(text)
    if contains_var(expr):
        raise ConfigurationError(f"value {text!r} must not reference x")
    return eval_const(expr, ctx)


def _cmd_eval(ns: argparse.Namespace) -> int:
    ctx = make_context(ns.digits)
    expr = rewrite_stable(parse_expression(ns.expr))
    value = eval_expr(expr, _parse_point(ns.at, ctx), ctx)
    sys.stdout.write(mp.nstr(value, ctx.target_digits) + "\n")
    return EXIT_PASS


def _cmd_transform(ns: argparse.Namespace) -> int:
    ctx = make_context(ns.digits)
    y = parse_grid_value(ns.y, ctx)
    value = m_transform(y, ctx, ns.max_levels)
    residual = modular_residual(y, ctx, ns.max_levels)
    with ctx.workdps():
        tolerance = verification_tolerance(ctx) * max(mp.mpf(1), abs(y * value))
    status = "PASS" if residual <= tolerance else "FAIL"
    sys.stdout.write(f"transform({mp.nstr(y, ctx.target_digits)}) = "
                     f"{mp.nstr(value, ctx.target_digits)}\n")
    sys.stdout.write(f"reciprocity residual = {mp.nstr(residual, 8)} {status}\n")
    return EXIT_PASS if status == "PASS" else EXIT_FAIL


def _cmd_export(ns: argparse.Namespace) -> int:
    text = serialize_catalog(builtin_catalog())
    _write_output(text.encode("utf-8"), ns.output)
    return EXIT_PASS


_COMMANDS = {
    "verify": _cmd_verify,
    "constants": _cmd_constants,
    "eval": _cmd_eval,
    "transform": _cmd_transform,
    "export-catalog": _cmd_export,
}


def run_cli(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except SystemExit as exc:
        code = exc.code
        if code in (None, 0):
            return EXIT_PASS
        return EXIT_USAGE
    try:
        return _COMMANDS[ns.command](ns)
    except NonConvergenceError as exc:
        print(f"quadcheck: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except (
        ConfigurationError,
        ExprSyntaxError,
        CatalogFormatError,
        UnknownConstantError,
        DomainError,
    ) as exc:
        print(f"quadcheck: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"quadcheck: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
