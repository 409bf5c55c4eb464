"""Line-oriented catalog file format.

    file      := identity+
    identity  := "identity" INT NL side+ "end" NL
    side      := ("lhs" | "rhs") NL item+
    item      := "integral" bound bound ":" expr NL
               | "const" ":" expr NL
    bound     := "0" | "1" | "inf" | "(" expr ")"

Expressions use the grammar from the expressions module.  Multiple items
under one side are summed.  The loader parses and stability-rewrites
every expression eagerly, so malformed files fail before any numeric
work; serialization of the builtin catalog is byte-reproducible.
"""

from __future__ import annotations

import os

from .catalog import Identity, IntegralTerm, SideSpec, make_term
from .errors import CatalogFormatError, ExprSyntaxError
from .expressions import Expr, Literal, contains_var, parse_expression, print_expression
from .quadrature import Finite, Interval, SemiInfinite


def _bound_text(bound: Expr) -> str:
    if bound == Literal("0"):
        return "0"
    if bound == Literal("1"):
        return "1"
    return f"({print_expression(bound)})"


def _term_line(term: IntegralTerm) -> str:
    if isinstance(term.interval, SemiInfinite):
        bounds = "0 inf"
    else:
        bounds = f"{_bound_text(term.interval.lower)} {_bound_text(term.interval.upper)}"
    return f"integral {bounds} : {print_expression(term.integrand)}"


def serialize_catalog(identities) -> str:
    """Render identities (ascending id) in the catalog file format."""
    lines = []
    for identity in sorted(identities, key=lambda i: i.id):
        lines.append(f"identity {identity.id}")
        for label, side in (("lhs", identity.lhs), ("rhs", identity.rhs)):
            lines.append(label)
            for term in side.terms:
                lines.append(_term_line(term))
            if side.exact_constant is not None:
                lines.append(f"const : {print_expression(side.exact_constant)}")
        lines.append("end")
    return "\n".join(lines) + "\n"


def _parse_bound_token(text: str, pos: int, line_no: int) -> tuple[Expr | str, int]:
    """Read one bound starting at ``pos``; returns (bound, next_pos).

    The bound is the string "inf" or a parsed constant expression.
    """
    while pos < len(text) and text[pos].isspace():
        pos += 1
    if pos >= len(text):
        raise CatalogFormatError("missing integral bound", line_no)
    if text[pos] == "(":
        depth = 0
        end = pos
        while end < len(text):
            if text[end] == "(":
                depth += 1
            elif text[end] == ")":
                depth -= 1
                if depth == 0:
                    break
            end += 1
        if depth != 0:
            raise CatalogFormatError("unbalanced parenthesis in bound", line_no)
        inner = text[pos + 1 : end]
        try:
            bound = parse_expression(inner)
        except ExprSyntaxError as exc:
            raise CatalogFormatError(f"bad bound expression: {exc}", line_no) from exc
        if contains_var(bound):
            raise CatalogFormatError("integral bounds must be constant expressions", line_no)
        return bound, end + 1
    end = pos
    while end < len(text) and not text[end].isspace():
        end += 1
    word = text[pos:end]
    if word == "inf":
        return "inf", end
    if word in ("0", "1"):
        return Literal(word), end
    raise CatalogFormatError(
        f"bad bound {word!r}: expected 0, 1, inf, or a parenthesized expression", line_no
    )


def _parse_interval(rest: str, line_no: int) -> tuple[Interval, str]:
    lower, pos = _parse_bound_token(rest, 0, line_no)
    upper, pos = _parse_bound_token(rest, pos, line_no)
    tail = rest[pos:].lstrip()
    if not tail.startswith(":"):
        raise CatalogFormatError("expected ':' after integral bounds", line_no)
    if upper == "inf":
        if lower != Literal("0"):
            raise CatalogFormatError("semi-infinite intervals must start at 0", line_no)
        return SemiInfinite(), tail[1:]
    if lower == "inf":
        raise CatalogFormatError("'inf' is only valid as an upper bound", line_no)
    return Finite(lower, upper), tail[1:]


def _parse_expr(text: str, line_no: int) -> Expr:
    try:
        return parse_expression(text.strip())
    except ExprSyntaxError as exc:
        raise CatalogFormatError(str(exc), line_no) from exc


class _Loader:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.index = 0

    def next_line(self) -> tuple[str, int] | None:
        while self.index < len(self.lines):
            line = self.lines[self.index].strip()
            self.index += 1
            if line and not line.startswith("#"):
                return line, self.index
        return None

    def load(self) -> list[Identity]:
        identities: list[Identity] = []
        first_line: dict[int, int] = {}
        while True:
            entry = self.next_line()
            if entry is None:
                break
            line, line_no = entry
            if not line.startswith("identity"):
                raise CatalogFormatError(f"expected 'identity <id>', found {line!r}", line_no)
            rest = line[len("identity") :].strip()
            if not rest.isdigit():
                raise CatalogFormatError(f"bad identity id {rest!r}", line_no)
            ident = int(rest)
            if ident in first_line:
                raise CatalogFormatError(
                    f"duplicate identity id {ident} (first defined at line {first_line[ident]})",
                    line_no,
                )
            first_line[ident] = line_no
            identities.append(self._identity_body(ident, line_no))
        if not identities:
            raise CatalogFormatError("catalog contains no identities", 1)
        return identities

    def _identity_body(self, ident: int, header_line: int) -> Identity:
        sides: dict[str, tuple[list[IntegralTerm], Expr | None]] = {}
        label: str | None = None
        terms: list[IntegralTerm] = []
        const: Expr | None = None

        def close_side(line_no: int) -> None:
            nonlocal label, terms, const
            if label is None:
                return
            if not terms and const is None:
                raise CatalogFormatError(f"side {label!r} has no items", line_no)
            sides[label] = (terms, const)
            label, terms, const = None, [], None

        while True:
            entry = self.next_line()
            if entry is None:
                raise CatalogFormatError(
                    f"identity {ident} is missing its 'end' line", header_line
                )
            line, line_no = entry
            if line == "end":
                close_side(line_no)
                break
            if line in ("lhs", "rhs"):
                close_side(line_no)
                if line in sides:
                    raise CatalogFormatError(f"duplicate side {line!r}", line_no)
                label = line
                continue
            if label is None:
                raise CatalogFormatError(
                    f"expected 'lhs' or 'rhs' before items, found {line!r}", line_no
                )
            if line.startswith("integral"):
                interval, expr_text = _parse_interval(line[len("integral") :], line_no)
                terms.append(make_term(interval, _parse_expr(expr_text, line_no)))
            elif line.startswith("const"):
                rest = line[len("const") :].lstrip()
                if not rest.startswith(":"):
                    raise CatalogFormatError("expected ':' after 'const'", line_no)
                if const is not None:
                    raise CatalogFormatError("duplicate const item", line_no)
                const = _parse_expr(rest[1:], line_no)
            else:
                raise CatalogFormatError(f"unrecognized item {line!r}", line_no)
        for required in ("lhs", "rhs"):
            if required not in sides:
                raise CatalogFormatError(
                    f"identity {ident} is missing side {required!r}", header_line
                )
        lhs_terms, lhs_const = sides["lhs"]
        rhs_terms, rhs_const = sides["rhs"]
        return Identity(
            id=ident,
            lhs=SideSpec(tuple(lhs_terms), lhs_const),
            rhs=SideSpec(tuple(rhs_terms), rhs_const),
        )


def load_catalog_text(text: str) -> list[Identity]:
    """Parse catalog text; raises CatalogFormatError with a line number."""
    return _Loader(text).load()


def load_catalog_file(path: str | os.PathLike) -> list[Identity]:
    """Read and parse a catalog file."""
    with open(path, "r", encoding="utf-8") as handle:
        return load_catalog_text(handle.read())
