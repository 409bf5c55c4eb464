"""Integrand expressions: tree, grammar, parser, printer, evaluator.

Expressions are immutable trees over the integration variable ``x``, the
named constants pi/gamma/catalan, and a small closed set of elementary
functions -- exactly what the builtin catalog needs.  The grammar:

    expr   := term (("+"|"-") term)* ;
    term   := factor (("*"|"/") factor)* ;
    factor := "-" factor | base ("^" factor)? ;
    base   := NUMBER | "x" | "pi" | "gamma" | "catalan"
            | FUNC "(" expr ")" | "(" expr ")" ;
    FUNC   := "exp"|"ln"|"sqrt"|"sin"|"cos"|"atan"|"sinh"|"cosh"|"tanh" ;
    NUMBER := decimal literal with optional fraction and exponent.

Power binds tightest and is right-associative, then unary minus, then
"*"/"/", then "+"/"-" (both left-associative).  Identifiers are
lowercase; anything outside the closed word list is an error, which
keeps the stability-rewrite patterns exhaustive.

:func:`rewrite_stable` replaces the structurally risky pieces of a
parsed tree (1/cosh, u/sinh(u), x^(-ln x), sin(u)^2/u^2) with
``StableKernel`` nodes that dispatch to the kernels module.  The parser
itself never produces kernel nodes.

Decimal literals are stored as text and converted at working precision
when evaluated, so one parsed catalog serves every precision level.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

import mpmath as mp
from mpmath import mpf

from . import kernels
from .constants import named_constant
from .errors import DomainError, ExprSyntaxError, SourceSpan
from .precision import PrecisionContext, Real, underflow_floor

# ---------------------------------------------------------------------------
# tree


@dataclass(frozen=True)
class Literal:
    text: str


@dataclass(frozen=True)
class ConstRef:
    name: str  # "pi" | "gamma" | "catalan"


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Unary:
    op: str
    child: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class StableKernel:
    kind: str  # "sech" | "x_over_sinh" | "self_log_power" | "sin_over_x"
    child: "Expr"


Expr = Union[Literal, ConstRef, Var, Unary, Binary, StableKernel]

X = Var()

FUNCTIONS = ("exp", "ln", "sqrt", "sin", "cos", "atan", "sinh", "cosh", "tanh")
CONSTANT_WORDS = ("pi", "gamma", "catalan")
KERNEL_KINDS = ("sech", "x_over_sinh", "self_log_power", "sin_over_x")


def contains_var(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, (Unary, StableKernel)):
        return contains_var(e.child)
    if isinstance(e, Binary):
        return contains_var(e.left) or contains_var(e.right)
    return False


# ---------------------------------------------------------------------------
# tokenizer / parser

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<ident>[a-z][a-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "number" | "ident" | "op" | "end"
    text: str
    span: SourceSpan


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ExprSyntaxError(
                f"unexpected character {text[pos]!r}", SourceSpan(pos, pos + 1)
            )
        pos = match.end()
        kind = match.lastgroup
        if kind == "ws":
            continue
        tokens.append(_Token(kind, match.group(), SourceSpan(match.start(), match.end())))
    tokens.append(_Token("end", "", SourceSpan(len(text), len(text))))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            shown = tok.text if tok.kind != "end" else "end of input"
            raise ExprSyntaxError(f"expected {op!r}, found {shown!r}", tok.span)
        self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprSyntaxError(f"unexpected trailing {tok.text!r}", tok.span)
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = "add" if self.advance().text == "+" else "sub"
            left = Binary(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = "mul" if self.advance().text == "*" else "div"
            left = Binary(op, left, self.factor())
        return left

    def factor(self) -> Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return Unary("neg", self.factor())
        b = self.base()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            return Binary("pow", b, self.factor())
        return b

    def base(self) -> Expr:
        tok = self.advance()
        if tok.kind == "number":
            return Literal(tok.text)
        if tok.kind == "ident":
            if tok.text == "x":
                return X
            if tok.text in CONSTANT_WORDS:
                return ConstRef(tok.text)
            if tok.text in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                op = "ln" if tok.text == "ln" else tok.text
                return Unary(op, arg)
            raise ExprSyntaxError(f"unknown identifier {tok.text!r}", tok.span)
        if tok.kind == "op" and tok.text == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        shown = tok.text if tok.kind != "end" else "end of input"
        raise ExprSyntaxError(f"unexpected token {shown!r}", tok.span)


def parse_expression(text: str) -> Expr:
    """Parse ``text`` under the module grammar; raises ExprSyntaxError."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printer

_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}
_SYMBOL = {"add": " + ", "sub": " - ", "mul": "*", "div": "/", "pow": "^"}


def _prec(e: Expr) -> int:
    if isinstance(e, Binary):
        return _PREC[e.op]
    if isinstance(e, Unary) and e.op == "neg":
        return _PREC["neg"]
    return 5


def _kernel_composite(e: StableKernel) -> Expr:
    u = e.child
    if e.kind == "sech":
        return Binary("div", Literal("1"), Unary("cosh", u))
    if e.kind == "x_over_sinh":
        return Binary("div", u, Unary("sinh", u))
    if e.kind == "self_log_power":
        return Binary("pow", u, Unary("neg", Unary("ln", u)))
    if e.kind == "sin_over_x":
        return Binary("div", Unary("sin", u), u)
    raise ValueError(f"unknown kernel kind {e.kind!r}")


def _expand_kernels(e: Expr) -> Expr:
    if isinstance(e, StableKernel):
        return _expand_kernels(_kernel_composite(e))
    if isinstance(e, Unary):
        return Unary(e.op, _expand_kernels(e.child))
    if isinstance(e, Binary):
        return Binary(e.op, _expand_kernels(e.left), _expand_kernels(e.right))
    return e


def _print(e: Expr) -> str:
    if isinstance(e, Literal):
        return e.text
    if isinstance(e, ConstRef):
        return e.name
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Unary):
        if e.op == "neg":
            child = _print(e.child)
            if _prec(e.child) < _PREC["neg"]:
                child = f"({child})"
            return f"-{child}"
        return f"{e.op}({_print(e.child)})"
    assert isinstance(e, Binary)
    prec = _PREC[e.op]
    left = _print(e.left)
    right = _print(e.right)
    if e.op == "pow":
        # right-associative: parenthesize an equal-precedence left child
        if _prec(e.left) <= prec:
            left = f"({left})"
        if _prec(e.right) < prec:
            right = f"({right})"
    else:
        # left-associative: parenthesize an equal-precedence right child
        if _prec(e.left) < prec:
            left = f"({left})"
        if _prec(e.right) <= prec:
            right = f"({right})"
    return f"{left}{_SYMBOL[e.op]}{right}"


def print_expression(e: Expr) -> str:
    """Render ``e`` so that parsing the output rebuilds the same tree.

    Kernel nodes are expanded to their defining composite form first, so
    a printed rewritten tree reparses to the pre-rewrite composite with
    correct grouping.
    """
    return _print(_expand_kernels(e))


# ---------------------------------------------------------------------------
# evaluation

_UNARY_FUNCS = {
    "exp": mp.exp,
    "sin": mp.sin,
    "cos": mp.cos,
    "atan": mp.atan,
    "sinh": mp.sinh,
    "cosh": mp.cosh,
    "tanh": mp.tanh,
}

_KERNEL_FUNCS = {
    "sech": kernels.stable_sech,
    "x_over_sinh": kernels.x_over_sinh,
    "self_log_power": kernels.self_log_power,
    "sin_over_x": kernels.sin_over_x,
}


def _domain_error(message: str, e: Expr) -> DomainError:
    return DomainError(f"{message} in subexpression {print_expression(e)!r}")


def _exact_integer(e: Expr) -> Optional[int]:
    """Integer value of an exact integer literal (possibly negated)."""
    if isinstance(e, Unary) and e.op == "neg":
        inner = _exact_integer(e.child)
        return None if inner is None else -inner
    if isinstance(e, Literal) and re.fullmatch(r"\d+", e.text):
        return int(e.text)
    return None


def _eval(e: Expr, x: Optional[Real], ctx: PrecisionContext, floor: Real) -> Real:
    if isinstance(e, Literal):
        return mpf(e.text)
    if isinstance(e, ConstRef):
        return named_constant(e.name, ctx)
    if isinstance(e, Var):
        if x is None:
            raise _domain_error("no value bound for x", e)
        return x
    if isinstance(e, StableKernel):
        return _KERNEL_FUNCS[e.kind](_eval(e.child, x, ctx, floor), ctx)
    if isinstance(e, Unary):
        if e.op == "neg":
            return -_eval(e.child, x, ctx, floor)
        v = _eval(e.child, x, ctx, floor)
        if e.op == "exp":
            # underflow skip: bounds the exponent range without affecting
            # anything at target precision
            if v < -(ctx.underflow_exponent + 1) * mp.log(10):
                return mpf(0)
            return mp.exp(v)
        if e.op == "ln":
            if v <= 0:
                raise _domain_error(f"ln of non-positive value {v}", e)
            return mp.log(v)
        if e.op == "sqrt":
            if v < 0:
                raise _domain_error(f"sqrt of negative value {v}", e)
            return mp.sqrt(v)
        result = _UNARY_FUNCS[e.op](v)
        if not mp.isfinite(result):
            raise _domain_error(f"non-finite intermediate {result}", e)
        return result
    assert isinstance(e, Binary)
    if e.op == "add":
        return _eval(e.left, x, ctx, floor) + _eval(e.right, x, ctx, floor)
    if e.op == "sub":
        return _eval(e.left, x, ctx, floor) - _eval(e.right, x, ctx, floor)
    if e.op == "mul":
        # factors below the underflow floor short-circuit the product;
        # sound for this integrand family, where cofactors grow at most
        # polynomially after stable rewriting
        left = _eval(e.left, x, ctx, floor)
        if left == 0 or abs(left) < floor:
            return mpf(0)
        right = _eval(e.right, x, ctx, floor)
        if right == 0 or abs(right) < floor:
            return mpf(0)
        return left * right
    if e.op == "div":
        num = _eval(e.left, x, ctx, floor)
        den = _eval(e.right, x, ctx, floor)
        if den == 0:
            raise _domain_error("division by zero denominator", e)
        return num / den
    assert e.op == "pow"
    base = _eval(e.left, x, ctx, floor)
    exp_int = _exact_integer(e.right)
    if exp_int is not None:
        if base == 0 and exp_int < 0:
            raise _domain_error("zero raised to a negative power", e)
        return mp.power(base, exp_int)
    exponent = _eval(e.right, x, ctx, floor)
    if base < 0:
        raise _domain_error(
            f"negative base {base} with non-integer exponent", e
        )
    if base == 0:
        if exponent <= 0:
            raise _domain_error("zero base with non-positive exponent", e)
        return mpf(0)
    result = mp.power(base, exponent)
    if not mp.isfinite(result):
        raise _domain_error(f"non-finite intermediate {result}", e)
    return result


def eval_expr(e: Expr, x, ctx: PrecisionContext) -> Real:
    """Evaluate ``e`` at ``x`` (may be None for constant expressions)."""
    with ctx.workdps():
        value = _eval(e, None if x is None else mpf(x), ctx, underflow_floor(ctx))
        return +value


def eval_const(e: Expr, ctx: PrecisionContext) -> Real:
    """Evaluate a constant expression (no occurrences of x)."""
    if contains_var(e):
        raise _domain_error("expected a constant expression", e)
    return eval_expr(e, None, ctx)


# ---------------------------------------------------------------------------
# stability rewriting

_ONE = Literal("1")
_TWO = Literal("2")


def _mul_factors(e: Expr) -> list[Expr]:
    if isinstance(e, Binary) and e.op == "mul":
        return _mul_factors(e.left) + _mul_factors(e.right)
    return [e]


def _mul_chain(factors: list[Expr]) -> Expr:
    result = factors[0]
    for f in factors[1:]:
        result = Binary("mul", result, f)
    return result


def _split_linear_in_var(u: Expr) -> Optional[Expr]:
    """For u structurally equal to x or (constant product)*x, return the
    constant part (None when u is plain x); raises KeyError otherwise."""
    factors = _mul_factors(u)
    var_count = sum(1 for f in factors if isinstance(f, Var))
    if var_count != 1 or any(contains_var(f) and not isinstance(f, Var) for f in factors):
        raise KeyError
    rest = [f for f in factors if not isinstance(f, Var)]
    return _mul_chain(rest) if rest else None


def _with_factor(prefix: Optional[Expr], kernel: Expr) -> Expr:
    if prefix is None or prefix == _ONE:
        return kernel
    return Binary("mul", prefix, kernel)


def _rewrite_div(e: Binary) -> Expr:
    num, den = e.left, e.right
    # A / cosh(u)  and  A / cosh(u)^p
    if isinstance(den, Unary) and den.op == "cosh":
        return _with_factor(num, StableKernel("sech", den.child))
    if (
        isinstance(den, Binary)
        and den.op == "pow"
        and isinstance(den.left, Unary)
        and den.left.op == "cosh"
    ):
        p = _exact_integer(den.right)
        if p is not None and p > 0:
            power = Binary("pow", StableKernel("sech", den.left.child), den.right)
            return _with_factor(num, power)
    # sin(u)/u and sin(u)^2/u^2
    if isinstance(num, Unary) and num.op == "sin" and num.child == den:
        return StableKernel("sin_over_x", den)
    if (
        isinstance(num, Binary)
        and num.op == "pow"
        and _exact_integer(num.right) == 2
        and isinstance(num.left, Unary)
        and num.left.op == "sin"
        and isinstance(den, Binary)
        and den.op == "pow"
        and _exact_integer(den.right) == 2
        and num.left.child == den.left
    ):
        return Binary("pow", StableKernel("sin_over_x", den.left), _TWO)
    # (... * x * ...) / sinh(c*x)  ->  ... * (1/c) * [c*x/sinh(c*x)]
    if isinstance(den, Unary) and den.op == "sinh":
        try:
            scale = _split_linear_in_var(den.child)
        except KeyError:
            return e
        factors = _mul_factors(num)
        for i, f in enumerate(factors):
            if isinstance(f, Var):
                rest = factors[:i] + factors[i + 1 :]
                pieces = rest[:]
                if scale is not None:
                    pieces.append(Binary("div", _ONE, scale))
                pieces.append(StableKernel("x_over_sinh", den.child))
                return _mul_chain(pieces)
        return e
    return e


def rewrite_stable(e: Expr) -> Expr:
    """Replace structurally risky patterns with stable-kernel nodes.

    Value-preserving on the common domain; a tree with no matching
    pattern is returned unchanged (possibly the same object).
    """
    if isinstance(e, (Literal, ConstRef, Var, StableKernel)):
        return e
    if isinstance(e, Unary):
        child = rewrite_stable(e.child)
        return e if child is e.child else Unary(e.op, child)
    assert isinstance(e, Binary)
    left = rewrite_stable(e.left)
    right = rewrite_stable(e.right)
    node = e if (left is e.left and right is e.right) else Binary(e.op, left, right)
    if node.op == "pow":
        # u^(-ln u)  (the catalog uses it only with u = x)
        if (
            isinstance(node.right, Unary)
            and node.right.op == "neg"
            and isinstance(node.right.child, Unary)
            and node.right.child.op == "ln"
            and node.right.child.child == node.left
        ):
            return StableKernel("self_log_power", node.left)
        # cosh(u)^(-1)
        if (
            isinstance(node.left, Unary)
            and node.left.op == "cosh"
            and _exact_integer(node.right) == -1
        ):
            return StableKernel("sech", node.left.child)
        return node
    if node.op == "div":
        return _rewrite_div(node)
    return node
