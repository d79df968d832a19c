"""Expression parsing and evaluation for the command-line front end.

The grammar covers rational literals, the variables z (alias ζ), x, y and
t, the built-in generators geom, exp and factorial, the operators
+ - * / ^ with standard precedence, derive(e) and derive(e, var), and
rational exponents on t only (Puiseux literals like t^(1/2)).  ASTs are
plain frozen dataclasses; parse(render(e)) == e structurally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fps import SeriesU, SeriesM
from .field import PuiseuxSeries


class ExprSyntaxError(ValueError):
    """Parse failure with a 1-based column position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"column {position}: {message}")
        self.position = position


class EvaluationError(ValueError):
    """Well-formed expression that cannot be evaluated (type or domain error)."""


# ----------------------------------------------------------------------
# tokens

_OPS = {"+", "-", "*", "/", "^", "(", ")", ",", "=", "'"}


@dataclass(frozen=True)
class _Token:
    kind: str  # "num", "name", an operator literal, or "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        pos = i + 1
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                raise ExprSyntaxError(
                    "decimal literals are not supported; write an exact fraction like 1/2", pos
                )
            tokens.append(_Token("num", text[i:j], pos))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], pos))
            i = j
            continue
        if ch in _OPS:
            tokens.append(_Token(ch, ch, pos))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", pos)
    tokens.append(_Token("end", "", n + 1))
    return tokens


# ----------------------------------------------------------------------
# abstract syntax


@dataclass(frozen=True)
class Lit:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str  # "z", "x", "y" or "t"


@dataclass(frozen=True)
class Gen:
    name: str  # "geom", "exp" or "factorial"


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Div:
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: Fraction


@dataclass(frozen=True)
class Derive:
    operand: object
    variable: str | None = None


@dataclass(frozen=True)
class Unknown:
    """The unknown function F or its derivative F' in an ODE, nowhere else."""

    prime: bool


_VARIABLES = {"z", "x", "y", "t"}
_VARIABLE_ALIASES = {"ζ": "z"}
_GENERATORS = {"geom", "exp", "factorial"}


class _Parser:
    def __init__(self, tokens: list[_Token], allow_unknown: bool = False):
        self.tokens = tokens
        self.i = 0
        self.allow_unknown = allow_unknown

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            shown = tok.text or "end of input"
            raise ExprSyntaxError(f"expected {kind!r}, found {shown!r}", tok.pos)
        return self.advance()

    # expr := term (('+' | '-') term)*
    def expr(self):
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.advance()
            rhs = self.term()
            node = Add(node, rhs) if op.kind == "+" else Sub(node, rhs)
        return node

    # term := unary (('*' | '/') unary)*
    def term(self):
        node = self.unary()
        while self.peek().kind in ("*", "/"):
            op = self.advance()
            rhs = self.unary()
            node = Mul(node, rhs) if op.kind == "*" else Div(node, rhs)
        return node

    # unary := '-' unary | power
    def unary(self):
        if self.peek().kind == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    # power := atom ['^' exponent]
    def power(self):
        node = self.atom()
        if self.peek().kind == "^":
            caret = self.advance()
            exponent = self.exponent()
            if exponent.denominator != 1 and node != Var("t"):
                raise ExprSyntaxError(
                    "fractional exponents are only supported on t", caret.pos
                )
            node = Pow(node, exponent)
        return node

    # exponent := INT | '(' ['-'] INT ['/' INT] ')'
    def exponent(self) -> Fraction:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Fraction(int(tok.text))
        if tok.kind == "(":
            self.advance()
            sign = 1
            if self.peek().kind == "-":
                self.advance()
                sign = -1
            num = self.expect("num")
            den = 1
            if self.peek().kind == "/":
                self.advance()
                den_tok = self.expect("num")
                den = int(den_tok.text)
                if den == 0:
                    raise ExprSyntaxError("zero denominator in exponent", den_tok.pos)
            self.expect(")")
            return Fraction(sign * int(num.text), den)
        raise ExprSyntaxError("expected an integer or rational exponent", tok.pos)

    def atom(self):
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Lit(Fraction(int(tok.text)))
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "name":
            self.advance()
            name = _VARIABLE_ALIASES.get(tok.text, tok.text)
            if name == "derive":
                self.expect("(")
                operand = self.expr()
                variable = None
                if self.peek().kind == ",":
                    self.advance()
                    var_tok = self.expect("name")
                    variable = _VARIABLE_ALIASES.get(var_tok.text, var_tok.text)
                    if variable not in _VARIABLES:
                        raise ExprSyntaxError(
                            f"unknown derivation variable {var_tok.text!r}", var_tok.pos
                        )
                self.expect(")")
                return Derive(operand, variable)
            if name in _VARIABLES:
                return Var(name)
            if name in _GENERATORS:
                return Gen(name)
            if name == "F" and self.allow_unknown:
                prime = False
                if self.peek().kind == "'":
                    self.advance()
                    prime = True
                    if self.peek().kind == "'":
                        raise ExprSyntaxError(
                            "higher derivatives of F are not supported", self.peek().pos
                        )
                return Unknown(prime)
            raise ExprSyntaxError(f"unknown name {tok.text!r}", tok.pos)
        shown = tok.text or "end of input"
        raise ExprSyntaxError(f"unexpected {shown!r}", tok.pos)


def parse_expression(text: str):
    parser = _Parser(_tokenize(text))
    node = parser.expr()
    end = parser.peek()
    if end.kind != "end":
        raise ExprSyntaxError(f"trailing input {end.text!r}", end.pos)
    return node


# ----------------------------------------------------------------------
# canonical rendering (parse . render is the identity on ASTs)

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(node) -> int:
    if isinstance(node, (Add, Sub)):
        return _PREC_ADD
    if isinstance(node, (Mul, Div)):
        return _PREC_MUL
    if isinstance(node, Neg):
        return _PREC_NEG
    if isinstance(node, Pow):
        return _PREC_POW
    return _PREC_ATOM


def _render_exponent(e: Fraction) -> str:
    if e.denominator == 1:
        return f"^{e}" if e >= 0 else f"^({e})"
    return f"^({e.numerator}/{e.denominator})"


def render_expression(node, parent_prec: int = 0) -> str:
    p = _prec(node)
    if isinstance(node, Lit):
        text = str(node.value)
    elif isinstance(node, Var):
        text = node.name
    elif isinstance(node, Gen):
        text = node.name
    elif isinstance(node, Unknown):
        text = "F'" if node.prime else "F"
    elif isinstance(node, Add):
        text = f"{render_expression(node.left, p)} + {render_expression(node.right, p + 1)}"
    elif isinstance(node, Sub):
        text = f"{render_expression(node.left, p)} - {render_expression(node.right, p + 1)}"
    elif isinstance(node, Mul):
        text = f"{render_expression(node.left, p)}*{render_expression(node.right, p + 1)}"
    elif isinstance(node, Div):
        text = f"{render_expression(node.left, p)}/{render_expression(node.right, p + 1)}"
    elif isinstance(node, Neg):
        text = f"-{render_expression(node.operand, p)}"
    elif isinstance(node, Pow):
        text = f"{render_expression(node.base, _PREC_ATOM)}{_render_exponent(node.exponent)}"
    elif isinstance(node, Derive):
        inner = render_expression(node.operand)
        text = f"derive({inner})" if node.variable is None else f"derive({inner}, {node.variable})"
        return text  # function form never needs parentheses
    else:
        raise TypeError(f"not an expression node: {node!r}")
    if p < parent_prec and not isinstance(node, (Lit, Var, Gen, Unknown)):
        return f"({text})"
    return text


# ----------------------------------------------------------------------
# evaluation

Value = Fraction | SeriesU | PuiseuxSeries | SeriesM


def _domain(value) -> str:
    if isinstance(value, Fraction):
        return "rational"
    if isinstance(value, SeriesU):
        return "series"
    if isinstance(value, PuiseuxSeries):
        return "puiseux"
    if isinstance(value, SeriesM):
        return "plane"
    raise TypeError(f"not a value: {value!r}")


def _lift(value: Fraction, domain: str):
    if domain == "series":
        return SeriesU.constant(value)
    if domain == "puiseux":
        return PuiseuxSeries.from_rational(value)
    if domain == "plane":
        return SeriesM.constant(2, value)
    return value


def _join(left, right):
    dl, dr = _domain(left), _domain(right)
    if dl == dr:
        return left, right
    if dl == "rational":
        return _lift(left, dr), right
    if dr == "rational":
        return left, _lift(right, dl)
    raise EvaluationError(
        f"cannot combine a {dl} value with a {dr} value in one expression"
    )


def _divide(left, right):
    left, right = _join(left, right)
    if isinstance(left, Fraction):
        if right == 0:
            raise EvaluationError("division by zero")
        return left / right
    if isinstance(left, SeriesU):
        if right.coeff(0) == 0:
            raise EvaluationError("series division needs a denominator with nonzero constant term")
        return left * right.invert_unit()
    if isinstance(left, PuiseuxSeries):
        if right.definitely_zero():
            raise EvaluationError("division by zero in the Puiseux field")
        return left * right.inv()
    raise EvaluationError("division of bivariate series is not supported")


def _power(base_value, exponent: Fraction):
    if exponent.denominator != 1:
        # the parser only lets this through when the base is t itself
        return PuiseuxSeries.monomial(exponent)
    e = int(exponent)
    if isinstance(base_value, Fraction):
        if base_value == 0 and e < 0:
            raise EvaluationError("zero cannot be raised to a negative power")
        return base_value**e
    if isinstance(base_value, SeriesU):
        if e < 0 and base_value.coeff(0) == 0:
            raise EvaluationError("negative powers need a series with nonzero constant term")
        return base_value**e
    if isinstance(base_value, PuiseuxSeries):
        if e < 0 and base_value.definitely_zero():
            raise EvaluationError("zero cannot be raised to a negative power")
        return base_value**e
    if e < 0:
        raise EvaluationError("negative powers of bivariate series are not supported")
    result = SeriesM.one(2)
    for _ in range(e):
        result = result * base_value
    return result


def _derive(value, variable: str | None):
    if isinstance(value, Fraction):
        return Fraction(0)
    if isinstance(value, SeriesU):
        if variable not in (None, "z"):
            raise EvaluationError("a univariate series can only be derived with respect to z")
        return value.derivative()
    if isinstance(value, SeriesM):
        if variable == "x":
            return value.partial(1)
        if variable == "y":
            return value.partial(2)
        raise EvaluationError("derive on a bivariate series needs a variable, x or y")
    raise EvaluationError("derivative with respect to t is not supported")


_GENERATOR_VALUES = {
    "geom": SeriesU.geometric,
    "exp": SeriesU.exponential,
    "factorial": SeriesU.factorial_terms,
}


def evaluate(node) -> Value:
    if isinstance(node, Lit):
        return node.value
    if isinstance(node, Var):
        if node.name == "z":
            return SeriesU.monomial(1)
        if node.name == "t":
            return PuiseuxSeries.t()
        if node.name == "x":
            return SeriesM.variable(2, 1)
        return SeriesM.variable(2, 2)
    if isinstance(node, Gen):
        return _GENERATOR_VALUES[node.name]()
    if isinstance(node, Add):
        left, right = _join(evaluate(node.left), evaluate(node.right))
        return left + right
    if isinstance(node, Sub):
        left, right = _join(evaluate(node.left), evaluate(node.right))
        return left - right
    if isinstance(node, Mul):
        left, right = _join(evaluate(node.left), evaluate(node.right))
        return left * right
    if isinstance(node, Div):
        return _divide(evaluate(node.left), evaluate(node.right))
    if isinstance(node, Neg):
        return -evaluate(node.operand)
    if isinstance(node, Pow):
        return _power(evaluate(node.base), node.exponent)
    if isinstance(node, Derive):
        return _derive(evaluate(node.operand), node.variable)
    if isinstance(node, Unknown):
        raise EvaluationError("F is only meaningful inside an ODE")
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_text(text: str) -> Value:
    return evaluate(parse_expression(text))


# ----------------------------------------------------------------------
# ODE parsing: "A(z)*F' + B(z)*F = C(z)"


def _linform(node):
    """Evaluate an AST as (c0, c1, c2) with value = c0 + c1*F + c2*F'."""
    zero = Fraction(0)
    if isinstance(node, Unknown):
        return (zero, zero, Fraction(1)) if node.prime else (zero, Fraction(1), zero)
    if isinstance(node, (Lit, Var, Gen)):
        return (_ode_value(node), zero, zero)
    if isinstance(node, Add):
        l0, l1, l2 = _linform(node.left)
        r0, r1, r2 = _linform(node.right)
        return (_sum2(l0, r0), _sum2(l1, r1), _sum2(l2, r2))
    if isinstance(node, Sub):
        l0, l1, l2 = _linform(node.left)
        r0, r1, r2 = _linform(node.right)
        return (_sum2(l0, _neg(r0)), _sum2(l1, _neg(r1)), _sum2(l2, _neg(r2)))
    if isinstance(node, Neg):
        c0, c1, c2 = _linform(node.operand)
        return (_neg(c0), _neg(c1), _neg(c2))
    if isinstance(node, Mul):
        l = _linform(node.left)
        r = _linform(node.right)
        l_pure = _is_pure(l)
        r_pure = _is_pure(r)
        if not l_pure and not r_pure:
            raise EvaluationError("the equation must be linear in F and F'")
        if l_pure:
            scalar, form = l[0], r
        else:
            scalar, form = r[0], l
        return tuple(_prod2(scalar, c) for c in form)
    if isinstance(node, Div):
        l = _linform(node.left)
        r = _linform(node.right)
        if not _is_pure(r):
            raise EvaluationError("cannot divide by an expression containing F")
        return tuple(_divide(c, r[0]) if not _is_zero_component(c) else c for c in l)
    if isinstance(node, Pow):
        base = _linform(node.base)
        if not _is_pure(base):
            raise EvaluationError("powers of F are not linear")
        return (_power(base[0], node.exponent), zero, zero)
    if isinstance(node, Derive):
        raise EvaluationError("write F' for the derivative of the unknown")
    raise TypeError(f"not an expression node: {node!r}")


def _ode_value(node):
    value = evaluate(node)
    if isinstance(value, (PuiseuxSeries, SeriesM)):
        raise EvaluationError("ODE coefficients must be series in z")
    return value


def _sum2(a, b):
    a, b = _join(a, b)
    return a + b


def _prod2(a, b):
    a, b = _join(a, b)
    return a * b


def _neg(a):
    return -a


def _is_zero_component(c) -> bool:
    return isinstance(c, Fraction) and c == 0


def _is_pure(form) -> bool:
    return _is_zero_component(form[1]) and _is_zero_component(form[2])


def _as_series(value) -> SeriesU:
    if isinstance(value, Fraction):
        return SeriesU.constant(value)
    return value


def parse_ode(text: str):
    """Parse "A(z)*F' + B(z)*F = C(z)" into a LinearODE."""
    from .ode import LinearODE

    tokens = _tokenize(text)
    split = [i for i, tok in enumerate(tokens) if tok.kind == "="]
    if len(split) != 1:
        pos = tokens[split[1]].pos if len(split) > 1 else tokens[-1].pos
        raise ExprSyntaxError("an equation needs exactly one '='", pos)
    cut = split[0]
    left_tokens = tokens[:cut] + [_Token("end", "", tokens[cut].pos)]
    right_tokens = tokens[cut + 1 :]

    def parse_side(toks):
        parser = _Parser(toks, allow_unknown=True)
        node = parser.expr()
        end = parser.peek()
        if end.kind != "end":
            raise ExprSyntaxError(f"trailing input {end.text!r}", end.pos)
        return _linform(node)

    l0, l1, l2 = parse_side(left_tokens)
    r0, r1, r2 = parse_side(right_tokens)
    a = _as_series(_sum2(l2, _neg(r2)))
    b = _as_series(_sum2(l1, _neg(r1)))
    c = _as_series(_sum2(r0, _neg(l0)))
    return LinearODE(a=a, b=b, c=c)
