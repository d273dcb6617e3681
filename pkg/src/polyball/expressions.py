"""A small expression language for boundary data and test fields.

Complex-valued arithmetic over variables ``x1..xn`` (the variable prefix is
configurable so boundary expressions can use ``z1..zn``), with the imaginary
unit ``i``, integer powers, and a fixed function set:

    exp, sin, cos, sqrt (principal branch), re, im     -- scalar argument
    abs2, normH                                        -- the point vector

``abs2(x)`` is the complex bilinear square ``sum_j x_j**2`` (not the
Hermitian square; that is ``normH(x)**2``).  Precedence is the usual
``^``  >  unary ``-``  >  ``* /``  >  ``+ -``; ``^`` is right associative
and its exponent must be an integer literal.
"""

from __future__ import annotations

import cmath
import re as _re
from dataclasses import dataclass, field

import numpy as np

from .geometry import as_cvec, csqrt_principal, hermitian_norm
from .polynomials import MultiPoly, squared_radius

SCALAR_FUNCTIONS = ("exp", "sin", "cos", "sqrt", "re", "im")
POINT_FUNCTIONS = ("abs2", "normH")


class ParseError(ValueError):
    """Syntax or name error with an exact 1-based source position."""

    def __init__(self, message, line, column, expected=()):
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        detail = f"{message} at line {line}, column {column}"
        if self.expected:
            detail += " (expected " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(detail)


class EvalError(ArithmeticError):
    """Runtime evaluation failure, pointing at the offending subexpression."""

    def __init__(self, message, pos):
        self.line, self.column = pos
        super().__init__(f"{message} at line {self.line}, column {self.column}")


@dataclass(frozen=True)
class Lit:
    value: complex
    pos: tuple = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class Var:
    index: int  # 1-based
    pos: tuple = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class PointRef:
    pos: tuple = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: tuple = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    pos: tuple = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: tuple = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class Call:
    func: str
    arg: object
    pos: tuple = field(default=(1, 1), compare=False)


_TOKEN_RE = _re.compile(
    r"(?P<number>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # number | ident | op | end
    text: str
    pos: tuple


def _tokenize(source):
    tokens = []
    line = 1
    col = 1
    i = 0
    while i < len(source):
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        m = _TOKEN_RE.match(source, i)
        if m is None:
            raise ParseError(f"unexpected character {ch!r}", line, col)
        text = m.group(0)
        kind = m.lastgroup
        tokens.append(_Token(kind, text, (line, col)))
        col += len(text)
        i = m.end()
    tokens.append(_Token("end", "", (line, col)))
    return tokens


class _Parser:
    def __init__(self, tokens, n, var_prefix):
        self.tokens = tokens
        self.k = 0
        self.n = n
        self.var_prefix = var_prefix
        self.var_re = _re.compile(_re.escape(var_prefix) + r"(\d+)$")

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, symbol):
        tok = self.peek()
        if tok.kind == "op" and tok.text == symbol:
            return self.advance()
        what = repr(tok.text) if tok.kind != "end" else "end of input"
        raise ParseError(f"unexpected {what}", *tok.pos, expected={symbol})

    def parse(self):
        node = self.expression()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(
                f"unexpected {tok.text!r} after a complete expression", *tok.pos
            )
        return node

    def expression(self):
        node = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.advance()
                right = self.term()
                node = BinOp(tok.text, node, right, tok.pos)
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "*/":
                self.advance()
                right = self.factor()
                node = BinOp(tok.text, node, right, tok.pos)
            else:
                return node

    def factor(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return Neg(self.factor(), tok.pos)
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            exponent = self.exponent_literal()
            return Pow(base, exponent, tok.pos)
        return base

    def exponent_literal(self):
        # exponents are integer literals; '^' chains right-associatively
        sign = 1
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            sign = -1
            tok = self.peek()
        if tok.kind != "number" or any(c in tok.text for c in ".eE"):
            what = repr(tok.text) if tok.kind != "end" else "end of input"
            raise ParseError(
                f"power exponent must be an integer literal, got {what}",
                *tok.pos,
                expected={"integer"},
            )
        self.advance()
        value = sign * int(tok.text)
        nxt = self.peek()
        if nxt.kind == "op" and nxt.text == "^":
            self.advance()
            value = value ** self.exponent_literal()
        return value

    def atom(self):
        tok = self.advance()
        if tok.kind == "number":
            text = tok.text
            value = complex(int(text)) if _re.fullmatch(r"\d+", text) else complex(float(text))
            return Lit(value, tok.pos)
        if tok.kind == "op" and tok.text == "(":
            node = self.expression()
            self.expect_op(")")
            return node
        if tok.kind == "ident":
            name = tok.text
            if name == "i":
                return Lit(1j, tok.pos)
            m = self.var_re.match(name)
            if m:
                index = int(m.group(1))
                if not 1 <= index <= self.n:
                    raise ParseError(
                        f"variable {name!r} out of range 1..{self.n}", *tok.pos
                    )
                return Var(index, tok.pos)
            if name in SCALAR_FUNCTIONS:
                self.expect_op("(")
                arg = self.expression()
                self.expect_op(")")
                return Call(name, arg, tok.pos)
            if name in POINT_FUNCTIONS:
                self.expect_op("(")
                arg_tok = self.advance()
                if arg_tok.kind != "ident" or arg_tok.text != self.var_prefix:
                    raise ParseError(
                        f"{name} takes the point vector {self.var_prefix!r}",
                        *arg_tok.pos,
                        expected={self.var_prefix},
                    )
                self.expect_op(")")
                return Call(name, PointRef(arg_tok.pos), tok.pos)
            raise ParseError(f"unknown identifier {name!r}", *tok.pos)
        what = repr(tok.text) if tok.kind != "end" else "end of input"
        raise ParseError(
            f"unexpected {what}", *tok.pos, expected={"number", "variable", "("}
        )


def parse(source, n, var_prefix="x"):
    """Parse ``source`` into an AST over variables ``<prefix>1..<prefix>n``."""
    n = int(n)
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return _Parser(_tokenize(source), n, var_prefix).parse()


def evaluate(ast, point):
    """Evaluate an AST at a point with complex arithmetic."""
    z = as_cvec(point)

    def run(node):
        if isinstance(node, Lit):
            return node.value
        if isinstance(node, Var):
            if node.index > z.size:
                raise EvalError(
                    f"variable index {node.index} exceeds point dimension {z.size}",
                    node.pos,
                )
            return complex(z[node.index - 1])
        if isinstance(node, Neg):
            return -run(node.operand)
        if isinstance(node, BinOp):
            left = run(node.left)
            right = run(node.right)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            if node.op == "*":
                return left * right
            if right == 0:
                raise EvalError("division by zero", node.pos)
            return left / right
        if isinstance(node, Pow):
            base = run(node.base)
            if node.exponent < 0 and base == 0:
                raise EvalError("zero raised to a negative power", node.pos)
            return base**node.exponent
        if isinstance(node, Call):
            if node.func == "abs2":
                return complex(np.sum(z * z))
            if node.func == "normH":
                return complex(hermitian_norm(z))
            arg = run(node.arg)
            if node.func == "exp":
                return cmath.exp(arg)
            if node.func == "sin":
                return cmath.sin(arg)
            if node.func == "cos":
                return cmath.cos(arg)
            if node.func == "sqrt":
                return csqrt_principal(arg)
            if node.func == "re":
                return complex(arg.real)
            if node.func == "im":
                return complex(arg.imag)
        raise TypeError(f"unknown AST node {node!r}")

    return run(ast)


def to_source(ast, var_prefix="x"):
    """Canonical fully parenthesized rendering; ``parse(to_source(a)) == a``."""

    def fmt_float(v):
        if v == int(v) and abs(v) < 1e15:
            return str(int(v))
        return repr(v)

    def fmt_lit(value):
        re_part, im_part = value.real, value.imag
        if im_part == 0.0:
            body = fmt_float(abs(re_part))
            return f"(-{body})" if re_part < 0 else body
        if re_part == 0.0:
            if im_part == 1.0:
                return "i"
            body = f"({fmt_float(abs(im_part))} * i)"
            return f"(-{body})" if im_part < 0 else body
        return f"({fmt_lit(complex(re_part, 0.0))} + {fmt_lit(complex(0.0, im_part))})"

    def run(node):
        if isinstance(node, Lit):
            return fmt_lit(node.value)
        if isinstance(node, Var):
            return f"{var_prefix}{node.index}"
        if isinstance(node, PointRef):
            return var_prefix
        if isinstance(node, Neg):
            return f"(-{run(node.operand)})"
        if isinstance(node, BinOp):
            return f"({run(node.left)} {node.op} {run(node.right)})"
        if isinstance(node, Pow):
            return f"({run(node.base)} ^ {node.exponent})"
        if isinstance(node, Call):
            return f"{node.func}({run(node.arg)})"
        raise TypeError(f"unknown AST node {node!r}")

    return run(ast)


def compile_field(source, n, var_prefix="x"):
    """Parse and wrap as a FieldFunction-compatible evaluator."""
    from .polynomials import FieldFunction

    ast = parse(source, n, var_prefix)

    def func(point):
        return evaluate(ast, point)

    return FieldFunction(n, func)


def _constant_value(node):
    """Complex value of a variable-free subtree, or None."""
    if isinstance(node, Lit):
        return node.value
    if isinstance(node, Neg):
        v = _constant_value(node.operand)
        return None if v is None else -v
    if isinstance(node, BinOp):
        left = _constant_value(node.left)
        right = _constant_value(node.right)
        if left is None or right is None:
            return None
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if right == 0:
            raise EvalError("division by zero", node.pos)
        return left / right
    if isinstance(node, Pow):
        base = _constant_value(node.base)
        if base is None:
            return None
        if node.exponent < 0 and base == 0:
            raise EvalError("zero raised to a negative power", node.pos)
        return base**node.exponent
    return None


def to_polynomial(ast, n):
    """Convert a polynomial AST to a MultiPoly; raises ValueError otherwise.

    Division is accepted only by constant subexpressions, powers only with
    nonnegative exponents (unless the base is constant), and of the function
    set only ``abs2``.
    """
    n = int(n)

    def run(node):
        const = _constant_value(node)
        if const is not None:
            return MultiPoly.constant(const, n)
        if isinstance(node, Var):
            return MultiPoly.variable(node.index, n)
        if isinstance(node, Neg):
            return -run(node.operand)
        if isinstance(node, BinOp):
            if node.op == "/":
                denom = _constant_value(node.right)
                if denom is None:
                    raise ValueError(
                        "division by a non-constant expression is not polynomial"
                    )
                if denom == 0:
                    raise EvalError("division by zero", node.pos)
                return run(node.left) * (1.0 / denom)
            left = run(node.left)
            right = run(node.right)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            return left * right
        if isinstance(node, Pow):
            if node.exponent < 0:
                raise ValueError("negative powers of variables are not polynomial")
            return run(node.base) ** node.exponent
        if isinstance(node, Call):
            if node.func == "abs2":
                return squared_radius(n)
            raise ValueError(f"function {node.func!r} is not polynomial")
        raise TypeError(f"unknown AST node {node!r}")

    return run(ast)
