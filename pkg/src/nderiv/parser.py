"""Expression language for scalars in Q(t) and operators on Q(t).

Grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | factor
    factor := atom ('^' uint)?
    atom   := uint | VAR | 'id' | 'D' ('^' uint)? ('(' expr ')')? | '(' expr ')'

``VAR`` is ``t`` by default (``x`` for polynomial inputs). Rationals are written
as quotients, ``3/2``. ``D^k(e)`` applies the k-th derivative to a scalar.

Elaboration gives a :class:`RatFunc` for scalar expressions and an
:class:`OperatorFunc` for operator expressions. A scalar times an operator
scales it; a product of operators is composition; scalars cannot be added to
operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exactfield import RatFunc, T
from .operators import OperatorFunc, iterated_derivatives


class ExprError(ValueError):
    pass


class ExprSyntaxError(ExprError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"syntax error at line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ElaborationError(ExprError):
    pass


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Id:
    pass


@dataclass(frozen=True)
class Deriv:
    order: int
    arg: "Expr | None" = None


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Num, Var, Id, Deriv, Neg, BinOp, Pow]

_SYMBOLS = set("+-*/^()")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Tokens as ``(kind, value, offset)``; kinds are ``int``, ``name``, ``sym``, ``end``."""
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(("name", text[i:j], i))
            i = j
        elif ch in _SYMBOLS:
            out.append(("sym", ch, i))
            i += 1
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r}", text, i)
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str, var: str):
        self.text = text
        self.var = var
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message: str):
        raise ExprSyntaxError(message, self.text, self.tok[2])

    def accept(self, sym: str) -> bool:
        kind, value, _ = self.tok
        if kind == "sym" and value == sym:
            self.i += 1
            return True
        return False

    def expect(self, sym: str):
        if not self.accept(sym):
            found = self.tok[1] or "end of input"
            self.error(f"expected {sym!r}, found {found!r}")

    def uint(self) -> int:
        kind, value, _ = self.tok
        if kind != "int":
            self.error("expected a nonnegative integer")
        self.i += 1
        return int(value)

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok[0] != "end":
            self.error(f"unexpected {self.tok[1]!r}")
        return node

    def expr(self) -> Expr:
        node = self.term()
        while True:
            if self.accept("+"):
                node = BinOp("+", node, self.term())
            elif self.accept("-"):
                node = BinOp("-", node, self.term())
            else:
                return node

    def term(self) -> Expr:
        node = self.unary()
        while True:
            if self.accept("*"):
                node = BinOp("*", node, self.unary())
            elif self.accept("/"):
                node = BinOp("/", node, self.unary())
            else:
                return node

    def unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.unary())
        return self.factor()

    def factor(self) -> Expr:
        node = self.atom()
        if self.accept("^"):
            node = Pow(node, self.uint())
        return node

    def atom(self) -> Expr:
        kind, value, _ = self.tok
        if kind == "int":
            self.i += 1
            return Num(int(value))
        if kind == "name":
            self.i += 1
            if value == self.var:
                return Var(value)
            if value == "id":
                return Id()
            if value == "D":
                order = self.uint() if self.accept("^") else 1
                if self.accept("("):
                    arg = self.expr()
                    self.expect(")")
                    return Deriv(order, arg)
                return Deriv(order)
            self.i -= 1
            self.error(f"unknown name {value!r}")
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        self.error("expected a number, a variable, 'id', 'D' or '('")


def parse_expr(text: str, var: str = "t") -> Expr:
    return _Parser(text, var).parse()


Value = Union[RatFunc, OperatorFunc]


def elaborate(node: Expr) -> Value:
    if isinstance(node, Num):
        return RatFunc.from_scalar(node.value)
    if isinstance(node, Var):
        return RatFunc(T, 1, _canonical=True)
    if isinstance(node, Id):
        return OperatorFunc(1)
    if isinstance(node, Deriv):
        if node.arg is None:
            return OperatorFunc.D(node.order)
        arg = elaborate(node.arg)
        if isinstance(arg, OperatorFunc):
            raise ElaborationError("D(...) takes a scalar argument, not an operator")
        return iterated_derivatives(arg, node.order)[-1]
    if isinstance(node, Neg):
        return -elaborate(node.operand)
    if isinstance(node, Pow):
        return elaborate(node.base) ** node.exponent
    if isinstance(node, BinOp):
        a, b = elaborate(node.left), elaborate(node.right)
        a_op, b_op = isinstance(a, OperatorFunc), isinstance(b, OperatorFunc)
        if node.op in "+-":
            if a_op != b_op:
                raise ElaborationError(f"cannot mix a scalar and an operator under {node.op!r}")
            return a + b if node.op == "+" else a - b
        if node.op == "*":
            if a_op and b_op:
                return a.compose(b)
            if a_op:
                return a.compose(OperatorFunc(b))
            if b_op:
                return b.scale(a)
            return a * b
        if b_op:
            raise ElaborationError("cannot divide by an operator")
        if b.is_zero():
            raise ElaborationError("division by zero")
        return a.scale(b.inv()) if a_op else a / b
    raise TypeError(f"not an expression node: {node!r}")


def parse_value(text: str, var: str = "t") -> Value:
    return elaborate(parse_expr(text, var))


def parse_scalar(text: str, var: str = "t") -> RatFunc:
    value = parse_value(text, var)
    if isinstance(value, OperatorFunc):
        raise ElaborationError("expected a scalar expression, got an operator")
    return value


def parse_operator(text: str) -> OperatorFunc:
    value = parse_value(text)
    if not isinstance(value, OperatorFunc):
        raise ElaborationError("expected an operator expression (use id or D), got a scalar")
    return value


def parse_rational_expr(text: str) -> Fraction:
    """A constant expression such as ``1/100`` or ``-3``."""
    value = parse_scalar(text)
    if not value.is_constant():
        raise ElaborationError(f"expected a rational constant, got {value.render()}")
    return value.as_scalar()
