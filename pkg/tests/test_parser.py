from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import operators, ratfuncs
from nderiv.exactfield import Poly, RatFunc
from nderiv.operators import OperatorFunc
from nderiv.parser import (
    BinOp,
    Deriv,
    ElaborationError,
    ExprSyntaxError,
    Num,
    Pow,
    Var,
    parse_expr,
    parse_operator,
    parse_rational_expr,
    parse_scalar,
    parse_value,
)

T = RatFunc.t()
CORPUS = Path(__file__).parent / "data" / "grammar_corpus.tsv"


def corpus_rows():
    for line in CORPUS.read_text().splitlines():
        if line and not line.startswith("#"):
            expr, canonical = line.split("\t")
            yield expr, canonical


@pytest.mark.parametrize("expr, canonical", list(corpus_rows()))
def test_golden_corpus(expr, canonical):
    value = parse_value(expr)
    assert value.render() == canonical
    assert parse_value(canonical) == value


def test_examples():
    assert parse_value("3*id + t*D^2") == OperatorFunc(3, {2: T})
    assert parse_value("(t^2-1)/(t-1)") == T + 1


def test_ast_shape():
    assert parse_expr("t^2 + 3") == BinOp("+", Pow(Var("t"), 2), Num(3))
    assert parse_expr("D^2") == Deriv(2)
    assert parse_expr("1 - 2 - 3") == BinOp("-", BinOp("-", Num(1), Num(2)), Num(3))
    assert parse_expr("1/2*t") == BinOp("*", BinOp("/", Num(1), Num(2)), Var("t"))


@pytest.mark.parametrize("text, column", [
    ("D^", 3),
    ("t +", 4),
    ("(t", 3),
    ("t)", 2),
    ("3 $ 4", 3),
    ("y", 1),
    ("t^-1", 3),
    ("", 1),
])
def test_syntax_errors(text, column):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr(text)
    assert info.value.column == column and info.value.line == 1
    assert f"column {column}" in str(info.value)


def test_syntax_error_line_tracking():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("t +\n  * 2")
    assert (info.value.line, info.value.column) == (2, 3)


@pytest.mark.parametrize("text", ["t + D", "id - 1", "1/D", "t/(t-t)", "1/0", "D(D)"])
def test_elaboration_errors(text):
    with pytest.raises(ElaborationError):
        parse_value(text)


def test_typed_entry_points():
    with pytest.raises(ElaborationError):
        parse_operator("t^2")
    with pytest.raises(ElaborationError):
        parse_scalar("D")
    assert parse_scalar("x^2 + 1", "x") == RatFunc(Poly((1, 0, 1)))
    with pytest.raises(ExprSyntaxError):
        parse_scalar("t", "x")
    assert parse_rational_expr("-1/100") == RatFunc(-1) / 100
    with pytest.raises(ElaborationError):
        parse_rational_expr("t")


@settings(max_examples=300, deadline=None)
@given(ratfuncs())
def test_scalar_roundtrip(u):
    assert parse_scalar(u.render()) == u


@settings(max_examples=200, deadline=None)
@given(operators())
def test_operator_roundtrip(f):
    assert parse_operator(f.render()) == f


leaf = st.sampled_from(["t", "1", "2", "3/4", "(t+1)"])
scalar_text = st.recursive(
    leaf,
    lambda inner: st.one_of(
        st.tuples(inner, st.sampled_from(["+", "-", "*"]), inner).map(lambda x: f"({x[0]} {x[1]} {x[2]})"),
        st.tuples(inner, st.integers(0, 3)).map(lambda x: f"({x[0]})^{x[1]}"),
        inner.map(lambda s: f"-{s}"),
    ),
    max_leaves=8,
)


@settings(max_examples=200, deadline=None)
@given(scalar_text)
def test_generated_text_roundtrip(text):
    value = parse_scalar(text)
    assert parse_scalar(value.render()) == value
