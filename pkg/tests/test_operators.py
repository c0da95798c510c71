import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import operators, ratfuncs, small_q
from nderiv.blackbox import difference, difference_chain
from nderiv.exactfield import ONE, ZERO, RatFunc
from nderiv.operators import (
    DeltaChainSpec,
    OperatorFunc,
    apply,
    delta,
    delta_chain,
    formal_derivative,
    is_order_n_derivation,
    nonvanishing_point,
    random_ratfunc,
)

T = RatFunc.t()
D = OperatorFunc.D
_ts = sympy.Symbol("t")


def to_sympy(u: RatFunc):
    def poly(p):
        return sum(sympy.Rational(c.numerator, c.denominator) * _ts ** k for k, c in enumerate(p.coeffs))
    return poly(u.num) / poly(u.den)


def sympy_derivative_oracle(u: RatFunc, q: Fraction):
    expr = sympy.diff(to_sympy(u), _ts)
    val = sympy.Rational(expr.subs(_ts, sympy.Rational(q.numerator, q.denominator)))
    return Fraction(int(val.p), int(val.q))


def test_formal_derivative_examples():
    assert formal_derivative(T) == ONE
    assert formal_derivative(ONE) == ZERO
    assert formal_derivative(1 / T) == -1 / T ** 2


@settings(max_examples=60, deadline=None)
@given(ratfuncs(), small_q)
def test_formal_derivative_matches_sympy(u, q):
    try:
        got = formal_derivative(u)(q)
    except ZeroDivisionError:
        return
    assert got == sympy_derivative_oracle(u, q)


def test_apply_examples():
    assert apply(OperatorFunc(3), T) == 3 * T
    assert apply(D(1), T ** 2) == 2 * T
    assert apply(D(2, T), T ** 3) == 6 * T ** 2


def test_operator_normal_form():
    f = OperatorFunc(0, {1: 0, 2: T})
    assert f.deriv_coeffs == {2: T}
    assert f.order_bound == 2
    assert OperatorFunc().is_zero() and OperatorFunc().order_bound == 0
    with pytest.raises(ValueError):
        OperatorFunc(0, {0: 1})


def test_delta_examples():
    assert delta(T, OperatorFunc(5)).is_zero()
    assert delta(T, D(1)) == OperatorFunc(1)
    assert delta(T, D(2)) == OperatorFunc(0, {1: 2})


def test_delta_chain_examples():
    assert delta_chain((T, T + 1), D(1)).is_zero()
    assert delta_chain((T, T ** 2, 1 / T), D(2)).is_zero()
    assert delta_chain((T, T), D(2)) == OperatorFunc(2)
    spec = DeltaChainSpec((T, T), D(2))
    assert delta_chain(spec) == OperatorFunc(2)
    with pytest.raises(ValueError):
        DeltaChainSpec((), D(1))


def test_delta_chain_general_alpha_beta():
    # delta_a delta_b D^2 = 2 Da Db id
    rng = random.Random(5)
    for _ in range(20):
        a, b = random_ratfunc(rng), random_ratfunc(rng)
        assert delta_chain((a, b), D(2)) == OperatorFunc(2 * formal_derivative(a) * formal_derivative(b))


def test_order_verdict_examples():
    v = is_order_n_derivation(D(1), 1, 16, 1)
    assert v.is_order_n and v.witness is None and v.trials_run == 16

    v = is_order_n_derivation(D(2), 1, 16, 1)
    assert not v.is_order_n
    assert v.witness.value != ZERO
    assert v.witness.recheck(D(2)) == v.witness.value

    for n in range(4):
        v = is_order_n_derivation(OperatorFunc(1), n, 4, 0)
        assert not v.is_order_n
        assert v.witness.alphas == () and v.witness.x == ONE and v.witness.value == ONE


def test_order_zero_is_only_zero():
    assert is_order_n_derivation(OperatorFunc(), 0, 4, 0).is_order_n
    assert not is_order_n_derivation(D(1), 0, 4, 0).is_order_n


def test_order_check_validates_args():
    with pytest.raises(ValueError):
        is_order_n_derivation(D(1), 1, 0, 0)


def test_composition_d_of_d():
    assert D(1).compose(D(1)) == D(2)
    # D o (t*D) = D + t*D^2
    assert D(1).compose(D(1, T)) == OperatorFunc(0, {1: 1, 2: T})


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_order_ladder(k):
    assert is_order_n_derivation(D(k), k, 8, k).is_order_n
    v = is_order_n_derivation(D(k), k - 1, 8, k)
    assert not v.is_order_n
    assert v.witness.recheck(D(k)) == v.witness.value != ZERO


def test_nonvanishing_point():
    g = OperatorFunc(-T, {1: T ** 2})  # kills t, not 1
    x, v = nonvanishing_point(g)
    assert apply(g, x) == v != ZERO
    with pytest.raises(ValueError):
        nonvanishing_point(OperatorFunc())


def test_render():
    assert OperatorFunc(3, {2: T}).render() == "3*id + t*D^2"
    assert OperatorFunc(-1, {1: 1 - T}).render() == "-id + (-t + 1)*D"
    assert OperatorFunc(0, {3: 1 / T}).render() == "((1)/(t))*D^3"
    assert OperatorFunc().render() == "0*id"


@settings(max_examples=300, deadline=None)
@given(ratfuncs(), ratfuncs())
def test_leibniz(u, v):
    assert formal_derivative(u * v) == u * formal_derivative(v) + v * formal_derivative(u)


@settings(max_examples=100, deadline=None)
@given(ratfuncs(2), ratfuncs(2), operators())
def test_delta_evaluation_coherence(alpha, x, f):
    assert apply(delta(alpha, f), x) == apply(f, alpha * x) - alpha * apply(f, x)


@settings(max_examples=100, deadline=None)
@given(ratfuncs(2), ratfuncs(2), operators())
def test_delta_commutes(alpha, beta, f):
    assert delta(alpha, delta(beta, f)) == delta(beta, delta(alpha, f))


@settings(max_examples=100, deadline=None)
@given(operators(), ratfuncs(2), small_q)
def test_rational_homogeneity(f, x, q):
    assert apply(f, q * x) == q * apply(f, x)


@settings(max_examples=100, deadline=None)
@given(operators(), ratfuncs(2), ratfuncs(2))
def test_additivity(f, x, y):
    assert apply(f, x + y) == apply(f, x) + apply(f, y)


@settings(max_examples=200, deadline=None)
@given(ratfuncs(), ratfuncs())
def test_delta_kills_linear(alpha, lam):
    assert delta(alpha, OperatorFunc(lam)).is_zero()


@settings(max_examples=50, deadline=None)
@given(operators(2), ratfuncs(2), ratfuncs(2))
def test_delta_lowers_top_order(f, alpha, x):
    g = delta(alpha, f)
    assert g.order_bound < max(f.order_bound, 1)


@settings(max_examples=50, deadline=None)
@given(operators(2), operators(2), ratfuncs(2))
def test_compose_matches_evaluation(f, g, x):
    assert apply(f.compose(g), x) == apply(f, apply(g, x))


def test_difference_examples():
    sq = lambda x: x * x
    d1 = difference(1, sq)
    for x in (Fraction(0), Fraction(-3, 7), Fraction(5)):
        assert d1(x) == 2 * x + 1
        assert difference_chain([1, 3], sq)(x) == 6
        assert difference_chain([1, 1, 1], sq)(x) == 0


@settings(max_examples=100, deadline=None)
@given(st.lists(small_q, min_size=1, max_size=4), small_q)
def test_difference_chain_order_irrelevant(hs, x):
    cube = lambda z: z ** 3 - 2 * z
    assert difference_chain(hs, cube)(x) == difference_chain(list(reversed(hs)), cube)(x)
