"""Additive maps on Q(t) as differential operators, and the delta calculus.

An :class:`OperatorFunc` is the map ``x -> lam*x + sum_k c_k * D^k(x)`` with
coefficients in Q(t), where ``D = d/dt``. Such maps are Q-linear, so they are
additive functions on the field Q(t); ``D`` itself is a nontrivial derivation.

The class is closed under ``delta_alpha f(x) = f(alpha*x) - alpha*f(x)``:
by the Leibniz rule ``D^k(alpha*x) = sum_j C(k,j) D^j(alpha) D^(k-j)(x)``, so
the ``j = 0`` term cancels against ``alpha*f(x)`` and every remaining term has
strictly lower D-order. Hence one delta lowers the top order by at least one,
and ``m + 1`` deltas annihilate any operator of top order ``m``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .exactfield import ONE, ZERO, Poly, RatFunc, ratfunc, render_poly


def formal_derivative(u: RatFunc) -> RatFunc:
    """``D(u)`` by the quotient rule, with ``D(t) = 1``."""
    u = ratfunc(u)
    if u.den.is_constant():
        return RatFunc(u.num.derivative(), u.den, _canonical=True)
    num = u.num.derivative() * u.den - u.num * u.den.derivative()
    return RatFunc(num, u.den * u.den)


def iterated_derivatives(u: RatFunc, k: int) -> list[RatFunc]:
    """``[u, D u, ..., D^k u]``."""
    out = [ratfunc(u)]
    for _ in range(k):
        out.append(formal_derivative(out[-1]))
    return out


class OperatorFunc:
    """The map ``x -> id_coeff*x + sum_k deriv_coeffs[k] * D^k(x)``.

    Zero coefficients are dropped, so two operators are equal exactly when they
    represent the same map.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, id_coeff=0, deriv_coeffs: Mapping[int, object] | None = None):
        coeffs: dict[int, RatFunc] = {}
        lam = ratfunc(id_coeff)
        if lam:
            coeffs[0] = lam
        for k, c in (deriv_coeffs or {}).items():
            if k < 1:
                raise ValueError(f"derivative orders must be >= 1, got {k}")
            c = ratfunc(c)
            if c:
                coeffs[k] = c
        object.__setattr__(self, "_coeffs", coeffs)

    @classmethod
    def _from_terms(cls, terms: Mapping[int, RatFunc]) -> OperatorFunc:
        op = object.__new__(cls)
        object.__setattr__(op, "_coeffs", {k: c for k, c in sorted(terms.items()) if c})
        return op

    @classmethod
    def identity(cls, lam=1) -> OperatorFunc:
        return cls(lam)

    @classmethod
    def D(cls, k: int = 1, coeff=1) -> OperatorFunc:
        if k == 0:
            return cls(coeff)
        return cls(0, {k: coeff})

    def __setattr__(self, name, value):
        raise AttributeError("OperatorFunc is immutable")

    @property
    def id_coeff(self) -> RatFunc:
        return self._coeffs.get(0, ZERO)

    @property
    def deriv_coeffs(self) -> dict[int, RatFunc]:
        return {k: c for k, c in self._coeffs.items() if k}

    @property
    def terms(self) -> dict[int, RatFunc]:
        """All coefficients keyed by D-order, the identity being order 0."""
        return dict(self._coeffs)

    @property
    def order_bound(self) -> int:
        return max((k for k in self._coeffs if k), default=0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, OperatorFunc):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(sorted(self._coeffs.items(), key=lambda kv: kv[0])))

    def __call__(self, x) -> RatFunc:
        return apply(self, x)

    def __add__(self, other: OperatorFunc) -> OperatorFunc:
        if not isinstance(other, OperatorFunc):
            return NotImplemented
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, ZERO) + c
        return OperatorFunc._from_terms(out)

    def __neg__(self) -> OperatorFunc:
        return OperatorFunc._from_terms({k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other: OperatorFunc) -> OperatorFunc:
        if not isinstance(other, OperatorFunc):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> OperatorFunc:
        """Left multiplication by a scalar of Q(t): ``x -> s * f(x)``."""
        s = ratfunc(s)
        return OperatorFunc._from_terms({k: s * c for k, c in self._coeffs.items()})

    def compose(self, other: OperatorFunc) -> OperatorFunc:
        """``self o other``; Leibniz keeps the result inside the class."""
        out: dict[int, RatFunc] = {}
        for j, b in other._coeffs.items():
            top = max(self._coeffs, default=0)
            db = iterated_derivatives(b, top)
            for i, a in self._coeffs.items():
                for l in range(i + 1):
                    if db[l]:
                        k = i - l + j
                        out[k] = out.get(k, ZERO) + a * db[l] * comb(i, l)
        return OperatorFunc._from_terms(out)

    def __pow__(self, k: int) -> OperatorFunc:
        if k < 0:
            raise ValueError("operators are not invertible here")
        result = OperatorFunc(1)
        for _ in range(k):
            result = result.compose(self)
        return result

    def render(self) -> str:
        return render_operator(self)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"OperatorFunc({self.render()})"


def _render_coeff(c: RatFunc) -> tuple[str, str]:
    """Return ``(sign, body)`` where body is safe to put before ``*``."""
    if c.is_polynomial():
        nonzero = [x for x in c.num.coeffs if x]
        if len(nonzero) == 1:
            sign = "-" if nonzero[0] < 0 else "+"
            return sign, render_poly(-c.num if sign == "-" else c.num)
        return "+", f"({render_poly(c.num)})"
    return "+", f"({c.render()})"


def render_operator(f: OperatorFunc) -> str:
    """Text form such as ``3*id + t*D^2``, readable back by the CLI grammar."""
    if f.is_zero():
        return "0*id"
    parts: list[str] = []
    for k, c in sorted(f.terms.items()):
        sign, body = _render_coeff(c)
        atom = "id" if k == 0 else ("D" if k == 1 else f"D^{k}")
        text = atom if body == "1" else f"{body}*{atom}"
        if not parts:
            parts.append(text if sign == "+" else f"-{text}")
        else:
            parts.append(f"{sign} {text}")
    return " ".join(parts)


def apply(f: OperatorFunc, x) -> RatFunc:
    """Evaluate the represented map at ``x`` in Q(t)."""
    x = ratfunc(x)
    if f.is_zero():
        return ZERO
    derivs = iterated_derivatives(x, f.order_bound)
    acc = ZERO
    for k, c in f.terms.items():
        if derivs[k]:
            acc = acc + c * derivs[k]
    return acc


def delta(alpha, f: OperatorFunc) -> OperatorFunc:
    """The operator ``x -> f(alpha*x) - alpha*f(x)`` in closed form."""
    alpha = ratfunc(alpha)
    top = f.order_bound
    if top == 0:
        return OperatorFunc()
    dalpha = iterated_derivatives(alpha, top)
    out: dict[int, RatFunc] = {}
    for k, c in f.deriv_coeffs.items():
        for j in range(1, k + 1):
            if dalpha[j]:
                out[k - j] = out.get(k - j, ZERO) + c * dalpha[j] * comb(k, j)
    return OperatorFunc._from_terms(out)


@dataclass(frozen=True)
class DeltaChainSpec:
    """``delta_{alphas[0]} o ... o delta_{alphas[-1]}`` applied to ``target``."""

    alphas: tuple
    target: OperatorFunc

    def __post_init__(self):
        if len(self.alphas) < 1:
            raise ValueError("a delta chain needs at least one alpha")
        object.__setattr__(self, "alphas", tuple(ratfunc(a) for a in self.alphas))


def delta_chain(spec: DeltaChainSpec | Sequence, f: OperatorFunc | None = None) -> OperatorFunc:
    """Evaluate a delta chain; the first alpha is the outermost delta.

    Accepts a :class:`DeltaChainSpec` or ``(alphas, f)``. Deltas commute on
    this class, so the order is only a convention.
    """
    if not isinstance(spec, DeltaChainSpec):
        spec = DeltaChainSpec(tuple(spec), f)
    out = spec.target
    for alpha in reversed(spec.alphas):
        if out.is_zero():
            break
        out = delta(alpha, out)
    return out


def random_ratfunc(rng: random.Random, max_degree: int = 3, *, nonconstant: bool = True) -> RatFunc:
    """Seeded pseudo-random element of Q(t) with degrees at most ``max_degree``."""

    def coeff():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 5))

    while True:
        dn = rng.randint(1 if nonconstant else 0, max_degree)
        dd = rng.randint(0, max_degree)
        num = Poly([coeff() for _ in range(dn)] + [Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))])
        den = Poly([coeff() for _ in range(dd)] + [Fraction(rng.randint(1, 9), rng.randint(1, 5))])
        if den.is_zero():
            continue
        u = RatFunc(num, den)
        if not nonconstant or not u.is_constant():
            return u


def random_operator(rng: random.Random, max_order: int = 3, max_degree: int = 2) -> OperatorFunc:
    terms = {k: random_ratfunc(rng, max_degree, nonconstant=False) for k in range(max_order + 1) if rng.random() < 0.7}
    return OperatorFunc._from_terms(terms)


@dataclass(frozen=True)
class OrderWitness:
    """A chain and a point where the chain value is nonzero."""

    alphas: tuple
    x: RatFunc
    value: RatFunc

    def recheck(self, f: OperatorFunc) -> RatFunc:
        g = delta_chain(self.alphas, f) if self.alphas else f
        return apply(g, self.x)

    def to_dict(self) -> dict:
        return {
            "alphas": [a.render() for a in self.alphas],
            "x": self.x.render(),
            "value": self.value.render(),
        }


@dataclass(frozen=True)
class OrderVerdict:
    is_order_n: bool
    n: int
    witness: OrderWitness | None
    trials_run: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "is_order_n": self.is_order_n,
            "n": self.n,
            "trials_run": self.trials_run,
            "seed": self.seed,
            "witness": self.witness.to_dict() if self.witness else None,
        }


def nonvanishing_point(g: OperatorFunc) -> tuple[RatFunc, RatFunc]:
    """A point ``t^i`` with ``g(t^i) != 0``.

    If ``g`` has top order ``m`` and killed ``1, t, ..., t^m`` its coefficients
    would vanish one by one (triangular system), so the search is finite.
    """
    if g.is_zero():
        raise ValueError("the zero operator vanishes everywhere")
    for i in range(g.order_bound + 1):
        x = RatFunc(Poly.monomial(1, i), 1, _canonical=True)
        v = apply(g, x)
        if v:
            return x, v
    raise AssertionError("unreachable: nonzero operator vanished on 1..t^m")


def is_order_n_derivation(f: OperatorFunc, n: int, trials: int = 16, seed: int = 0,
                          alpha_degree: int = 3) -> OrderVerdict:
    """Test ``f(1) = 0`` and ``delta_{a_1} ... delta_{a_{n+1}} f = 0``.

    The chain condition is checked at ``trials`` seeded random tuples of
    nonconstant alphas. A negative answer always carries a witness that can be
    re-evaluated exactly; a positive one is probabilistic evidence, which for
    operators of top order ``<= n`` is also forced by the module-level lemma.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    f1 = apply(f, ONE)
    if f1:
        return OrderVerdict(False, n, OrderWitness((), ONE, f1), 0, seed)
    rng = random.Random(seed)
    for trial in range(1, trials + 1):
        alphas = tuple(random_ratfunc(rng, alpha_degree) for _ in range(n + 1))
        g = delta_chain(alphas, f)
        if g:
            x, value = nonvanishing_point(g)
            return OrderVerdict(False, n, OrderWitness(alphas, x, value), trial, seed)
    return OrderVerdict(True, n, None, trials, seed)
