"""Constructive decompositions: polynomial functions on Q and additive operators.

Everything here works over Q (or Q(t) for operators). On Q an additive map is
automatically Q-linear, so every symmetric k-additive map is ``c*x_1*...*x_k``
and the regularity hypotheses needed over the reals hold for free. That is
what makes the monomial form below exactly checkable rather than assumed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Callable, Sequence

from .blackbox import BlackBoxFunc, blackbox
from .exactfield import ONE, RatFunc, format_rational, ratfunc
from .operators import (
    OperatorFunc,
    OrderVerdict,
    apply,
    delta_chain,
    is_order_n_derivation,
)


class NotPolynomialError(ValueError):
    """Raised when a residual survives polynomial decomposition."""

    def __init__(self, message: str, witness: Fraction, residual: Fraction):
        super().__init__(message)
        self.witness = witness
        self.residual = residual


def random_rational(rng: random.Random, bound=10, max_den: int = 50) -> Fraction:
    den = rng.randint(1, max_den)
    bound = Fraction(bound)
    num = rng.randint(-int(bound * den), int(bound * den))
    return Fraction(num, den)


def D_functional(f: OperatorFunc, n: int, alpha) -> RatFunc:
    """``delta_alpha^(n+1) f`` evaluated at 1."""
    alpha = ratfunc(alpha)
    return apply(delta_chain((alpha,) * (n + 1), f), ONE)


@dataclass(frozen=True)
class LinearSplit:
    lam: RatFunc
    derivation_part: OperatorFunc
    verified_order: int
    verdict: OrderVerdict

    def reconstruct(self) -> OperatorFunc:
        return self.derivation_part + OperatorFunc(self.lam)

    def to_dict(self) -> dict:
        return {
            "lambda": _render_scalar(self.lam),
            "derivation_part": self.derivation_part.render(),
            "verified_order": self.verified_order,
            "verdict": self.verdict.to_dict(),
            "witness": self.verdict.witness.to_dict() if self.verdict.witness else None,
            "seed": self.verdict.seed,
        }


def _render_scalar(u: RatFunc) -> str:
    if u.is_constant():
        return format_rational(u.as_scalar())
    return u.render()


def decompose_linear_part(f: OperatorFunc, n: int, trials: int = 16, seed: int = 0) -> LinearSplit:
    """Split ``f = d + f(1)*id`` and test whether ``d`` is a derivation of order ``n``."""
    lam = apply(f, ONE)
    d = f - OperatorFunc(lam)
    verdict = is_order_n_derivation(d, n, trials, seed)
    return LinearSplit(lam, d, n, verdict)


def nested_difference(p: Callable, ys: Sequence, x0) -> Fraction:
    """``Delta_{y_1} ... Delta_{y_k} p(x0)`` by recursive inclusion-exclusion.

    Uses ``2^k`` evaluations of ``p``.
    """
    if not ys:
        return Fraction(p(Fraction(x0)))
    head, rest = Fraction(ys[0]), ys[1:]
    return nested_difference(p, rest, Fraction(x0) + head) - nested_difference(p, rest, x0)


def extract_multiadditive(p, k: int, ys: Sequence, x0=0, *, check_x0: bool = False) -> Fraction:
    """Value ``F_k(y_1, ..., y_k)`` of the symmetric k-additive component.

    For a polynomial function of degree at most ``k`` the k-th difference is
    ``k! * F_k(ys)`` regardless of ``x0``. With ``check_x0`` the value is also
    computed at ``x0 + 1`` and a mismatch raises :class:`NotPolynomialError`.
    """
    if len(ys) != k:
        raise ValueError(f"expected {k} spans, got {len(ys)}")
    value = nested_difference(p, ys, x0) / factorial(k)
    if check_x0:
        other = nested_difference(p, ys, Fraction(x0) + 1) / factorial(k)
        if other != value:
            raise NotPolynomialError(
                f"k-th difference depends on the base point; degree exceeds {k}",
                Fraction(x0) + 1, other - value)
    return value


@dataclass(frozen=True)
class Monomial:
    coefficient: Fraction
    degree: int

    def __call__(self, x) -> Fraction:
        return self.coefficient * Fraction(x) ** self.degree

    def render(self, var: str = "x") -> str:
        c = format_rational(self.coefficient)
        if self.degree == 0:
            return c
        mono = var if self.degree == 1 else f"{var}^{self.degree}"
        return mono if self.coefficient == 1 else f"{c}*{mono}"


@dataclass(frozen=True)
class PolyDecomposition:
    degree_bound: int
    components: tuple
    residual_zero: bool
    probes: int
    seed: int

    def __call__(self, x) -> Fraction:
        return sum((m(x) for m in self.components), Fraction(0))

    def recombine(self) -> BlackBoxFunc:
        return BlackBoxFunc(self, "recombined")

    @property
    def coefficients(self) -> list[Fraction]:
        return [m.coefficient for m in self.components]

    def to_dict(self) -> dict:
        return {
            "degree_bound": self.degree_bound,
            "components": [
                {"degree": m.degree, "coefficient": format_rational(m.coefficient), "trace": m.render()}
                for m in self.components
            ],
            "residual_zero": self.residual_zero,
            "probes": self.probes,
            "seed": self.seed,
        }


def poly_decompose(p, n: int, probes: int = 100, seed: int = 0) -> PolyDecomposition:
    """Write ``p`` as a sum of traces ``c_k x^k`` for ``k = 0..n``.

    Extraction runs from the top degree down; each step takes the k-th unit
    difference at 0 and removes the recovered monomial. The final residual
    must vanish at ``probes`` seeded random points.
    """
    if n < 0:
        raise ValueError("degree bound must be nonnegative")
    p = blackbox(p)
    coeffs: dict[int, Fraction] = {}
    current: Callable = p
    for k in range(n, -1, -1):
        c = extract_multiadditive(current, k, (1,) * k, 0)
        coeffs[k] = c
        current = _subtract_monomial(current, c, k)
    rng = random.Random(seed)
    for _ in range(probes):
        x = random_rational(rng)
        r = current(x)
        if r != 0:
            raise NotPolynomialError(
                f"input is not a polynomial function of degree ≤ {n} "
                f"(residual {format_rational(r)} at x = {format_rational(x)})", x, r)
    components = tuple(Monomial(coeffs[k], k) for k in range(n + 1))
    return PolyDecomposition(n, components, True, probes, seed)


def _subtract_monomial(f: Callable, c: Fraction, k: int) -> Callable:
    if c == 0:
        return f
    return lambda x: f(x) - c * Fraction(x) ** k


@dataclass(frozen=True)
class MonomialCheck:
    c: Fraction
    verified: bool
    witness: tuple | None = None


def regular_trace_to_monomial(F: Callable, k: int, probes: int = 100, seed: int = 0) -> MonomialCheck:
    """Recover ``c`` with ``F(x_1, ..., x_k) = c * x_1 * ... * x_k`` and check it.

    ``c`` is ``F(1, ..., 1)``; the identity is then tested exactly at
    ``probes`` seeded rational tuples. The first failing tuple is kept.
    """
    if k < 1:
        raise ValueError("k must be positive")
    c = Fraction(F(*([Fraction(1)] * k)))
    rng = random.Random(seed)
    for _ in range(probes):
        qs = tuple(random_rational(rng) for _ in range(k))
        if Fraction(F(*qs)) != c * prod(qs):
            return MonomialCheck(c, False, qs)
    return MonomialCheck(c, True, None)
