"""Exact-valued black-box functions on Q and the difference operators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

Evaluator = Callable[[Fraction], Fraction]


@dataclass(frozen=True)
class BlackBoxFunc:
    """Deterministic map Q -> Q.

    ``guard`` optionally restricts the domain; evaluating outside it raises
    ``ValueError``.
    """

    evaluator: Evaluator
    name: str = "f"
    guard: Optional[Callable[[Fraction], bool]] = None

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if self.guard is not None and not self.guard(x):
            raise ValueError(f"{self.name} is not defined at {x}")
        return Fraction(self.evaluator(x))

    def __add__(self, other: BlackBoxFunc) -> BlackBoxFunc:
        return BlackBoxFunc(lambda x: self(x) + other(x), f"({self.name} + {other.name})")

    def __sub__(self, other: BlackBoxFunc) -> BlackBoxFunc:
        return BlackBoxFunc(lambda x: self(x) - other(x), f"({self.name} - {other.name})")


def blackbox(fn: Evaluator | BlackBoxFunc, name: str | None = None) -> BlackBoxFunc:
    if isinstance(fn, BlackBoxFunc):
        return fn
    return BlackBoxFunc(fn, name or getattr(fn, "__name__", "f"))


def monomial(c, k: int) -> BlackBoxFunc:
    c = Fraction(c)
    return BlackBoxFunc(lambda x: c * x ** k, f"{c}*x^{k}")


def difference(h, f: Evaluator | BlackBoxFunc) -> BlackBoxFunc:
    """``x -> f(x + h) - f(x)``."""
    h = Fraction(h)
    f = blackbox(f)
    return BlackBoxFunc(lambda x: f(x + h) - f(x), f"Delta_{h}({f.name})")


def difference_chain(hs: Iterable, f: Evaluator | BlackBoxFunc) -> BlackBoxFunc:
    """``Delta_{h_1} ... Delta_{h_m} f``; ``Delta_h^m`` is ``[h] * m``."""
    out = blackbox(f)
    for h in reversed(list(hs)):
        out = difference(h, out)
    return out
