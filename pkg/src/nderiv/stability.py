"""Hyers stabilization of approximately additive functions on Q.

If ``|f(x+y) - f(x) - f(y)| <= eps`` then ``a_N(x) = f(2^N x) / 2^N`` moves by
at most ``eps / 2^(n+1)`` from step ``n`` to ``n+1``, so it is within
``eps / 2^N`` of the additive limit. All quantities are exact rationals and
every threshold below is an exact inequality.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .blackbox import BlackBoxFunc, blackbox
from .characterize import random_rational
from .exactfield import format_rational, parse_rational

NOISE_BITS = 64


class NoisyFunc(BlackBoxFunc):
    """``base`` plus a designed bounded perturbation.

    ``core_lambda`` is set when the base is the linear map ``x -> core_lambda*x``.
    """

    def __init__(self, evaluator, name: str, epsilon: Fraction, seed: int, core_lambda=None):
        super().__init__(evaluator, name)
        object.__setattr__(self, "epsilon", Fraction(epsilon))
        object.__setattr__(self, "seed", seed)
        object.__setattr__(self, "core_lambda", core_lambda)


def hashed_unit(x: Fraction, seed: int) -> Fraction:
    """Deterministic pseudo-random rational in ``[-1, 1]`` keyed by ``x``."""
    x = Fraction(x)
    digest = hashlib.sha256(f"{seed}:{x.numerator}/{x.denominator}".encode()).digest()
    r = int.from_bytes(digest[:NOISE_BITS // 8], "big")
    return Fraction(2 * r, (1 << NOISE_BITS) - 1) - 1


def add_noise(base, epsilon, seed: int = 0, *, core_lambda=None) -> NoisyFunc:
    """``base(x) + b(x)`` with ``|b(x)| <= 2*epsilon/3``.

    The 2/3 scaling keeps ``|b(x+y) - b(x) - b(y)| <= 2*epsilon`` while
    ``b`` still stays inside ``[-epsilon, epsilon]``.
    """
    epsilon = Fraction(epsilon)
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    base = blackbox(base)
    if epsilon == 0:
        return NoisyFunc(base, base.name, epsilon, seed, core_lambda)
    amp = 2 * epsilon / 3

    def noisy(x):
        return base(x) + amp * hashed_unit(x, seed)

    return NoisyFunc(noisy, f"{base.name} + noise({format_rational(epsilon)})", epsilon, seed,
                     core_lambda)


def make_noisy(core_lambda, epsilon, seed: int = 0) -> NoisyFunc:
    lam = Fraction(core_lambda)
    core = BlackBoxFunc(lambda x: lam * x, f"{format_rational(lam)}*x")
    return add_noise(core, epsilon, seed, core_lambda=lam)


def hyers_stabilize(f, N: int) -> BlackBoxFunc:
    """``x -> f(2^N x) / 2^N``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    f = blackbox(f)
    # noiseless linear fixture: a_N is f itself
    if getattr(f, "epsilon", None) == 0 and getattr(f, "core_lambda", None) is not None:
        return f
    scale = 1 << N
    return BlackBoxFunc(lambda x: f(scale * x) / scale, f"hyers_{N}({f.name})")


def sample_points(samples: int, seed: int, range_bound=10) -> list[Fraction]:
    rng = random.Random(seed)
    return [random_rational(rng, range_bound) for _ in range(samples)]


def sample_pairs(samples: int, seed: int, range_bound=10) -> list[tuple[Fraction, Fraction]]:
    pts = sample_points(2 * samples, seed, range_bound)
    return list(zip(pts[0::2], pts[1::2]))


def cauchy_at(f, x, y) -> Fraction:
    return abs(f(x + y) - f(x) - f(y))


def cauchy_defect(f, samples: int = 1000, seed: int = 0, range_bound=10,
                  pairs: Sequence[tuple[Fraction, Fraction]] | None = None) -> Fraction:
    """Largest observed ``|f(x+y) - f(x) - f(y)|``; a lower bound for the true defect."""
    if pairs is None:
        if samples < 1:
            raise ValueError("samples must be >= 1")
        pairs = sample_pairs(samples, seed, range_bound)
    f = blackbox(f)
    return max((cauchy_at(f, x, y) for x, y in pairs), default=Fraction(0))


@dataclass(frozen=True)
class StabilityReport:
    epsilon_hat: Fraction
    N: int
    residual_sup: Fraction
    cauchy_defect_of_aN: Fraction
    samples: int
    seed: int
    range_bound: Fraction
    lam: Fraction
    linear_residual_sup: Fraction
    n: int

    @property
    def hyers_ok(self) -> bool:
        return (self.residual_sup <= self.epsilon_hat
                and self.cauchy_defect_of_aN <= self.epsilon_hat / 2 ** self.N)

    @property
    def linear_ok(self) -> bool:
        return self.linear_residual_sup <= self.epsilon_hat + self.epsilon_hat / 2 ** self.N

    @property
    def passed(self) -> bool:
        return self.hyers_ok and self.linear_ok

    def to_dict(self) -> dict:
        r = format_rational
        return {
            "epsilon_hat": r(self.epsilon_hat),
            "N": self.N,
            "residual_sup": r(self.residual_sup),
            "cauchy_defect_of_aN": r(self.cauchy_defect_of_aN),
            "samples": self.samples,
            "seed": self.seed,
            "probe_box": [r(-self.range_bound), r(self.range_bound)],
            "n": self.n,
            "lambda": r(self.lam),
            "derivation_part": "0*id",
            "linear_residual_sup": r(self.linear_residual_sup),
            "hyers_ok": self.hyers_ok,
            "linear_ok": self.linear_ok,
            "pass": self.passed,
        }


def matched_pairs(pairs, N: int) -> list[tuple[Fraction, Fraction]]:
    """Pairs at which the defect of ``a_N`` equals ``f``'s defect on ``pairs`` over ``2^N``."""
    scale = 1 << N
    return [(x / scale, y / scale) for x, y in pairs]


def approx_derivation_recover(f, n: int = 1, N: int = 20, samples: int = 1000, seed: int = 0,
                              range_bound=10) -> StabilityReport:
    """Recover ``f ~ d + lam*x`` for an approximately additive ``f`` on Q.

    On Q every additive map is ``x -> a(1)*x`` and the only derivation of any
    order is 0, so the output is ``d = 0`` and ``lam = a_N(1)``. Local
    boundedness is only examined on the probe box ``[-range_bound, range_bound]``.
    Failures are reported through ``passed``, never raised.
    """
    f = blackbox(f)
    range_bound = Fraction(range_bound)
    pairs = sample_pairs(samples, seed, range_bound)
    points = [x for pair in pairs for x in pair]
    eps_hat = cauchy_defect(f, pairs=pairs)
    a_N = hyers_stabilize(f, N)
    residual = max(abs(f(x) - a_N(x)) for x in points)
    defect_aN = cauchy_defect(a_N, pairs=matched_pairs(pairs, N))
    lam = a_N(1)
    linear_residual = max(abs(f(x) - lam * x) for x in points)
    return StabilityReport(eps_hat, N, residual, defect_aN, samples, seed, range_bound,
                           lam, linear_residual, n)


def dump_probes(points: Iterable, path) -> None:
    """Write one ``p/q`` rational per line."""
    Path(path).write_text("".join(format_rational(x) + "\n" for x in points))


def load_probes(path) -> list[Fraction]:
    lines = Path(path).read_text().splitlines()
    return [parse_rational(line) for line in lines if line.strip()]
