"""Exact arithmetic on Q, Q[t] and the rational function field Q(t).

Scalars are :class:`fractions.Fraction`. Polynomials are dense, stored as an
ascending tuple of coefficients with the leading coefficient nonzero; the
zero polynomial is the empty tuple and has degree ``None``.

A :class:`RatFunc` is always kept in canonical form: coprime numerator and
denominator with a monic denominator, so ``==`` is mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction
Scalar = Union[int, Fraction]


def _trim(coeffs: Iterable[Scalar]) -> tuple[Fraction, ...]:
    out = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def format_rational(q: Scalar) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``. Decimal strings are rejected."""
    text = text.strip()
    if any(ch in text for ch in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


class Poly:
    """Dense univariate polynomial over Q in the indeterminate ``t``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c: Scalar) -> Poly:
        return cls((c,))

    @classmethod
    def monomial(cls, c: Scalar, k: int) -> Poly:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int | None:
        """Index of the leading coefficient, ``None`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __repr__(self):
        return f"Poly({self})"

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly | Scalar) -> Poly:
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.constant(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        divisor = other.coeffs
        db = len(divisor) - 1
        if len(rem) - 1 < db:
            return Poly(), self
        inv_lead = 1 / divisor[-1]
        low = divisor[:-1]
        quot = [Fraction(0)] * (len(rem) - db)
        for i in range(len(rem) - 1 - db, -1, -1):
            c = rem[i + db] * inv_lead
            quot[i] = c
            if c:
                for j, y in enumerate(low):
                    if y:
                        rem[i + j] -= c * y
        return Poly(quot), Poly(rem[:db])

    def __divmod__(self, other: Poly):
        return self.divmod(other)

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divmod(other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        lc = self.lead
        return Poly(c / lc for c in self.coeffs)

    def derivative(self) -> Poly:
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        return render_poly(self)


def render_poly(p: Poly, var: str = "t") -> str:
    """Render in descending powers, e.g. ``3/2*t^2 - t + 1``."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = format_rational(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


T = Poly((0, 1))
ONE_POLY = Poly.constant(1)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd by the Euclidean remainder sequence over Q."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    a, b = p.monic(), q.monic()
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a


class RatFunc:
    """Element of Q(t) in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | Scalar = 0, den: Poly | Scalar = 1, *, _canonical=False):
        if not isinstance(num, Poly):
            num = Poly.constant(num)
        if not isinstance(den, Poly):
            den = Poly.constant(den)
        if not _canonical:
            num, den = _normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def from_scalar(cls, c: Scalar) -> RatFunc:
        return cls(Poly.constant(c), ONE_POLY, _canonical=True)

    @classmethod
    def t(cls) -> RatFunc:
        return cls(T, ONE_POLY, _canonical=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_scalar(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num.lead

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RatFunc", self.num.coeffs, self.den.coeffs))

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den, _canonical=True)

    def __add__(self, other) -> RatFunc:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            if b.is_constant():
                return RatFunc(a + c, b, _canonical=True)
            return RatFunc(a + c, b)
        # Henrici: only factors of gcd(b, d) can cancel afterwards
        g = poly_gcd(b, d)
        if g.is_constant():
            return RatFunc(a * d + c * b, b * d, _canonical=True)
        b1, d1 = b // g, d // g
        num = a * d1 + c * b1
        if num.is_zero():
            return ZERO
        h = poly_gcd(num, g)
        if not h.is_constant():
            num, g = num // h, g // h
        return RatFunc(num, b1 * d1 * g, _canonical=True)

    __radd__ = __add__

    def __sub__(self, other) -> RatFunc:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> RatFunc:
        return (-self) + other

    def __mul__(self, other) -> RatFunc:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return ZERO
        # cross-cancel; both dens are monic so the product is canonical
        if not d.is_constant():
            g = poly_gcd(a, d)
            if not g.is_constant():
                a, d = a // g, d // g
        if not b.is_constant():
            g = poly_gcd(c, b)
            if not g.is_constant():
                c, b = c // g, b // g
        return RatFunc(a * c, b * d, _canonical=True)

    __rmul__ = __mul__

    def inv(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("division by zero in ℚ(t)")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> RatFunc:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other) -> RatFunc:
        return _coerce(other) * self.inv()

    def __pow__(self, k: int) -> RatFunc:
        if k < 0:
            return self.inv() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, _canonical=True)

    def __call__(self, x: Scalar) -> Fraction:
        """Evaluate at a rational point."""
        d = self.den(Fraction(x))
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at {format_rational(x)}")
        return Fraction(self.num(Fraction(x))) / d

    def render(self, var: str = "t") -> str:
        return f"({render_poly(self.num, var)})/({render_poly(self.den, var)})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RatFunc{self.render()}"


def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if den.is_zero():
        raise ZeroDivisionError("division by zero in ℚ(t)")
    if num.is_zero():
        return num, ONE_POLY
    if not den.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num, den = num // g, den // g
    lc = den.lead
    if lc != 1:
        num, den = num * (1 / lc), den * (1 / lc)
    return num, den


def ratfunc_normalize(num: Poly, den: Poly) -> RatFunc:
    """Canonical representative of ``num/den``."""
    return RatFunc(num, den)


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.from_scalar(x)
    if isinstance(x, Poly):
        return RatFunc(x, ONE_POLY, _canonical=True)
    return NotImplemented


def ratfunc(x) -> RatFunc:
    """Lift an int, Fraction, Poly or RatFunc into Q(t)."""
    out = _coerce(x)
    if out is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(t)")
    return out


ZERO = RatFunc.from_scalar(0)
ONE = RatFunc.from_scalar(1)
