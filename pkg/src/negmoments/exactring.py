"""Exact arithmetic over rational-coefficient polynomials in sqrt(pi).

Half-integer Gamma values are rational multiples of sqrt(pi), so every
analytic moment computed by this package lives in the graded ring
Q[sqrt(pi)]. This module provides the ring (monomials and polynomials with
no rounding, ever), the half-integer Gamma function and its reciprocal, and
arbitrary-precision floating evaluation of ring elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

from mpmath import mp

from ._backend import ONE, ZERO, format_rational, rational

__all__ = [
    "PoleError",
    "HalfInteger",
    "SqrtPiMonomial",
    "SqrtPiPolynomial",
    "Precision",
    "gamma_half",
    "reciprocal_gamma_half",
    "eval_float",
]

HalfIntLike = Union["HalfInteger", int, Fraction, float]


class PoleError(ValueError):
    """Gamma evaluated at a nonpositive integer."""


@dataclass(frozen=True)
class HalfInteger:
    """An element of (1/2)Z, stored as twice its value."""

    twice: int

    @classmethod
    def of(cls, value: HalfIntLike) -> "HalfInteger":
        if isinstance(value, HalfInteger):
            return value
        if isinstance(value, int):
            return cls(2 * value)
        doubled = Fraction(value.numerator, value.denominator) * 2 if isinstance(value, Fraction) else Fraction(value) * 2
        if doubled.denominator != 1:
            raise ValueError(f"{value!r} is not an integer or half-integer")
        return cls(int(doubled))

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __add__(self, n: int) -> "HalfInteger":
        return HalfInteger(self.twice + 2 * n)

    def __str__(self) -> str:
        return str(self.twice // 2) if self.is_integer else f"{self.twice}/2"


def _coerce_rational(value):
    if isinstance(value, float):
        raise TypeError("exact ring does not accept floats")
    return rational(value.numerator, value.denominator) if not isinstance(value, int) else rational(value)


@dataclass(frozen=True)
class SqrtPiMonomial:
    """A single term coeff * sqrt(pi)**power with exact rational coeff.

    power may be negative for intermediates (reciprocal Gamma values); a zero
    coefficient is canonicalized to power 0 so that equality is structural.
    """

    coeff: object
    power: int = 0

    def __post_init__(self):
        coeff = _coerce_rational(self.coeff)
        power = self.power
        if coeff == 0:
            power = 0
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "power", power)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    def __mul__(self, other):
        if isinstance(other, SqrtPiMonomial):
            return SqrtPiMonomial(self.coeff * other.coeff, self.power + other.power)
        return SqrtPiMonomial(self.coeff * _coerce_rational(other), self.power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SqrtPiMonomial):
            if other.is_zero:
                raise ZeroDivisionError("division by zero monomial")
            return SqrtPiMonomial(self.coeff / other.coeff, self.power - other.power)
        return SqrtPiMonomial(self.coeff / _coerce_rational(other), self.power)

    def __neg__(self):
        return SqrtPiMonomial(-self.coeff, self.power)

    def __add__(self, other: "SqrtPiMonomial") -> "SqrtPiMonomial":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.power != other.power:
            raise ValueError("cannot add monomials of different grade; use SqrtPiPolynomial")
        return SqrtPiMonomial(self.coeff + other.coeff, self.power)

    def to_polynomial(self) -> "SqrtPiPolynomial":
        return SqrtPiPolynomial.from_monomial(self)


class SqrtPiPolynomial:
    """Finite map degree -> rational coefficient of sqrt(pi)**degree.

    Degrees are nonnegative integers, zero coefficients are never stored, and
    all arithmetic is exact.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        cleaned = {}
        if coeffs:
            for degree, value in coeffs.items():
                if degree < 0:
                    raise ValueError("polynomial degrees must be nonnegative")
                value = _coerce_rational(value)
                if value != 0:
                    cleaned[int(degree)] = value
        self._coeffs = cleaned

    @classmethod
    def zero(cls) -> "SqrtPiPolynomial":
        return cls()

    @classmethod
    def from_scalar(cls, value) -> "SqrtPiPolynomial":
        return cls({0: value})

    @classmethod
    def from_monomial(cls, mono: SqrtPiMonomial) -> "SqrtPiPolynomial":
        if mono.is_zero:
            return cls()
        if mono.power < 0:
            raise ValueError("negative grade cannot enter a polynomial")
        return cls({mono.power: mono.coeff})

    def coefficient(self, degree: int):
        return self._coeffs.get(degree, ZERO)

    def degrees(self):
        return sorted(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, SqrtPiPolynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, SqrtPiMonomial):
            return self == other.to_polynomial()
        if isinstance(other, (int, Fraction)):
            return self == SqrtPiPolynomial.from_scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.items()))

    def __add__(self, other) -> "SqrtPiPolynomial":
        other = _as_poly(other)
        merged = dict(self._coeffs)
        for degree, value in other._coeffs.items():
            merged[degree] = merged.get(degree, ZERO) + value
        return SqrtPiPolynomial(merged)

    __radd__ = __add__

    def __neg__(self) -> "SqrtPiPolynomial":
        return SqrtPiPolynomial({d: -v for d, v in self._coeffs.items()})

    def __sub__(self, other) -> "SqrtPiPolynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "SqrtPiPolynomial":
        return _as_poly(other) + (-self)

    def __mul__(self, other) -> "SqrtPiPolynomial":
        if isinstance(other, (int, Fraction)) or type(other) is type(ONE):
            scalar = _coerce_rational(other)
            return SqrtPiPolynomial({d: v * scalar for d, v in self._coeffs.items()})
        other = _as_poly(other)
        product: dict[int, object] = {}
        for d1, v1 in self._coeffs.items():
            for d2, v2 in other._coeffs.items():
                key = d1 + d2
                product[key] = product.get(key, ZERO) + v1 * v2
        return SqrtPiPolynomial(product)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "SqrtPiPolynomial":
        scalar = _coerce_rational(scalar)
        return SqrtPiPolynomial({d: v / scalar for d, v in self._coeffs.items()})

    def __repr__(self) -> str:
        if not self._coeffs:
            return "SqrtPiPolynomial(0)"
        body = " + ".join(f"({v})*sqrtpi^{d}" for d, v in self.items())
        return f"SqrtPiPolynomial({body})"

    def coeff_strings(self) -> dict[str, str]:
        """Degree -> "num/den" map, the JSON wire form."""
        return {str(d): format_rational(v) for d, v in self.items()}

    def evaluate_mpf(self, bits: int):
        """Evaluate at sqrt(pi) with the given working precision (mpmath)."""
        with mp.workprec(bits):
            sqrtpi = mp.sqrt(mp.pi)
            total = mp.mpf(0)
            for degree, value in self.items():
                total += mp.mpf(int(value.numerator)) / mp.mpf(int(value.denominator)) * sqrtpi**degree
            return total

    def evaluate(self, precision: "Precision | None" = None) -> float:
        bits = precision.bits if precision is not None else DEFAULT_PRECISION.bits
        return float(self.evaluate_mpf(bits))


def _as_poly(value) -> SqrtPiPolynomial:
    if isinstance(value, SqrtPiPolynomial):
        return value
    if isinstance(value, SqrtPiMonomial):
        return value.to_polynomial()
    return SqrtPiPolynomial.from_scalar(value)


@dataclass(frozen=True)
class Precision:
    """Working precision (bits) for floating evaluation; at least 53."""

    bits: int = 256

    def __post_init__(self):
        if self.bits < 53:
            raise ValueError("precision must be at least 53 bits")

    def doubled(self) -> "Precision":
        return Precision(self.bits * 2)


DEFAULT_PRECISION = Precision(256)


def eval_float(poly: SqrtPiPolynomial, precision: Precision = DEFAULT_PRECISION) -> float:
    """Evaluate sum coeff_d * sqrt(pi)**d as a float.

    The result error is bounded by 2**(4 - precision.bits) times the number
    of terms times the largest term magnitude.
    """
    return poly.evaluate(precision)


@lru_cache(maxsize=None)
def _gamma_half_twice(twice: int) -> SqrtPiMonomial:
    if twice % 2 == 0:
        n = twice // 2
        if n <= 0:
            raise PoleError(f"Gamma pole at {n}")
        return SqrtPiMonomial(math.factorial(n - 1), 0)
    m = (twice - 1) // 2  # argument is m + 1/2
    if m >= 0:
        # Gamma(1/2) = sqrt(pi), then Gamma(x+1) = x Gamma(x) upward.
        num = 1
        for i in range(m):
            num *= 2 * i + 1
        return SqrtPiMonomial(rational(num, 2**m), 1)
    # Downward recurrence: Gamma(1/2 - s) = (-4)**s s! / (2s)! * sqrt(pi).
    s = -m
    return SqrtPiMonomial(rational((-4) ** s * math.factorial(s), math.factorial(2 * s)), 1)


def gamma_half(h: HalfIntLike) -> SqrtPiMonomial:
    """Gamma at an integer or half-integer argument, exactly.

    Integer n >= 1 gives (n-1)!; half-odd arguments give a rational multiple
    of sqrt(pi) via the Gamma(x+1) = x Gamma(x) recurrence run in either
    direction from Gamma(1/2). Raises PoleError at integers <= 0.
    """
    return _gamma_half_twice(HalfInteger.of(h).twice)


@lru_cache(maxsize=None)
def _reciprocal_gamma_half_twice(twice: int) -> SqrtPiMonomial:
    if twice % 2 == 0 and twice <= 0:
        return SqrtPiMonomial(0, 0)
    g = _gamma_half_twice(twice)
    return SqrtPiMonomial(ONE / g.coeff, -g.power)


def reciprocal_gamma_half(h: HalfIntLike) -> SqrtPiMonomial:
    """1/Gamma at an integer or half-integer argument; total.

    Returns exact zero at the Gamma poles (integers <= 0), which is what
    truncates the integer-weight sums downstream. Half-odd arguments come
    back with sqrt(pi) power -1.
    """
    return _reciprocal_gamma_half_twice(HalfInteger.of(h).twice)
