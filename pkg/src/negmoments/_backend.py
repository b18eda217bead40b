"""Exact rational arithmetic backend.

The moment engine multiplies and reduces rationals whose numerators grow to
hundreds of digits, so the hot kernels are really GMP workloads. When gmpy2
is importable we use ``gmpy2.mpq`` (compiled, GMP-backed); otherwise we fall
back to ``fractions.Fraction``. Both expose the same arithmetic surface
(operators plus ``.numerator``/``.denominator``) and keep every value as a
reduced fraction with positive denominator.

Set ``NEGMOMENTS_PURE_RATIONAL=1`` to force the pure-Python backend. The
benchmark script under ``benchmarks/`` uses this to compare the two.
"""

from __future__ import annotations

import os
from fractions import Fraction

__all__ = ["BACKEND", "rational", "as_fraction", "format_rational", "parse_rational"]


def _select():
    if os.environ.get("NEGMOMENTS_PURE_RATIONAL", "") not in ("", "0"):
        return Fraction, "fractions"
    try:
        from gmpy2 import mpq
    except ImportError:
        return Fraction, "fractions"
    return mpq, "gmpy2"


#: Rational constructor: ``rational(num, den=1)``.
rational, BACKEND = _select()

#: Cached zero/one, shared by the ring code.
ZERO = rational(0)
ONE = rational(1)


def as_fraction(x) -> Fraction:
    """Convert a backend rational (or any ``numbers.Rational``) to Fraction."""
    return Fraction(int(x.numerator), int(x.denominator))


def format_rational(x) -> str:
    """Serialize a rational as ``"num/den"`` (reduced, positive denominator)."""
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str):
    """Inverse of :func:`format_rational`; bare integers are accepted too."""
    num, _, den = text.partition("/")
    if den:
        return rational(int(num), int(den))
    return rational(int(num))
