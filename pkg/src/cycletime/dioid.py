"""Scalar arithmetic of the max-plus semifield and its min-plus dual.

Scalars are plain Python numbers. Finite values are ``int``, ``float`` or
``fractions.Fraction`` (the exact mode); the two infinite elements are the
float infinities ``NEG_INF`` (epsilon, the zero of max-plus) and ``POS_INF``
(top). IEEE arithmetic is never trusted at the infinities: every product is
decided by explicit case analysis, because the max-plus product and its dual
disagree exactly when the operands are infinities of opposite sign.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational, Real

import numpy as np

from .errors import InvalidArgumentError

NEG_INF = -math.inf
POS_INF = math.inf

EPSILON = NEG_INF
UNIT = 0
TOP = POS_INF

Scalar = Real


def is_finite(a: Scalar) -> bool:
    return a != POS_INF and a != NEG_INF


def oplus(a: Scalar, b: Scalar) -> Scalar:
    """Max-plus addition (maximum)."""
    return a if a >= b else b


def dual_oplus(a: Scalar, b: Scalar) -> Scalar:
    """Dual addition (minimum, greatest lower bound)."""
    return a if a <= b else b


def otimes(a: Scalar, b: Scalar) -> Scalar:
    """Max-plus multiplication; ``-inf`` absorbs everything, including ``+inf``."""
    if a == NEG_INF or b == NEG_INF:
        return NEG_INF
    if a == POS_INF or b == POS_INF:
        return POS_INF
    return a + b


def dual_otimes(a: Scalar, b: Scalar) -> Scalar:
    """Dual product; ``+inf`` absorbs everything, including ``-inf``."""
    if a == POS_INF or b == POS_INF:
        return POS_INF
    if a == NEG_INF or b == NEG_INF:
        return NEG_INF
    return a + b


def inverse(a: Scalar) -> Scalar:
    if not is_finite(a):
        raise InvalidArgumentError(f"{format_scalar(a)} has no multiplicative inverse")
    return -a


def leq(a: Scalar, b: Scalar) -> bool:
    """Order induced by max: ``a <= b`` iff ``a (+) b == b``."""
    return oplus(a, b) == b


def to_exact(a: Scalar) -> Scalar:
    """Exact value of ``a``: ``int`` when integral (much faster in object
    arrays), ``Fraction`` otherwise; infinities stay as they are."""
    if not is_finite(a):
        return a
    if isinstance(a, int):
        return a
    q = a if isinstance(a, Fraction) else Fraction(a)
    return int(q.numerator) if q.denominator == 1 else q


def normalize(a: Scalar) -> Scalar:
    """Collapse integral fractions to ``int`` (for display and JSON) and
    numpy scalars to Python ones."""
    if isinstance(a, np.generic):
        a = a.item()
    if isinstance(a, Fraction) and a.denominator == 1:
        return int(a.numerator)
    if isinstance(a, float) and is_finite(a) and a.is_integer():
        return int(a)
    return a


def format_scalar(a: Scalar) -> str:
    """Render a scalar: integers plainly, rationals as ``p/q``, floats with
    up to 9 decimals, infinities as ``-inf``/``+inf``."""
    if a == NEG_INF:
        return "-inf"
    if a == POS_INF:
        return "+inf"
    a = normalize(a)
    if isinstance(a, int):
        return str(a)
    if isinstance(a, Rational):
        return f"{a.numerator}/{a.denominator}"
    text = f"{float(a):.9f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


_TOKENS = {
    "-inf": NEG_INF,
    "eps": NEG_INF,
    "+inf": POS_INF,
    "inf": POS_INF,
    "top": POS_INF,
    "e": 0,
}


def parse_scalar(token, exact: bool = False) -> Scalar:
    """Parse a scalar from a token (string or number).

    Accepts the rendering of :func:`format_scalar` plus ``e`` (0) and ``eps``
    (-inf). With ``exact=True`` finite values become exact (``int`` or
    ``Fraction``).
    """
    if isinstance(token, bool):
        raise InvalidArgumentError(f"not a scalar: {token!r}")
    if isinstance(token, str):
        key = token.strip().lower()
        if key in _TOKENS:
            value = _TOKENS[key]
        else:
            try:
                value = Fraction(key) if exact else _parse_number(key)
            except (ValueError, ZeroDivisionError):
                raise InvalidArgumentError(f"not a scalar: {token!r}") from None
    elif isinstance(token, Real):
        value = token
    else:
        raise InvalidArgumentError(f"not a scalar: {token!r}")
    if isinstance(value, float) and math.isnan(value):
        raise InvalidArgumentError("NaN is not a scalar")
    return to_exact(value) if exact else value


def _parse_number(text: str) -> Scalar:
    if "/" in text:
        return Fraction(text)
    try:
        return int(text)
    except ValueError:
        return float(text)
