"""Exact rational quantities with a distinguished infinity.

Capacities, demands, latencies and approximation factors are all kept as
:class:`fractions.Fraction`. Infinity is ``math.inf``; it compares correctly
against fractions and absorbs multiplication by positive factors.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

INF = math.inf

Rational = Union[Fraction, float]


def to_rational(value, *, allow_inf: bool = True) -> Rational:
    """Coerce ``value`` to a Fraction (or INF).

    Accepts ints, Fractions, ``"p/q"`` / decimal strings and ``"inf"``.
    Floats are only accepted when infinite; finite floats would smuggle
    binary rounding into the gadget arithmetic.
    """
    if isinstance(value, bool):
        raise TypeError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if math.isinf(value) and value > 0:
            if not allow_inf:
                raise ValueError("infinity not allowed here")
            return INF
        raise TypeError(f"finite floats are not exact rationals: {value!r}")
    if isinstance(value, str):
        text = value.strip()
        if text.lower() in ("inf", "infinity", "+inf"):
            if not allow_inf:
                raise ValueError("infinity not allowed here")
            return INF
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse rational {value!r}") from exc
    raise TypeError(f"not a rational: {value!r}")


def is_inf(value: Rational) -> bool:
    return isinstance(value, float) and math.isinf(value)


def format_rational(value: Rational) -> int | str:
    """JSON form: integers stay integers, others become ``"p/q"`` or ``"inf"``."""
    if is_inf(value):
        return "inf"
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def scale(factor: Fraction, value: Rational) -> Rational:
    """``factor * value`` keeping INF intact (factor is always >= 1 here)."""
    if is_inf(value):
        return INF
    return factor * value
