"""Number parsing, tolerant comparison and canonical formatting.

Exact mode works over :class:`fractions.Fraction` and compares with tolerance 0.
Float mode uses Python floats and a global tolerance of ``FLOAT_TOL``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Number = Union[Fraction, float]

FLOAT_TOL = 1e-9


def parse_number(value, exact: bool = True) -> Number:
    """Parse ``"p/q"``, an integer string, or an int into the active numeric type."""
    if isinstance(value, bool):
        raise ValueError(f"not a number: {value!r}")
    if exact:
        if isinstance(value, float):
            raise ValueError(f"exact mode needs integer or 'p/q' strings, got float {value!r}")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            text = value.strip()
            if "." in text or "e" in text.lower():
                raise ValueError(f"exact mode needs integer or 'p/q' strings, got {value!r}")
            return Fraction(text)
        raise ValueError(f"not a number: {value!r}")
    if isinstance(value, str):
        return float(Fraction(value.strip())) if "/" in value else float(value)
    if isinstance(value, (int, float, Fraction)):
        return float(value)
    raise ValueError(f"not a number: {value!r}")


def tolerance(values: Iterable[Number]) -> float:
    return FLOAT_TOL if any(isinstance(v, float) for v in values) else 0


def fmt(x: Number) -> str:
    """Canonical text: gcd-reduced ``p/q`` (or ``p``) for rationals, ``repr`` for floats."""
    if isinstance(x, float):
        return repr(x)
    return str(Fraction(x))


def div(a: Number, b: int) -> Number:
    if isinstance(a, float):
        return a / b
    return Fraction(a) / b
