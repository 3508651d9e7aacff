"""Exact rationals backed by gmpy2.mpq, with a strict string parser."""
import re
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

from ..errors import InvalidInput

Rational = type(mpq())
ZERO = mpq(0)
ONE = mpq(1)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def rational(value):
    """Convert ``value`` to an exact rational.

    Accepts ints, mpq/mpz, Fraction and strings of the form ``"p"`` or ``"p/q"``.
    Floats are rejected on purpose.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise InvalidInput(f"not a rational: {value!r}")
    if isinstance(value, int) or isinstance(value, type(gmpy2.mpz())):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if not match:
            raise InvalidInput(f"malformed rational {value!r}")
        num, den = match.group(1), match.group(2)
        if den is not None and int(den) == 0:
            raise InvalidInput(f"zero denominator in {value!r}")
        return mpq(int(num), int(den) if den else 1)
    raise InvalidInput(f"not a rational: {value!r}")


def format_rational(q) -> str:
    q = rational(q)
    return str(q)


def is_square_rational(q) -> bool:
    q = rational(q)
    if q < 0:
        return False
    return gmpy2.is_square(q.numerator) and gmpy2.is_square(q.denominator)


def sqrt_rational(q):
    """Exact square root of a rational square, else None."""
    if not is_square_rational(q):
        return None
    return mpq(gmpy2.isqrt(q.numerator), gmpy2.isqrt(q.denominator))
