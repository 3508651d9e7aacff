"""Dense univariate polynomials over the rationals."""
from functools import reduce
from math import gcd, lcm

from ..errors import InvalidInput
from .rational import ONE, ZERO, rational, format_rational


def _trim(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class RationalPolynomial:
    """Immutable polynomial; ``coeffs`` are mpq, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, RationalPolynomial):
            self.coeffs = coeffs.coeffs
            return
        self.coeffs = _trim([rational(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs):
        obj = cls.__new__(cls)
        obj.coeffs = _trim(coeffs)
        return obj

    @classmethod
    def x(cls):
        return cls._raw((ZERO, ONE))

    @classmethod
    def constant(cls, c):
        return cls._raw((rational(c),))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalPolynomial):
            return other
        try:
            return RationalPolynomial._raw((rational(other),))
        except InvalidInput:
            return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RationalPolynomial._raw(())
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return RationalPolynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InvalidInput("negative power of a polynomial")
        result = RationalPolynomial._raw((ONE,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented or other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = ONE / other.leading
        if len(rem) - 1 < db:
            return RationalPolynomial._raw(()), self
        quo = [ZERO] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv_lead
            quo[k] = c
            if c:
                for j in range(db + 1):
                    rem[k + j] -= c * bc[j]
        return RationalPolynomial._raw(quo), RationalPolynomial._raw(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Horner evaluation; ``x`` may be any ring element supporting * and +."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return x * 0
        return acc

    def monic(self):
        if self.is_zero():
            return self
        inv = ONE / self.leading
        return RationalPolynomial._raw([c * inv for c in self.coeffs])

    def derivative(self):
        return RationalPolynomial._raw([c * i for i, c in enumerate(self.coeffs)][1:])

    def gcd(self, other):
        """Monic gcd (zero if both are zero)."""
        a, b = self, self._coerce(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree_part(self):
        if self.degree < 1:
            return self.monic()
        g = self.gcd(self.derivative())
        return (self // g).monic()

    def is_squarefree(self):
        return self.degree < 1 or self.gcd(self.derivative()).degree == 0

    def integer_coefficients(self):
        """Primitive integer multiple with positive leading coefficient."""
        if self.is_zero():
            return []
        den = reduce(lcm, (int(c.denominator) for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        content = reduce(gcd, ints, 0)
        ints = [c // content for c in ints]
        if ints[-1] < 0:
            ints = [-c for c in ints]
        return ints

    def to_strings(self):
        return [format_rational(c) for c in self.coeffs]

    def __repr__(self):
        return f"RationalPolynomial({self.to_strings()!r})"

    def __str__(self):
        return self.pretty("X")

    def pretty(self, var="X"):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


X = RationalPolynomial.x()
