"""Number fields Q[X]/(f) with dense power-basis elements."""
from functools import cached_property, reduce
from typing import Optional

import gmpy2
import mpmath
from gmpy2 import mpq, mpz

from ..errors import InvalidInput
from . import modp
from .irreducible import irreducible_over_rationals
from .linalg import Echelon, solve, determinant
from .poly import RationalPolynomial
from .rational import ONE, ZERO, Rational, rational

_MPZ0 = mpz(0)


class NumberField:
    """Q[X]/(f) for a monic irreducible f.

    Fields are compared by identity: two elements may only be combined if they
    share the same parent object.
    """

    def __init__(self, modulus, name: str = "theta", check: bool = True):
        f = RationalPolynomial(modulus)
        if f.degree < 1:
            raise InvalidInput("modulus must have degree at least 1")
        f = f.monic()
        if check and not irreducible_over_rationals(f):
            raise InvalidInput(f"modulus {f} is reducible over Q")
        self.modulus = f
        self.degree = f.degree
        self.name = name
        n = self.degree
        # rows: X^k mod f for k = n .. 2n-2
        table = []
        cur = [-c for c in f.coeffs[:n]]
        for _ in range(max(n - 1, 0)):
            table.append(tuple(cur))
            top = cur[-1]
            cur = [ZERO] + cur[:-1]
            if top:
                cur = [c - top * fc for c, fc in zip(cur, f.coeffs[:n])]
        self._reduction = table
        self._reduction_nz = [tuple((j, c) for j, c in enumerate(row) if c) for row in table]
        # the integer kernel: reduction table over one common denominator R
        R = reduce(gmpy2.lcm, (c.denominator for row in table for c in row), mpz(1))
        self._reduction_den = R
        self._reduction_int = [tuple((j, (c * R).numerator) for j, c in row) for row in self._reduction_nz]
        self._zero = FieldElement._raw(self, (ZERO,) * n)
        self._one = FieldElement._raw(self, (ONE,) + (ZERO,) * (n - 1))

    def __repr__(self):
        return f"NumberField({self.modulus.pretty('X')})"

    # -- element construction -------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.parent is not self:
                raise InvalidInput("element belongs to a different field")
            return value
        if isinstance(value, RationalPolynomial):
            return self._from_poly(value)
        if isinstance(value, (list, tuple)):
            return self._from_poly(RationalPolynomial(value))
        q = rational(value)
        return FieldElement._raw(self, (q,) + (ZERO,) * (self.degree - 1))

    def _from_poly(self, p: RationalPolynomial):
        if p.degree >= self.degree:
            p = p % self.modulus
        coeffs = tuple(p.coeffs) + (ZERO,) * (self.degree - len(p.coeffs))
        return FieldElement._raw(self, coeffs)

    def gen(self) -> "FieldElement":
        if self.degree == 1:
            return self(-self.modulus.coeffs[0])
        return FieldElement._raw(self, (ZERO, ONE) + (ZERO,) * (self.degree - 2))

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def basis(self):
        n = self.degree
        return [FieldElement._raw(self, tuple(ONE if i == j else ZERO for i in range(n)))
                for j in range(n)]

    # -- arithmetic kernels ----------------------------------------------------
    def _mul(self, a, b):
        if self.degree > 2:
            return self._mul_int(a, b)
        n = self.degree
        prod = [ZERO] * (2 * n - 1)
        nzb = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if x:
                for j, y in nzb:
                    prod[i + j] += x * y
        out = prod[:n]
        red = self._reduction_nz
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                for j, rv in red[k - n]:
                    out[j] += c * rv
        return tuple(out)

    def _mul_int(self, a, b):
        n = self.degree
        da = reduce(gmpy2.lcm, (x.denominator for x in a))
        db = reduce(gmpy2.lcm, (x.denominator for x in b))
        A = [x.numerator * (da // x.denominator) for x in a]
        B = [(j, y.numerator * (db // y.denominator)) for j, y in enumerate(b) if y]
        prod = [_MPZ0] * (2 * n - 1)
        for i, x in enumerate(A):
            if x:
                for j, y in B:
                    prod[i + j] += x * y
        R = self._reduction_den
        out = prod[:n] if R == 1 else [c * R for c in prod[:n]]
        red = self._reduction_int
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                for j, rv in red[k - n]:
                    out[j] += c * rv
        den = da * db * R
        return tuple(mpq(c, den) for c in out)

    # -- invariants ------------------------------------------------------------
    @cached_property
    def power_traces(self):
        """Tr(X^k) for k < degree (Newton identities)."""
        n = self.degree
        e = [self.modulus.coeffs[n - 1 - i] for i in range(n)]  # a_{n-1}, ..., a_0
        p = []
        for k in range(1, n):
            s = -k * e[k - 1]
            for i in range(1, k):
                s -= e[i - 1] * p[k - i - 1]
            p.append(s)
        return [rational(n)] + p

    @cached_property
    def real_root_certificate(self):
        from .realroots import count_real_roots
        return count_real_roots(self.modulus)

    @property
    def real_embedding_count(self) -> int:
        return self.real_root_certificate.count

    def is_totally_real(self) -> bool:
        return self.real_embedding_count == self.degree

    def is_totally_imaginary(self) -> bool:
        return self.real_embedding_count == 0

    def numeric_roots(self, bits: int = 128):
        """All complex roots of the modulus: real ones ascending, then the
        complex ones in conjugate pairs (positive imaginary part first)."""
        cache = self.__dict__.setdefault("_root_cache", {})
        if bits in cache:
            return cache[bits]
        n = self.degree
        with mpmath.workprec(bits + 32):
            coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(self.modulus.coeffs)]
            if n == 1:
                roots = [mpmath.mpc(-coeffs[1])]
            else:
                roots = mpmath.polyroots(coeffs, maxsteps=200 + 20 * n, extraprec=bits + 2 * n * 16)
            nreal = self.real_embedding_count
            by_imag = sorted(roots, key=lambda z: abs(mpmath.im(z)))
            reals = sorted(mpmath.re(z) for z in by_imag[:nreal])
            cplx = [z for z in by_imag[nreal:] if mpmath.im(z) > 0]
            cplx.sort(key=lambda z: (mpmath.re(z), mpmath.im(z)))
            out = [mpmath.mpc(x) for x in reals]
            for z in cplx:
                out.extend([z, mpmath.conj(z)])
        cache[bits] = out
        return out

    def split_primes(self, count: int = 24, search_limit: int = 20000):
        """Primes p (not dividing denominators of f) modulo which f splits into
        distinct linear factors, with the roots of f mod p."""
        cache = self.__dict__.setdefault("_split_cache", [])
        if len(cache) >= count or self.__dict__.get("_split_exhausted"):
            return cache[:count]
        den = 1
        for c in self.modulus.coeffs:
            den = den * int(c.denominator) // _gcd(den, int(c.denominator))
        p = cache[-1][0] + 1 if cache else 3
        while len(cache) < count and p < search_limit:
            if _is_prime(p) and den % p:
                fp = [int(c.numerator) * pow(int(c.denominator), -1, p) % p for c in self.modulus.coeffs]
                rts = modp.roots(fp, p)
                if len(rts) == self.degree:
                    cache.append((p, tuple(rts)))
            p += 1
        if len(cache) < count:
            self._split_exhausted = True
        return cache[:count]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class FieldElement:
    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: NumberField, coeffs):
        elt = parent(list(coeffs))
        self.parent = parent
        self.coeffs = elt.coeffs

    @classmethod
    def _raw(cls, parent, coeffs):
        obj = cls.__new__(cls)
        obj.parent = parent
        obj.coeffs = coeffs
        return obj

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.parent is not self.parent:
                raise InvalidInput("elements of different fields")
            return other
        try:
            return self.parent(other)
        except InvalidInput:
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement._raw(self.parent, tuple(x + y for x, y in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._raw(self.parent, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement._raw(self.parent, tuple(x - y for x, y in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Rational, int)) and not isinstance(other, bool):
            q = rational(other)
            return FieldElement._raw(self.parent, tuple(x * q for x in self.coeffs))
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement._raw(self.parent, self.parent._mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (Rational, int)) and not isinstance(other, bool):
            q = rational(other)
            if not q:
                raise ZeroDivisionError("division by zero")
            return self * (ONE / q)
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.parent.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return other.parent is self.parent and other.coeffs == self.coeffs
        try:
            o = self.parent(other)
        except InvalidInput:
            return NotImplemented
        return o.coeffs == self.coeffs

    def __hash__(self):
        return hash((id(self.parent), self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise InvalidInput("element is not rational")
        return self.coeffs[0]

    def lift(self) -> RationalPolynomial:
        return RationalPolynomial._raw(self.coeffs)

    def matrix(self):
        """Matrix of multiplication by self on the power basis (column j = self * X^j)."""
        cols = []
        col = self.coeffs
        x = self.parent.gen().coeffs if self.parent.degree > 1 else None
        for j in range(self.parent.degree):
            cols.append(col)
            if x is not None:
                col = self.parent._mul(col, x)
        return [list(row) for row in zip(*cols)]

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n = self.parent.degree
        if self.is_rational():
            return self.parent(ONE / self.coeffs[0])
        rhs = [ONE] + [ZERO] * (n - 1)
        return FieldElement._raw(self.parent, tuple(solve(self.matrix(), rhs)))

    def trace(self):
        return sum((c * t for c, t in zip(self.coeffs, self.parent.power_traces) if c), ZERO)

    def norm(self):
        return determinant(self.matrix())

    def minimal_polynomial(self) -> RationalPolynomial:
        return minimal_polynomial(self)

    def numeric(self, index: int, bits: int = 128):
        """Value at the ``index``-th complex root (see NumberField.numeric_roots)."""
        z = self.parent.numeric_roots(bits)[index]
        with mpmath.workprec(bits + 32):
            acc = mpmath.mpc(0)
            for c in reversed(self.coeffs):
                acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
        return acc

    def to_strings(self):
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        return f"FieldElement({self.lift().pretty(self.parent.name)})"

    def __str__(self):
        return self.lift().pretty(self.parent.name)


def minimal_polynomial(e: FieldElement) -> RationalPolynomial:
    """First linear dependence among 1, e, e^2, ... (monic, irreducible)."""
    field = e.parent
    n = field.degree
    ech = Echelon(n, track=True)
    power = field.one()
    for k in range(n + 1):
        tag = [ZERO] * (n + 1)
        tag[k] = ONE
        reduced, image = ech.reduce(power.coeffs, tag)
        if not any(reduced):
            return RationalPolynomial(image).monic()
        ech.add(reduced, image)
        power = power * e
    raise AssertionError("no linear dependence among n+1 powers")
