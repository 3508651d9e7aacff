"""Irreducibility over Q: rational-root test, modular degree sieve, and an
exact factorization fallback for sieve-inconclusive inputs."""

import sympy

from ..errors import InvalidInput
from . import modp
from .poly import RationalPolynomial

_SIEVE_PRIMES = modp.primes(40, start=2)


def _divisors(n, limit=10 ** 7):
    n = abs(n)
    if n > limit:
        return None
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def has_rational_root(ints):
    """Rational root test on a primitive integer polynomial (None if too costly)."""
    if ints[0] == 0:
        return True
    ps = _divisors(ints[0])
    qs = _divisors(ints[-1])
    if ps is None or qs is None:
        return None
    poly = RationalPolynomial(ints)
    from .rational import rational
    for q in qs:
        for p in ps:
            for s in (p, -p):
                if not poly(rational(s) / q):
                    return True
    return False


def _subset_sums(degrees):
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def modular_degree_sieve(ints, primes=_SIEVE_PRIMES):
    """Possible degrees of rational factors compatible with the factorization
    patterns modulo several primes.  {0, n} certifies irreducibility."""
    n = len(ints) - 1
    possible = set(range(n + 1))
    for p in primes:
        if ints[-1] % p == 0:
            continue
        fp = modp.reduce_mod(ints, p)
        if not modp.is_squarefree(fp, p):
            continue
        possible &= _subset_sums(modp.distinct_degree_degrees(fp, p))
        if possible <= {0, n}:
            break
    return possible


def irreducible_over_rationals(f) -> bool:
    f = RationalPolynomial(f)
    if f.is_zero():
        raise InvalidInput("zero polynomial has no irreducibility status")
    if f.degree < 1:
        raise InvalidInput("constant polynomial has no irreducibility status")
    if f.degree == 1:
        return True
    ints = f.integer_coefficients()
    root = has_rational_root(ints)
    if root:
        return False
    if f.degree <= 3 and root is False:
        return True
    if not f.is_squarefree():
        return False
    possible = modular_degree_sieve(ints)
    if possible <= {0, f.degree}:
        return True
    x = sympy.Symbol("x")
    _, factors = sympy.Poly(list(reversed(ints)), x, domain="ZZ").factor_list()
    return len(factors) == 1 and factors[0][1] == 1
