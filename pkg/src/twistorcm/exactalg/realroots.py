"""Sturm sequences, real-root isolation and certified sign evaluation."""
from dataclasses import dataclass, field
from typing import List, Tuple

from ..errors import IdenticallyZero, InvalidInput, PrecisionExhausted
from .poly import RationalPolynomial
from .rational import ONE, ZERO, Rational, rational

DEFAULT_PRECISION_BITS = 128
DEFAULT_PRECISION_CAP = 4096

_precision_cap = DEFAULT_PRECISION_CAP


def set_precision_cap(bits: int) -> None:
    """Process-wide cap for every interval/numeric precision doubling loop."""
    global _precision_cap
    if bits < DEFAULT_PRECISION_BITS:
        raise InvalidInput(f"precision cap must be at least {DEFAULT_PRECISION_BITS} bits")
    _precision_cap = int(bits)


def precision_cap() -> int:
    return _precision_cap


def sturm_sequence(f: RationalPolynomial):
    seq = [f, f.derivative()]
    while seq[-1].degree > 0:
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        # positive rescaling keeps sign changes and tames coefficient growth
        seq.append(r * (ONE / abs(r.leading)))
    return seq


def _sign(x):
    return (x > 0) - (x < 0)


def sign_changes(seq, x) -> int:
    signs = [s for s in (_sign(p(x)) for p in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def cauchy_bound(f: RationalPolynomial):
    lead = abs(f.leading)
    return ONE + max((abs(c) / lead for c in f.coeffs[:-1]), default=ZERO)


@dataclass(frozen=True)
class RealRootCertificate:
    """Real roots of a squarefree polynomial, isolated in disjoint intervals.

    Each interval (lo, hi) has lo < hi, f(lo) and f(hi) nonzero of opposite
    sign, and contains exactly one root; a degenerate interval lo == hi is an
    exact rational root.
    """
    polynomial: RationalPolynomial
    count: int
    isolating_intervals: Tuple[Tuple[Rational, Rational], ...]
    _refinements: dict = field(default_factory=dict, compare=False, repr=False)

    def at_precision(self, bits: int):
        """Intervals refined to width 2^-bits (memoized)."""
        ivs = self._refinements.get(bits)
        if ivs is None:
            width = ONE / (1 << bits)
            ivs = tuple(self.refine(i, width) for i in range(self.count))
            self._refinements[bits] = ivs
        return ivs

    def refine(self, index: int, width) -> Tuple[Rational, Rational]:
        """Shrink interval ``index`` by bisection until hi - lo <= width."""
        return refine_interval(self.polynomial, *self.isolating_intervals[index], width)

    def refined(self, width) -> "RealRootCertificate":
        ivs = tuple(self.refine(i, width) for i in range(self.count))
        return RealRootCertificate(self.polynomial, self.count, ivs)


def refine_interval(f, lo, hi, width):
    width = rational(width)
    if lo == hi:
        return lo, hi
    slo = _sign(f(lo))
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = _sign(f(mid))
        if sm == 0:
            return mid, mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def count_real_roots(f) -> RealRootCertificate:
    """Isolate the real roots of ``f`` (taken squarefree first)."""
    f = RationalPolynomial(f)
    if f.is_zero():
        raise InvalidInput("zero polynomial has infinitely many roots")
    f = f.squarefree_part()
    if f.degree < 1:
        return RealRootCertificate(f, 0, ())
    seq = sturm_sequence(f)
    bound = cauchy_bound(f)
    intervals = []
    stack = [(-bound, bound, sign_changes(seq, -bound), sign_changes(seq, bound))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            intervals.append((lo, hi))
            continue
        mid = _split_point(f, lo, hi)
        vmid = sign_changes(seq, mid)
        stack.append((mid, hi, vmid, vhi))
        stack.append((lo, mid, vlo, vmid))
    intervals.sort()
    return RealRootCertificate(f, len(intervals), tuple(intervals))


def _split_point(f, lo, hi):
    # a point strictly inside (lo, hi) that is not itself a root
    k = 2
    while True:
        for num in range(1, k, 2):
            mid = lo + (hi - lo) * num / k
            if f(mid):
                return mid
        k *= 2


def interval_horner(coeffs, lo, hi):
    """Exact enclosure of a polynomial's range over [lo, hi] (naive interval Horner)."""
    acc_lo = acc_hi = ZERO
    first = True
    for c in reversed(coeffs):
        if first:
            acc_lo = acc_hi = c
            first = False
            continue
        prods = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
        acc_lo = min(prods) + c
        acc_hi = max(prods) + c
    return acc_lo, acc_hi


def _round_down(q, bits):
    scale = 1 << bits
    num = (q.numerator * scale) // q.denominator
    return rational(int(num)) / scale


def _round_up(q, bits):
    scale = 1 << bits
    num = -((-q.numerator * scale) // q.denominator)
    return rational(int(num)) / scale


def certified_signs(cert: RealRootCertificate, e_coeffs, start_bits=DEFAULT_PRECISION_BITS,
                    cap_bits=None) -> List[int]:
    """Sign of the polynomial ``e_coeffs`` at each isolated root of ``cert``.

    The caller must already know the value is nonzero at every root (exact
    test); intervals are refined and endpoints rounded outward to dyadic
    rationals of the working precision, doubling the precision until the
    enclosure excludes zero.
    """
    cap_bits = cap_bits or _precision_cap
    signs = []
    for index in range(cert.count):
        bits = start_bits
        while True:
            lo, hi = cert.at_precision(bits)[index]
            if lo == hi:
                signs.append(_sign(sum((c * lo ** k for k, c in enumerate(e_coeffs)), ZERO)))
                break
            elo, ehi = interval_horner(e_coeffs, _round_down(lo, bits), _round_up(hi, bits))
            if elo > 0:
                signs.append(1)
                break
            if ehi < 0:
                signs.append(-1)
                break
            if elo == ehi == 0:
                signs.append(0)
                break
            if bits >= cap_bits:
                raise PrecisionExhausted(
                    f"sign undetermined at {cap_bits} bits of interval precision")
            bits *= 2
    return signs


def certified_sign_at_real_embeddings(e, cap_bits=None) -> List[int]:
    """Signs of a field element at every real embedding of its parent field.

    Exact zero is detected first and signalled by ``IdenticallyZero``; the
    list order matches the increasing order of the real roots of the modulus.
    """
    if e.is_zero():
        raise IdenticallyZero("element is exactly zero")
    signs = certified_signs(e.parent.real_root_certificate, e.coeffs, cap_bits=cap_bits)
    if 0 in signs:
        raise AssertionError("nonzero element vanished at a real embedding")
    return signs
