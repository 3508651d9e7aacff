"""Field embeddings, square roots in number fields, and absolute fields of
relative quadratic extensions."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import mpmath

from ..errors import InvalidInput, NotAFieldExtension, PrecisionExhausted
from .linalg import Echelon, inverse
from .numberfield import FieldElement, NumberField
from .poly import RationalPolynomial
from .rational import ONE, ZERO, rational, sqrt_rational
from . import realroots


class FieldEmbedding:
    """Q-algebra map source -> target determined by the image of the generator."""

    def __init__(self, source: NumberField, target: NumberField, gen_image: FieldElement,
                 check: bool = True):
        gen_image = target(gen_image)
        if check and not source.modulus(gen_image).is_zero():
            raise InvalidInput("generator image is not a root of the source modulus")
        self.source = source
        self.target = target
        self.gen_image = gen_image
        powers = []
        p = target.one()
        for _ in range(source.degree):
            powers.append(p.coeffs)
            p = p * gen_image
        self._powers = powers

    def __call__(self, e) -> FieldElement:
        e = self.source(e)
        out = [ZERO] * self.target.degree
        for c, row in zip(e.coeffs, self._powers):
            if c:
                for j, x in enumerate(row):
                    if x:
                        out[j] += c * x
        return FieldElement._raw(self.target, tuple(out))

    def compose(self, other: "FieldEmbedding") -> "FieldEmbedding":
        """self after other."""
        if other.target is not self.source:
            raise InvalidInput("embeddings do not compose")
        return FieldEmbedding(other.source, self.target, self(other.gen_image), check=False)


@dataclass(frozen=True)
class Extension:
    """Absolute field of base(beta) with beta^2 + c1*beta + c0 = 0."""
    field: NumberField
    base: NumberField
    base_embedding: FieldEmbedding
    root: FieldElement
    relation: Tuple[FieldElement, FieldElement]  # (c0, c1)

    def from_tower(self, u, v) -> FieldElement:
        """Image of u + v*beta for u, v in the base."""
        return self.base_embedding(u) + self.base_embedding(v) * self.root

    def other_root(self) -> FieldElement:
        return -self.base_embedding(self.relation[1]) - self.root


def _relation(base: NumberField, rel):
    rel = [base(c) for c in rel]
    if len(rel) == 3:
        if rel[2] != base.one():
            raise InvalidInput("relative polynomial must be monic")
        rel = rel[:2]
    if len(rel) != 2:
        raise InvalidInput("relative polynomial must be quadratic")
    return rel[0], rel[1]


def _certified_nonsquare_by_sign(e: FieldElement) -> bool:
    if e.parent.real_embedding_count == 0:
        return False
    return any(s < 0 for s in realroots.certified_sign_at_real_embeddings(e))


def recognize_rational(x, max_den):
    """Best rational approximation of a real mpf with bounded denominator."""
    x = mpmath.mpf(x)
    man, exp = x.man_exp
    f = Fraction(int(man)) * (Fraction(2) ** int(exp))
    if x < 0:
        f = -f
    return rational(f.limit_denominator(max_den))


def _legendre_nonsquare(e: FieldElement) -> bool:
    """True if some split prime certifies that e is not a square."""
    field = e.parent
    for p, roots in field.split_primes():
        if any(int(c.denominator) % p == 0 for c in e.coeffs):
            continue
        coeffs = [int(c.numerator) * pow(int(c.denominator), -1, p) % p for c in e.coeffs]
        for r in roots:
            v = 0
            for c in reversed(coeffs):
                v = (v * r + c) % p
            if v and pow(v, (p - 1) // 2, p) == p - 1:
                return True
    return False


def sqrt_in_field(e: FieldElement, cap_bits: Optional[int] = None) -> Optional[FieldElement]:
    """Exact square root of e inside its field, or None if e is not a square.

    Non-squares are certified by a quadratic non-residue at a split prime or
    by a negative real embedding; squares are recognized numerically from the
    embeddings and then verified exactly.
    """
    field = e.parent
    if e.is_zero():
        return field.zero()
    if field.degree == 1:
        r = sqrt_rational(e.coeffs[0])
        return None if r is None else field(r)
    if _certified_nonsquare_by_sign(e) or _legendre_nonsquare(e):
        return None
    cap = cap_bits or realroots.precision_cap()
    n = field.degree
    nreal = field.real_embedding_count
    places = nreal + (n - nreal) // 2
    bits = realroots.DEFAULT_PRECISION_BITS
    while True:
        roots = field.numeric_roots(bits)
        with mpmath.workprec(bits + 32):
            vander = mpmath.matrix([[z ** k for k in range(n)] for z in roots])
            vals = [e.numeric(j, bits) for j in range(n)]
            base = [mpmath.sqrt(v) for v in vals]
            for mask in range(1 << (places - 1)):
                y = []
                for place in range(places):
                    s = -1 if (mask >> place) & 1 else 1
                    if place < nreal:
                        y.append(s * base[place])
                    else:
                        j = nreal + 2 * (place - nreal)
                        y.append(s * base[j])
                        y.append(mpmath.conj(s * base[j]))
                try:
                    c = mpmath.lu_solve(vander, mpmath.matrix(y))
                except ZeroDivisionError:
                    continue
                coeffs = [recognize_rational(mpmath.re(c[k]), 1 << (bits // 3)) for k in range(n)]
                cand = field(coeffs)
                if cand * cand == e:
                    return cand
        if bits >= cap:
            raise PrecisionExhausted(
                f"square root not recognized within {cap} bits (Legendre tests inconclusive)")
        bits *= 2


def _tower_mul(a, b, c0, c1):
    u1, v1 = a
    u2, v2 = b
    vv = v1 * v2
    return (u1 * u2 - c0 * vv, u1 * v2 + u2 * v1 - c1 * vv)


def compose_extension(base: NumberField, rel: Sequence, name: str = "theta",
                      split_check: bool = True) -> Extension:
    """Absolute field of base[t]/(t^2 + c1 t + c0), ``rel`` = (c0, c1[, 1]).

    Raises NotAFieldExtension carrying both roots when the quadratic splits.
    """
    c0, c1 = _relation(base, rel)
    disc = c1 * c1 - c0 * 4
    if split_check:
        s = sqrt_in_field(disc)
        if s is not None:
            roots = ((-c1 + s) / 2, (-c1 - s) / 2)
            raise NotAFieldExtension("relative quadratic splits over the base", roots)
    n = base.degree
    alpha = base.gen()
    beta = (base.zero(), base.one())
    for k in range(0, 64):
        theta = (alpha * k, base.one())
        rows = []
        ech = Echelon(2 * n, track=True)
        power = (base.one(), base.zero())
        minpoly = None
        for j in range(2 * n + 1):
            vec = list(power[0].coeffs) + list(power[1].coeffs)
            tag = [ZERO] * (2 * n + 1)
            tag[j] = ONE
            red, image = ech.reduce(vec, tag)
            if not any(red):
                minpoly = RationalPolynomial(image).monic()
                break
            ech.add(red, image)
            rows.append(vec)
            power = _tower_mul(power, theta, c0, c1)
        if minpoly is not None and minpoly.degree == 2 * n:
            break
    else:
        raise AssertionError("no primitive element of the form beta + k*alpha")
    # minimal polynomial of a field element of degree [L:Q] is irreducible
    field = NumberField(minpoly, name=name, check=False)
    pinv = inverse(rows)

    def absolute(u, v):
        t = list(u.coeffs) + list(v.coeffs)
        c = [sum((t[i] * pinv[i][j] for i in range(2 * n) if t[i]), ZERO) for j in range(2 * n)]
        return field(c)

    alpha_image = absolute(alpha, base.zero())
    root = absolute(*beta)
    embedding = FieldEmbedding(base, field, alpha_image)
    ext = Extension(field, base, embedding, root, (c0, c1))
    if not (root * root + embedding(c1) * root + embedding(c0)).is_zero():
        raise AssertionError("adjoined root fails its relation")
    return ext


def rational_field() -> NumberField:
    return NumberField([0, 1], name="q")
