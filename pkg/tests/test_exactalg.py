from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from twistorcm.errors import InvalidInput, NotAFieldExtension
from twistorcm.exactalg import (NumberField, RationalPolynomial, compose_extension, count_real_roots,
                                field_generated_by, irreducible_over_rationals, minimal_polynomial,
                                rational, signature, sqrt_in_field, certified_sign_at_real_embeddings)
from twistorcm.exactalg.linalg import determinant, inverse, mat_mul, identity, nullspace, mat_vec

T = sympy.Symbol("T")

small = st.integers(-6, 6)
coeff_lists = st.lists(small, min_size=1, max_size=6)


def as_sympy(p: RationalPolynomial):
    return sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator))
                       for c in reversed(p.coeffs)] or [0], T, domain="QQ")


def poly_from_sympy(q):
    return RationalPolynomial([rational(Fraction(int(c.p), int(c.q))) for c in reversed(q.all_coeffs())])


# -- rationals ---------------------------------------------------------------

def test_rational_rejects_floats_and_bad_strings():
    with pytest.raises(InvalidInput):
        rational(0.5)
    with pytest.raises(InvalidInput):
        rational("1/0")
    with pytest.raises(InvalidInput):
        rational("x")
    assert rational("-3/6") == rational(Fraction(-1, 2))


# -- polynomials against sympy ------------------------------------------------

@given(coeff_lists, coeff_lists)
def test_poly_ring_ops_match_sympy(a, b):
    p, q = RationalPolynomial(a), RationalPolynomial(b)
    assert as_sympy(p * q) == as_sympy(p) * as_sympy(q)
    assert as_sympy(p + q) == as_sympy(p) + as_sympy(q)
    if not q.is_zero():
        quo, rem = divmod(p, q)
        sq, sr = sympy.div(as_sympy(p), as_sympy(q))
        sq, sr = sq.set_domain("QQ"), sr.set_domain("QQ")
        assert as_sympy(quo) == sq and as_sympy(rem) == sr


@given(coeff_lists, coeff_lists)
def test_gcd_monic_matches_sympy(a, b):
    p, q = RationalPolynomial(a), RationalPolynomial(b)
    if p.is_zero() and q.is_zero():
        return
    g = p.gcd(q)
    expected = sympy.gcd(as_sympy(p), as_sympy(q)).monic().set_domain("QQ")
    assert as_sympy(g) == expected


@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=2, max_size=6).filter(lambda c: c[-1] != 0))
def test_irreducibility_matches_sympy(c):
    p = RationalPolynomial(c)
    expected = sympy.Poly(list(reversed(c)), T).is_irreducible
    assert irreducible_over_rationals(p) == expected


# -- number fields -----------------------------------------------------------

ZETA5 = [1, 1, 1, 1, 1]
FIELDS = [[1, 0, 1], [1, 1, 1], ZETA5, [1, 0, 0, 0, 1], [1, 0, 3, 0, 1], [2, 0, 4, 0, 1]]


def test_reducible_modulus_rejected():
    with pytest.raises(InvalidInput):
        NumberField([-1, 0, 1])


@pytest.mark.parametrize("mod", FIELDS)
def test_field_axioms_and_inverse(mod):
    K = NumberField(mod)
    t = K.gen()
    x = t * 3 + t ** 2 - 1
    y = t ** 3 - t * 2 + 5 if K.degree > 2 else t + 7
    assert x * x.inverse() == K.one()
    assert (x + y) * y == x * y + y * y
    assert x / y * y == x


RATIONAL_MODULI = [[Fraction(1, 3), 0, 0, 0, 1], [Fraction(5, 4), Fraction(-1, 2), Fraction(7, 6), 0, 1]]
fractions = st.fractions(min_value=-9, max_value=9, max_denominator=12)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([m for m in FIELDS if len(m) > 3] + RATIONAL_MODULI), st.data())
def test_integer_kernel_matches_rational_product(mod, data):
    # the integer multiplication path against the remainder of the plain product
    K = NumberField([rational(c) for c in mod])
    a, b = (data.draw(st.lists(fractions, min_size=K.degree, max_size=K.degree)) for _ in range(2))
    x, y = K([rational(c) for c in a]), K([rational(c) for c in b])
    got = (x * y).coeffs
    X = sympy.Symbol("X")
    pa, pb = (sympy.Poly(list(reversed(c)), X, domain="QQ") for c in (a, b))
    rem = (pa * pb).rem(sympy.Poly([sympy.Rational(c) for c in reversed(mod)], X, domain="QQ"))
    want = list(reversed(rem.all_coeffs())) if not rem.is_zero else []
    want += [0] * (K.degree - len(want))
    assert [Fraction(int(c.numerator), int(c.denominator)) for c in got] == \
        [Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in want]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FIELDS), st.lists(small, min_size=1, max_size=4))
def test_minimal_polynomial_matches_sympy(mod, coeffs):
    K = NumberField(mod)
    e = K(coeffs[:K.degree])
    f = minimal_polynomial(e)
    # oracle: the characteristic polynomial of multiplication by e is a power
    # of the minimal polynomial; sympy factors it
    M = sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in row]
                      for row in e.matrix()])
    factors = sympy.factor_list(M.charpoly(T).as_expr(), T)[1]
    assert len(factors) == 1
    expected = sympy.Poly(factors[0][0], T).monic().set_domain("QQ")
    assert as_sympy(f) == expected


@pytest.mark.parametrize("mod", FIELDS)
def test_trace_and_norm_against_embeddings(mod):
    K = NumberField(mod)
    e = K.gen() * 2 + 1
    roots = mpmath.polyroots(list(reversed(mod)), maxsteps=200, extraprec=200)
    vals = [2 * z + 1 for z in roots]
    assert abs(float(e.trace()) - float(mpmath.re(sum(vals)))) < 1e-9
    prod = mpmath.mpf(1)
    for v in vals:
        prod *= v
    assert abs(float(e.norm()) - float(mpmath.re(prod))) < 1e-9


def test_sqrt_in_field():
    K = NumberField(ZETA5)
    t = K.gen()
    x = t ** 2 + t * 3 - 2
    s = sqrt_in_field(x * x)
    assert s is not None and s * s == x * x
    assert sqrt_in_field(K(5)) is not None        # sqrt 5 lies in Q(zeta5)
    assert sqrt_in_field(K(3)) is None
    assert sqrt_in_field(t) is not None           # zeta5 = (zeta5^3)^2
    Q = NumberField([-2, 1])
    assert sqrt_in_field(Q(9)).rational_value() == 3


def test_compose_extension_and_split():
    K0 = NumberField([-5, 0, 1])                   # Q(sqrt 5)
    b = K0.gen()
    ext = compose_extension(K0, [K0(2) + b, K0(1)])  # t^2 + t + (2 + sqrt5)
    L = ext.field
    assert L.degree == 4
    r = ext.root
    assert r * r + r + ext.base_embedding(K0(2) + b) == L.zero()
    with pytest.raises(NotAFieldExtension):
        compose_extension(K0, [K0(-5), K0(0)])      # t^2 - 5 splits


def test_field_generated_by_and_cm_classification():
    K = NumberField(ZETA5)
    t = K.gen()
    full = field_generated_by([t])
    assert full.degree == 4 and full.is_totally_imaginary()
    real = field_generated_by([t + t ** 4])
    assert real.degree == 2 and real.is_totally_real()
    assert real.issubfield(full)
    assert field_generated_by([K(3)]).degree == 1


# -- real roots and signs ----------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=2, max_size=11).filter(lambda c: c[-1] != 0))
def test_sturm_count_matches_mpmath(c):
    p = RationalPolynomial(c).squarefree_part()
    if p.degree < 1:
        return
    cert = count_real_roots(p)
    mpmath.mp.prec = 300
    roots = mpmath.polyroots([mpmath.mpf(int(x.numerator)) / int(x.denominator) for x in reversed(p.coeffs)],
                             maxsteps=400, extraprec=600)
    real = sorted(mpmath.re(z) for z in roots if abs(mpmath.im(z)) < mpmath.mpf(10) ** -40)
    assert cert.count == len(real)
    for (lo, hi), z in zip(cert.isolating_intervals, real):
        assert mpmath.mpf(int(lo.numerator)) / int(lo.denominator) <= z + mpmath.mpf(10) ** -60
        assert z <= mpmath.mpf(int(hi.numerator)) / int(hi.denominator) + mpmath.mpf(10) ** -60
    mpmath.mp.prec = 53


def test_certified_signs():
    K = NumberField([-5, 0, 1])
    s = K.gen()
    # (1 + sqrt5)/2 is positive at +sqrt5 and negative at -sqrt5
    signs = certified_sign_at_real_embeddings((s + 1) / 2)
    assert sorted(signs) == [-1, 1]
    assert certified_sign_at_real_embeddings(K(3)) == [1, 1]


# -- linear algebra and signature --------------------------------------------

sq_matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


@given(sq_matrices)
def test_determinant_and_inverse_match_sympy(m):
    M = sympy.Matrix(m)
    assert determinant([[rational(x) for x in row] for row in m]) == rational(int(M.det()))
    if M.det() != 0:
        inv = inverse([[rational(x) for x in row] for row in m])
        assert mat_mul([[rational(x) for x in row] for row in m], inv) == identity(len(m))


@given(sq_matrices)
def test_nullspace_is_kernel(m):
    A = [[rational(x) for x in row] for row in m]
    ker = nullspace(A, len(m))
    assert len(ker) == len(m) - sympy.Matrix(m).rank()
    for v in ker:
        assert all(x == 0 for x in mat_vec(A, v))


def _symmetric(m):
    n = len(m)
    return [[m[i][j] + m[j][i] for j in range(n)] for i in range(n)]


@settings(max_examples=60, deadline=None)
@given(sq_matrices)
def test_signature_matches_eigenvalues(m):
    S = _symmetric(m)
    eig = mpmath.eigsy(mpmath.matrix(S))[0]
    pos = sum(1 for x in eig if x > 1e-8)
    neg = sum(1 for x in eig if x < -1e-8)
    assert signature(S) == (pos, neg, len(S) - pos - neg)


@settings(max_examples=50, deadline=None)
@given(sq_matrices, sq_matrices)
def test_signature_invariant_under_congruence(m, p):
    S = _symmetric(m)
    n = len(S)
    P = [row[:n] + [0] * (n - len(row)) for row in p[:n]] + [[0] * n for _ in range(n - len(p))]
    for i in range(n):
        P[i][i] = P[i][i] or 1
    if sympy.Matrix(P).det() == 0:
        return
    Sq = [[rational(x) for x in row] for row in S]
    Pq = [[rational(x) for x in row] for row in P]
    Pt = [list(r) for r in zip(*Pq)]
    assert signature(mat_mul(mat_mul(Pt, Sq), Pq)) == signature(Sq)
