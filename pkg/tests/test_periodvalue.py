import pytest
from hypothesis import given, strategies as st

from twistorcm import periodvalue as pv
from twistorcm.errors import InvalidInput

R, RB = pv.symbol_pair()
S, SB = pv.symbol_pair("tau")
SYMS = [R, RB, S, SB]

cosets = st.lists(st.tuples(st.sampled_from(SYMS), st.integers(-4, 4)), max_size=6).map(
    pv.PeriodValueCoset)


# -- oracle: cosets as integer vectors over (r, rbar) -------------------------
# The three terms of (sigma'.gamma) lie in one coset: a + r = b + rbar = c.
# Fixing the normalized coefficient to 0 determines the other two.

def oracle_coefficients(normalization):
    r, rb = (1, 0), (0, 1)
    sub = lambda u, v: (u[0] - v[0], u[1] - v[1])
    zero = (0, 0)
    if normalization == "c=1":
        c = zero
    elif normalization == "a=1":
        c = r                 # a = 0  =>  c = r
    else:
        c = rb                # b = 0  =>  c = rbar
    return sub(c, r), sub(c, rb), c


def as_vector(coset):
    e = coset.exponents
    assert set(e) <= {R, RB}
    return e.get(R, 0), e.get(RB, 0)


@pytest.mark.parametrize("norm", pv.NORMALIZATIONS)
def test_coefficients_match_oracle(norm):
    a, b, c = pv.coefficient_cosets(norm)
    assert (as_vector(a), as_vector(b), as_vector(c)) == oracle_coefficients(norm)
    assert as_vector(pv.fibre_period_value(norm)) == oracle_coefficients(norm)[2]


@pytest.mark.parametrize("norm", pv.NORMALIZATIONS)
def test_relations_hold(norm):
    rel = pv.coefficient_relations(*pv.coefficient_cosets(norm))
    assert rel == {"b_over_a": True, "c_equals_a_r": True, "norm": True}


def test_relations_detect_a_wrong_coefficient():
    a, b, c = pv.coefficient_cosets("c=1")
    rel = pv.coefficient_relations(a, b * pv.PeriodValueCoset.of(R), c)
    assert not rel["b_over_a"] and not rel["norm"]


def test_normalizations_differ_by_one_common_factor():
    base = pv.coefficient_cosets("c=1")
    for norm in ("a=1", "b=1"):
        other = pv.coefficient_cosets(norm)
        ratios = {o / b for o, b in zip(other, base)}
        assert len(ratios) == 1


def test_bad_inputs():
    with pytest.raises(InvalidInput):
        pv.coefficient_cosets("d=1")
    with pytest.raises(InvalidInput):
        pv.PeriodValueCoset([("r", 1)])
    with pytest.raises(InvalidInput):
        pv.rescale_line(pv.PeriodValueCoset(), 3)


# -- group laws ----------------------------------------------------------------

@given(cosets, cosets, cosets)
def test_group_laws(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert u * v == v * u
    assert u / u == pv.PeriodValueCoset.identity()
    assert (u * v) ** 2 == u ** 2 * v ** 2


@given(cosets, cosets)
def test_conjugation(u, v):
    assert pv.conjugate(pv.conjugate(u)) == u
    assert pv.conjugate(u * v) == pv.conjugate(u) * pv.conjugate(v)
    n = pv.norm_coset()
    assert pv.conjugate(n) == n


@given(cosets)
def test_rescaling_and_substitution(u):
    assert pv.rescale_line(u, pv.ALGEBRAIC) == u
    assert pv.rescale_line(u, R) == u * pv.PeriodValueCoset.of(R)
    one = pv.PeriodValueCoset.identity()
    killed = pv.substitute(u, {R: one, RB: one, S: one, SB: one})
    assert killed.is_identity()
    assert pv.substitute(u, {}) == u


def test_serialization_is_sorted():
    u = pv.PeriodValueCoset([(RB, 2), (R, -1)])
    assert u.to_pairs() == [["r_sigma", -1], ["rbar_sigma", 2]]
    assert repr(pv.PeriodValueCoset()) == "1"
