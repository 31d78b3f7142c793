import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from colmez.classfun import ClassFunction, conj_average
from colmez.cmtypes import (
    A_full,
    A_partial,
    a_phi_tau,
    b_tau_rho,
    cm_type,
    enumerate_cm_types,
    enumerate_partial_types,
    nearby_pairs,
    partial_cm_type,
)
from colmez.conductors import (
    default_generator,
    index_primes,
    discriminant,
    is_monogenic_generator,
    mu_art,
    mu_art_p,
    mu_art_p_characters,
    mu_art_p_local,
    ramified_primes,
    real_discriminant,
    relative_discriminant,
    root_discriminant,
    verify_discriminant_formula,
)
from colmez.cyclotomic import Cyclotomic
from colmez.errors import IndexDivisible, NotInType
from colmez.galois import build_field
from colmez.heights import comparison_correction, nearby_conductor_identity
from colmez.lfunctions import LOG_2PI

DUAL_ROUTE_FIELDS = [(4, []), (3, []), (5, []), (7, []), (8, []), (9, []), (12, []), (20, [9]), (13, [3])]


def test_discriminants(qi, q5, biquad):
    assert discriminant(qi) == 4
    assert discriminant(q5) == 125
    assert discriminant(biquad) == 400
    assert real_discriminant(q5) == 5
    assert relative_discriminant(q5) == 125 // 25
    assert discriminant(build_field(7)) == 7 ** 5


def test_mu_examples(qi, q5):
    for p in (2, 3, 5):
        assert mu_art_p(ClassFunction.constant(q5, 1), p) == 0
    assert mu_art_p(A_full(cm_type(q5, [1, 2])), 5) == 1
    f = b_tau_rho(qi, 1, 1) + Fraction(1, 2)
    assert mu_art_p(f, 2) == 1


def test_local_examples(q5):
    z = Cyclotomic.zeta(5)
    assert mu_art_p_local(q5, 2, 5, z) == Fraction(-1, 4)
    assert mu_art_p_local(q5, 1, 5, z) == Fraction(3, 4)
    assert mu_art_p_local(q5, 2, 2, z) == 0


def test_root_discriminant_examples(qi, q5):
    i = Cyclotomic.zeta(4)
    assert root_discriminant(qi, [1, 3], i).exponents == {2: 2}
    rd = root_discriminant(q5, [1, 2], Cyclotomic.zeta(5))
    assert rd.exponents == {5: Fraction(1, 2)}
    assert abs(rd.value - math.sqrt(5)) < 1e-12
    full = root_discriminant(q5, q5.elements, Cyclotomic.zeta(5))
    assert full.exponents == {5: 3}


@pytest.mark.parametrize("n,gens", DUAL_ROUTE_FIELDS)
def test_three_routes_agree_on_indicators(n, gens):
    fld = build_field(n, gens)
    alpha = default_generator(fld)
    bad = set(index_primes(fld, alpha))
    for p in ramified_primes(fld):
        for y in fld.elements:
            f = ClassFunction.indicator(fld, y)
            a = mu_art_p(f, p)
            assert a == mu_art_p_characters(f, p)
            if p not in bad:
                assert a == mu_art_p_local(fld, y, p, alpha)


def test_monogenic_generators():
    for n, gens in DUAL_ROUTE_FIELDS[:-1]:
        fld = build_field(n, gens)
        assert is_monogenic_generator(fld, default_generator(fld))
    fld = build_field(13, [3])
    assert index_primes(fld, default_generator(fld)) == [3]
    with pytest.raises(IndexDivisible):
        mu_art_p_local(fld, 5, 3, default_generator(fld))


@pytest.mark.parametrize("n,gens", DUAL_ROUTE_FIELDS)
@given(data=st.data())
def test_mu_is_linear(n, gens, data):
    fld = build_field(n, gens)
    fr = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    f = ClassFunction(fld, tuple(data.draw(st.lists(fr, min_size=fld.order, max_size=fld.order))))
    k = data.draw(fr)
    for p in ramified_primes(fld):
        expected = sum((f(y) * mu_art_p(ClassFunction.indicator(fld, y), p) for y in fld.elements), Fraction(0))
        assert mu_art_p(f, p) == expected
        assert mu_art_p(f * k, p) == k * mu_art_p(f, p)


@pytest.mark.parametrize("n,gens", DUAL_ROUTE_FIELDS)
def test_mu_of_identity_indicator_is_the_root_discriminant(n, gens):
    fld = build_field(n, gens)
    rep = mu_art(ClassFunction.indicator(fld, fld.identity))
    assert abs(rep.value - math.log(discriminant(fld)) / fld.degree) < 1e-12


@pytest.mark.parametrize("n,gens", DUAL_ROUTE_FIELDS)
def test_singleton_discriminant_formula(n, gens):
    fld = build_field(n, gens)
    for phi in enumerate_partial_types(fld, 1):
        rep = verify_discriminant_formula(phi)
        assert rep.asserted and rep.passes


def test_pair_discriminant_formula_is_reported(q5):
    rep = verify_discriminant_formula(partial_cm_type(q5, [1, 2]))
    assert not rep.asserted
    (row,) = rep.rows
    assert row.p == 5 and row.mu == 1


@pytest.mark.parametrize("n,gens", [(5, []), (7, []), (20, [9]), (12, [])])
def test_root_discriminant_is_translation_invariant(n, gens):
    fld = build_field(n, gens)
    alpha = default_generator(fld)
    for phi in enumerate_partial_types(fld, 2):
        base = root_discriminant(fld, phi.members, alpha).exponents
        for y in fld.elements:
            assert root_discriminant(fld, phi.translate(y).members, alpha).exponents == base


@pytest.mark.parametrize("n,gens", [(4, []), (5, []), (7, []), (20, [9]), (12, [])])
def test_nearby_conductor_identity(n, gens):
    fld = build_field(n, gens)
    for T1, T2 in nearby_pairs(enumerate_cm_types(fld)):
        for p, (lhs, rhs) in nearby_conductor_identity(T1, T2).items():
            assert lhs == rhs


def test_comparison_correction(qi, q5):
    T = cm_type(qi, [1])
    mu = mu_art(conj_average(a_phi_tau(T, 1)))
    assert mu.exponents == {2: Fraction(1)}
    expected = 0.5 * LOG_2PI + 0.25 * math.log(4) - math.log(2)
    assert abs(comparison_correction(T, 1) - expected) < 1e-15
    for T in enumerate_cm_types(q5):
        for t in T.members:
            a = comparison_correction(T, t)
            b = comparison_correction(T.conjugate(), q5.mul(q5.conj, t))
            assert abs(a - b) < 1e-12
    with pytest.raises(NotInType):
        comparison_correction(cm_type(q5, [1, 2]), 3)


def test_partial_mu_is_conjugation_invariant(q5, biquad):
    for fld in (q5, biquad):
        for phi in enumerate_partial_types(fld, 2):
            assert mu_art(A_partial(phi)).exponents == mu_art(A_partial(phi.conjugate())).exponents
