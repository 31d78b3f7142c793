import math

import pytest

from colmez.classfun import ClassFunction
from colmez.cmtypes import b_tau_rho, cm_type, enumerate_cm_types, enumerate_partial_types, partial_cm_type
from colmez.errors import BadPrime, ConjugatePair, EqualPlaces
from colmez.galois import build_field
from colmez.heights import (
    admissible_pairs,
    conjectural_ht,
    example_rhs,
    height_full,
    height_of_function,
    height_partial,
    height_partial_explicit,
    verify_averaged,
    verify_example_family,
    verify_full_partial_heights,
)
from colmez.lfunctions import EULER_GAMMA, LOG_2PI, log_derivative_at_zero
from colmez.characters import kronecker_character

TOL = 1e-9
Z4 = 0.7831887854136739
H_QI = 0.5 * LOG_2PI - 0.5 * Z4 - 0.5 * math.log(2)


def test_conjectural_ht(qi):
    assert abs(conjectural_ht(ClassFunction.constant(qi, 1)) - LOG_2PI) < 1e-15
    assert abs(conjectural_ht(ClassFunction.constant(qi, 1), "analytic") + LOG_2PI) < 1e-15
    assert abs(conjectural_ht(b_tau_rho(qi, 1, 1)) + Z4 / 2) < 1e-12


def test_gaussian_height(qi):
    rep = height_full(cm_type(qi, [1]))
    assert abs(rep.total - H_QI) < 1e-12
    assert abs(rep.total - 0.18077055) < 1e-8
    assert abs(rep.mu_part + 0.5 * math.log(2)) < 1e-15
    assert rep.mu_formal == "1*log(2)"
    assert rep.as_dict()["total"] == rep.total


def test_induced_type_doubles(qi, biquad):
    h1 = height_full(cm_type(qi, [1])).total
    h2 = height_full(cm_type(biquad, [1, 13])).total
    assert abs(h2 - 2 * h1) < TOL


def test_partial_equals_full_for_full_types(q5, biquad):
    for fld in (q5, biquad):
        for T in enumerate_cm_types(fld):
            a = height_partial(partial_cm_type(fld, T.members)).total
            assert abs(a - height_full(T).total) < 1e-12


@pytest.mark.parametrize("n,gens", [(5, []), (20, [9]), (7, []), (12, [])])
def test_explicit_formula(n, gens):
    fld = build_field(n, gens)
    for s, t in admissible_pairs(fld):
        direct = height_partial(partial_cm_type(fld, [s, t])).total
        assert abs(direct - height_partial_explicit(fld, s, t).total) < TOL
        assert abs(height_partial_explicit(fld, t, s).total - direct) < 1e-12


def test_explicit_errors(q5):
    with pytest.raises(EqualPlaces):
        height_partial_explicit(q5, 2, 2)
    with pytest.raises(ConjugatePair):
        height_partial_explicit(q5, 1, 4)


def test_conjugation_invariance(biquad, q7):
    for fld in (biquad, q7):
        for phi in enumerate_partial_types(fld, 2):
            a = height_partial(phi).total
            assert math.isfinite(a)
            assert abs(a - height_partial(phi.conjugate()).total) < 1e-12


@pytest.mark.parametrize("n,gens", [(4, []), (3, []), (5, []), (20, [9]), (7, []), (8, []), (12, [])])
def test_averaged_formula(n, gens):
    fld = build_field(n, gens)
    assert abs(verify_averaged(fld).residual) < TOL
    rep = verify_averaged(fld, "analytic")
    assert abs(rep.residual - fld.g * LOG_2PI) < TOL


def test_family():
    table = verify_example_family([5, 13, 17, 29, 37])
    assert [r.d for r in table.rows] == [20, 52, 68, 116, 148]
    assert table.spread < 1e-8
    assert abs(table.rows[0].delta - LOG_2PI) < 1e-9
    assert all(abs(r.h_minus_quarter_log_d) < 2 for r in table.rows)
    assert verify_example_family([]).spread == 0.0
    for bad in (3, 15, 7, 1):
        with pytest.raises(BadPrime):
            verify_example_family([bad])


def test_example_rhs_uses_log_derivative_at_one():
    d = 20
    chi = kronecker_character(-d)
    # functional equation: L'/L(chi, 1) = -Z(chi, 0) - log(d / pi) + gamma + log 2
    via_zero = -log_derivative_at_zero(chi) - math.log(d / math.pi) + EULER_GAMMA + math.log(2)
    expected = 0.25 * math.log(d) + 0.5 * via_zero - EULER_GAMMA / 2 - LOG_2PI
    assert abs(example_rhs(d) - expected) < 1e-12


@pytest.mark.parametrize("n,gens", [(5, []), (20, [9]), (7, []), (13, [3])])
def test_full_against_pairs(n, gens):
    fld = build_field(n, gens)
    b_height = height_of_function(b_tau_rho(fld, 1, 1)).total
    for T in enumerate_cm_types(fld):
        rep = verify_full_partial_heights(T)
        assert abs(rep.corrected_residual) < TOL
        assert abs(rep.printed_residual - fld.g * (fld.g - 1) * b_height) < TOL
        assert rep.vanishing() == ["corrected"]
        assert abs(rep.diag_height - b_height) < 1e-15


def test_full_against_pairs_needs_two(qi):
    with pytest.raises(ValueError):
        verify_full_partial_heights(cm_type(qi, [1]))


def test_convention_shift(q5):
    # the two conventions differ by 2 log 2pi times the trivial multiplicity
    for phi in enumerate_partial_types(q5, 2):
        a = height_partial(phi).total
        b = height_partial(phi, "analytic").total
        assert abs((a - b) - 2 * LOG_2PI * len(phi) / 2) < 1e-12
