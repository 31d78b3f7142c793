from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from colmez.classfun import (
    ClassFunction,
    conj_average,
    decompose,
    dual,
    in_cm_space,
    induce_sign_from_conjugation,
)
from colmez.cmtypes import b_tau_rho, cm_type, A_full
from colmez.cyclotomic import Cyclotomic
from colmez.galois import build_field

FIELD_SPECS = [(4, []), (5, []), (7, []), (20, [9]), (13, [3]), (21, [4])]
half = Fraction(1, 2)


def values(f):
    return tuple(f.values)


def random_function(fld):
    return st.lists(
        st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=fld.order, max_size=fld.order
    ).map(lambda vs: ClassFunction(fld, tuple(vs)))


def test_in_cm_space(q5):
    ok, const = in_cm_space(ClassFunction.constant(q5, 1))
    assert ok and const == 2
    ok, const = in_cm_space(A_full(cm_type(q5, [1, 2])))
    assert ok and const == 2
    assert in_cm_space(ClassFunction.indicator(q5, 1)) == (False, None)


def test_dual(q5):
    assert dual(ClassFunction.indicator(q5, 2)) == ClassFunction.indicator(q5, 3)
    c = ClassFunction.constant(q5, Fraction(7, 3))
    assert dual(c) == c


def test_induce_sign(qi, q5, biquad):
    assert values(induce_sign_from_conjugation(qi)) == (1, -1)
    assert values(induce_sign_from_conjugation(q5)) == (2, 0, 0, -2)
    ind = induce_sign_from_conjugation(biquad)
    assert ind(1) == 2 and ind(biquad.conj) == -2
    assert sum(ind.values) == 0


def test_decompose_examples(q5, qi):
    dec = decompose(ClassFunction.constant(q5, 1))
    for chi, m in dec.items():
        assert m == (1 if chi.is_trivial else 0)
    dec = decompose(A_full(cm_type(q5, [1, 2])))
    for chi, m in dec.items():
        z = m.to_complex()
        if chi.is_trivial:
            assert abs(z - 1) < 1e-12
        elif chi.is_odd:
            assert abs(z - 0.5) < 1e-12
        else:
            assert abs(z) < 1e-12
    dec = decompose(b_tau_rho(qi, 1, 1))
    for chi, m in dec.items():
        assert m == (half if chi.is_odd else 0)


@pytest.mark.parametrize("n,gens", FIELD_SPECS)
@given(data=st.data())
def test_decompose_roundtrip(n, gens, data):
    fld = build_field(n, gens)
    f = data.draw(random_function(fld))
    assert decompose(f).reconstruct() == f


@pytest.mark.parametrize("n,gens", FIELD_SPECS)
@given(data=st.data())
def test_dual_is_an_involution_and_linear(n, gens, data):
    fld = build_field(n, gens)
    f, h = data.draw(random_function(fld)), data.draw(random_function(fld))
    assert dual(dual(f)) == f
    assert dual(f + h) == dual(f) + dual(h)


@pytest.mark.parametrize("n,gens", FIELD_SPECS)
@given(data=st.data())
def test_conj_average_is_identity_on_abelian_groups(n, gens, data):
    fld = build_field(n, gens)
    f = data.draw(random_function(fld))
    assert conj_average(f) == f


@pytest.mark.parametrize("n,gens", FIELD_SPECS)
@given(data=st.data())
def test_parseval(n, gens, data):
    fld = build_field(n, gens)
    f = data.draw(random_function(fld))
    lhs = sum(v * v for v in f.values) / fld.order
    rhs = sum(abs(m) ** 2 for m in decompose(f).as_complex())
    assert abs(float(lhs) - rhs) < 1e-9


def test_arithmetic(q5):
    f = ClassFunction.indicator(q5, 2)
    assert (f + 1)(2) == 2 and (f + 1)(1) == 1
    assert (1 - f)(2) == 0
    assert (f * 3 / 2)(2) == Fraction(3, 2)
    assert (f - f).is_zero()
    with pytest.raises(ValueError):
        f + ClassFunction.indicator(build_field(7), 1)


def test_multiplicity_is_exact(q5):
    dec = decompose(ClassFunction.indicator(q5, 1))
    assert all(m == Cyclotomic.scalar(dec.exponent, Fraction(1, 4)) for m in dec.multiplicities)
