from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.arith.exact import Polynomial
from src.closed_forms.closed_forms import (Base, ClosedForm, ClosedFormConfig, _extract, b_first,
                                           b_first_binomial, b_first_table, b_second,
                                           b_second_binomial, b_second_table, epsilon, f_closed,
                                           g_closed, kapteyn_operator, p_polynomial,
                                           pochhammer_identity_holds, s1_closed,
                                           sinh_power_derivative, sinh_power_derivative_binomial)
from src.errors import BoundExceeded, DomainError, NonTerminating, ParseError

P_TABLE = {0: (1,), 1: (1, 9), 2: (1, 54, 225), 3: (1, 243, 4131, 11025)}
G_TABLE = {
    1: (1, 0, 1),
    2: (1, 0, 37, 0, 118, 0, 27),
    3: (1, 0, 217, 0, 5036, 0, 23630, 0, 22910, 0, 2250),
}


def test_epsilon():
    assert epsilon(0, 0) == 1
    assert epsilon(0, 1) == Fraction(1, 2)
    assert epsilon(3, 0) == Fraction(1, 2)


def test_f0():
    f0 = f_closed(0)
    assert f0.constant == Fraction(1, 2)
    assert f0.prefactor == Fraction(1, 2)
    assert f0.numerator == Polynomial.from_ints(1)
    assert f0.exponent == 1
    assert f0.evaluate(0.5) == pytest.approx(1.5)


@pytest.mark.parametrize("p", range(1, 5))
def test_f_table(p):
    f = f_closed(p)
    assert f.constant == 0
    assert f.prefactor == Fraction(1, 2)
    assert f.z_power == 1
    assert f.numerator == Polynomial.from_ints(*P_TABLE[p - 1])
    assert f.base is Base.ONE_MINUS_Z
    assert f.exponent == 3 * p + 1


def test_f_render():
    assert f_closed(1).render() == "z / (2 (1-z)^4)"
    assert f_closed(2).render() == "z (1+9z) / (2 (1-z)^7)"
    assert f_closed(0).render() == "1/2 + 1 / (2 (1-z))"


def test_g0():
    g0 = g_closed(0)
    assert g0.constant == Fraction(1, 2)
    assert g0.prefactor == Fraction(1, 2)
    assert g0.exponent == Fraction(1, 2)
    assert g0.render() == "1/2 + 1 / (2 (1-4z^2)^(1/2))"


@pytest.mark.parametrize("p", range(1, 4))
def test_g_table(p):
    g = g_closed(p)
    assert g.prefactor == 1
    assert g.z_power == 2
    assert g.numerator == Polynomial.from_ints(*G_TABLE[p])
    assert g.base is Base.ONE_MINUS_FOUR_Z_SQ
    assert g.exponent == Fraction(6 * p + 1, 2)


def test_s1_closed_forms():
    s2 = s1_closed(2)
    assert s2.variable == "a"
    assert s2.prefactor == Fraction(1, 256)
    assert s2.z_power == 2
    assert s2.numerator == Polynomial.from_ints(64, 0, 592, 0, 472, 0, 27)
    assert s2.base is Base.ONE_MINUS_Z_SQ
    assert s2.exponent == Fraction(13, 2)
    assert s2.render() == "a^2 (64+592a^2+472a^4+27a^6) / (256 (1-a^2)^(13/2))"
    assert s2.evaluate(0.3) == pytest.approx(0.0786, abs=5e-4)

    s1 = s1_closed(1)
    assert (s1.prefactor, s1.z_power, s1.numerator) == (Fraction(1, 16), 2, Polynomial.from_ints(4, 0, 1))

    s0 = s1_closed(0)
    assert s0.constant == Fraction(-1, 2)
    assert s0.evaluate(0.0) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("n", range(4))
def test_p_polynomials(n):
    assert p_polynomial(n) == Polynomial.from_ints(*P_TABLE[n])


def test_p_polynomials_continue_the_f_family():
    for n in range(4, 7):
        assert f_closed(n + 1).numerator == p_polynomial(n)


def test_bound():
    with pytest.raises(BoundExceeded):
        f_closed(13)
    with pytest.raises(BoundExceeded):
        g_closed(3, ClosedFormConfig(bound=2))
    with pytest.raises(BoundExceeded):
        p_polynomial(5, ClosedFormConfig(bound=4))
    with pytest.raises(DomainError):
        s1_closed(-1)
    with pytest.raises(DomainError):
        ClosedFormConfig(guard=0)


def test_guard_window_catches_wrong_denominator():
    with pytest.raises(NonTerminating):
        _extract(lambda j: b_first(1, j), Fraction(0), Base.ONE_MINUS_Z, Fraction(2), 2,
                 ClosedFormConfig())


@pytest.mark.parametrize("p", range(5))
def test_taylor_expansion_reproduces_coefficients(p):
    f = f_closed(p).taylor(25)
    assert list(f.coeffs) == [b_first(p, s) for s in range(25)]
    g = g_closed(p).taylor(24)
    assert list(g.coeffs[0::2]) == [b_second(p, s) for s in range(12)]
    assert not any(g.coeffs[1::2])


def test_evaluate():
    assert f_closed(1).evaluate(0.2) == pytest.approx(0.1 / 0.8 ** 4, rel=1e-14)
    assert g_closed(0).evaluate(0.1) == pytest.approx(0.5 + 0.5 / 0.96 ** 0.5, rel=1e-14)
    with pytest.raises(DomainError):
        g_closed(1).evaluate(0.5)
    with pytest.raises(DomainError):
        f_closed(1).evaluate(1.0)


def test_json_roundtrip():
    for form in (f_closed(2), g_closed(0), s1_closed(2)):
        assert ClosedForm.from_json(form.to_json()) == form
    assert f_closed(2).to_json() == {
        "constant": "0", "prefactor": "1/2", "z_power": 1, "numerator": ["1", "9"],
        "base": "1-z", "exponent": "7", "variable": "z",
    }


def test_json_errors():
    with pytest.raises(ParseError):
        ClosedForm.from_json({"prefactor": "1", "numerator": ["1"], "base": "1-z"})
    with pytest.raises(ParseError):
        ClosedForm.from_json({"prefactor": "1", "numerator": ["1"], "base": "1+z", "exponent": "1"})
    with pytest.raises(ParseError):
        ClosedForm.from_json({"prefactor": "1", "numerator": ["1"], "base": "1-z", "exponent": "1/3"})
    with pytest.raises(DomainError):
        ClosedForm(Fraction(0), Fraction(1), 0, Polynomial.from_ints(1), Base.ONE_MINUS_Z, 1, 3)


@pytest.mark.parametrize("p", range(5))
def test_tabulated_coefficient_formulas(p):
    for s in range(21):
        assert b_first(p, s) == b_first_table(p, s)
        assert b_second(p, s) == b_second_table(p, s)
    with pytest.raises(BoundExceeded):
        b_first_table(5, 1)


@given(st.integers(0, 5), st.integers(0, 25))
def test_binomial_sums_agree(p, s):
    assert b_first(p, s) == b_first_binomial(p, s)
    assert b_second(p, s) == b_second_binomial(p, s)


def test_sinh_power_lemma():
    for r in range(11):
        for m in range(15):
            assert sinh_power_derivative(r, m) == sinh_power_derivative_binomial(r, m)


@given(st.integers(0, 8), st.integers(0, 12))
def test_pochhammer_identity(p, s):
    assert pochhammer_identity_holds(p, s)


@pytest.mark.parametrize("p", range(5))
def test_operator_maps_f_p_to_next(p):
    image = kapteyn_operator(f_closed(p).taylor(30))
    assert image == f_closed(p + 1).taylor(30)
