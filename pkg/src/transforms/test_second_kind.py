from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import DomainError
from src.series.series_eval import eval_kapteyn2
from src.transforms.records import KapteynSecondCoeffs, TaylorCoeffs
from src.transforms.second_kind import (biorthogonality_defects, coeff_alpha, coeff_beta,
                                        kapteyn2_to_taylor, taylor_to_kapteyn2)

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=50)
small_rationals = st.fractions(min_value=-10, max_value=10, max_denominator=20)

# Taylor data is padded to this length so both sides truncate at the same place.
PADDED_LENGTH = 41


def kapteyn2_sum(record: KapteynSecondCoeffs, z: float) -> float:
    a = [float(v) for v in record.a]
    c = [float(v) for v in record.c]
    return eval_kapteyn2(lambda n: a[n], lambda n: c[n], float(record.mu), float(record.nu), z,
                         n_terms=len(record)).value


def test_degenerate_cell():
    assert coeff_alpha(0, 0, 0, 0) == 1
    assert coeff_beta(0, 0, 0, 0) == 1
    assert coeff_alpha(0.0, 0.0, 0, 0) == 1.0


def test_index_range():
    with pytest.raises(DomainError):
        coeff_alpha(0, 0, 1, 2)
    with pytest.raises(DomainError):
        coeff_beta(-1, 0, 1, 0)


@pytest.mark.parametrize("mu", range(3))
@pytest.mark.parametrize("nu", range(3))
def test_biorthogonality(mu, nu):
    assert biorthogonality_defects(mu, nu, 12) == []


@pytest.mark.parametrize("s,k", [(0, 0), (2, 1), (4, 0), (5, 5)])
def test_float_path_matches_exact(s, k):
    assert coeff_alpha(1.0, 2.0, s, k) == pytest.approx(float(coeff_alpha(1, 2, s, k)), rel=1e-12)
    assert coeff_beta(1.0, 2.0, s, k) == pytest.approx(float(coeff_beta(1, 2, s, k)), rel=1e-12)


def test_power_weight_gives_g1_coefficients():
    record = KapteynSecondCoeffs.of(0, 0, [0, 1, 4], [0, 0, 0])
    taylor = kapteyn2_to_taylor(record)
    assert len(taylor) == 6
    assert taylor.b[:5] == (0, 0, 1, 0, 15)


def test_odd_length_taylor_is_zero_padded():
    record = taylor_to_kapteyn2(TaylorCoeffs.of([1, 2, 3]), 0, 0)
    assert len(record) == 2
    assert kapteyn2_to_taylor(record) == TaylorCoeffs.of([1, 2, 3, 0])


def test_chain_mismatch_rejected():
    with pytest.raises(DomainError):
        KapteynSecondCoeffs(0, 0, (Fraction(1),), ())


@settings(max_examples=40)
@given(st.lists(rationals, min_size=1, max_size=20), st.integers(0, 2), st.integers(0, 2))
def test_exact_roundtrip(values, mu, nu):
    taylor = TaylorCoeffs.of(values)
    padded = TaylorCoeffs.of(values + [Fraction(0)] * (len(values) % 2))
    assert kapteyn2_to_taylor(taylor_to_kapteyn2(taylor, mu, nu)) == padded

    half = (len(values) + 1) // 2
    kapteyn = KapteynSecondCoeffs.of(mu, nu, values[:half], (values[half:] + values)[:half])
    assert taylor_to_kapteyn2(kapteyn2_to_taylor(kapteyn), mu, nu) == kapteyn


def test_float_mode_agrees_with_exact():
    values = [Fraction(2), Fraction(-1, 3), Fraction(1, 5), Fraction(7), Fraction(-3, 2)]
    exact = taylor_to_kapteyn2(TaylorCoeffs.of(values), 1, 1)
    floating = taylor_to_kapteyn2(TaylorCoeffs.of(values).as_float(), 1.0, 1.0)
    assert floating.a == pytest.approx([float(v) for v in exact.a], rel=1e-12)
    assert floating.c == pytest.approx([float(v) for v in exact.c], rel=1e-12)


def test_z_squared_sums_back():
    padded = TaylorCoeffs.of([0, 0, 1] + [0] * (PADDED_LENGTH - 3))
    kc = taylor_to_kapteyn2(padded, 0, 0)
    assert kc.a[:2] == (0, 1)
    assert all(v == 0 for v in kc.c)
    assert abs(kapteyn2_sum(kc, 0.2) - 0.04) < 1e-8


@settings(max_examples=15, deadline=None)
@given(st.lists(small_rationals, min_size=6, max_size=6))
def test_kapteyn_series_sums_to_taylor_polynomial(b):
    kc = taylor_to_kapteyn2(TaylorCoeffs.of(b + [0] * (PADDED_LENGTH - len(b))), 0, 0)
    assert len(kc) == 21
    for z in (0.1, 0.2):
        taylor = sum(float(v) * z ** m for m, v in enumerate(b))
        assert abs(kapteyn2_sum(kc, z) - taylor) < 1e-8
