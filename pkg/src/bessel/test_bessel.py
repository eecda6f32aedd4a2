import logging

import numpy as np
import pytest
from scipy.special import jv

from src.bessel.bessel_functions import (BesselEvalConfig, bessel_j, bessel_j_integral,
                                         bessel_product)
from src.errors import DomainError, NonConvergence


def test_values_at_zero():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0
    assert bessel_j(2.5, 0.0) == 0.0
    assert bessel_product(0, 0, 0.0) == 1.0
    assert bessel_product(0, 1, 0.0) == 0.0


@pytest.mark.parametrize("nu", [0, 1, 2, 2.5, 5, 12])
@pytest.mark.parametrize("z", [0.1, 0.7, 1.0, 3.0, 8.0])
def test_series_matches_scipy(nu, z):
    assert bessel_j(nu, z) == pytest.approx(jv(nu, z), abs=1e-12)


def test_negative_argument_integer_order():
    assert bessel_j(1, -0.5) == pytest.approx(-bessel_j(1, 0.5), abs=1e-16)
    assert bessel_j(2, -0.5) == pytest.approx(bessel_j(2, 0.5), abs=1e-16)
    assert bessel_product(1, 2, -0.5) == pytest.approx(-bessel_product(1, 2, 0.5), abs=1e-16)


def test_domain_errors():
    with pytest.raises(DomainError):
        bessel_j(-1, 0.5)
    with pytest.raises(DomainError):
        bessel_j(0.5, -0.5)
    with pytest.raises(DomainError):
        bessel_j(2, 60.0)


def test_large_argument_below_order_is_accepted():
    assert bessel_j(100, 60.0) == pytest.approx(jv(100, 60.0), abs=1e-14)


def test_config_validation():
    with pytest.raises(DomainError):
        BesselEvalConfig(tol=0.0)
    with pytest.raises(DomainError):
        BesselEvalConfig(max_terms=0)


def test_term_cap_raises_non_convergence():
    with pytest.raises(NonConvergence) as info:
        bessel_j(0, 10.0, BesselEvalConfig(max_terms=1))
    assert info.value.terms_used == 1


def test_precision_loss_is_logged(caplog):
    with caplog.at_level(logging.WARNING, logger="src.bessel.bessel_functions"):
        bessel_j(0, 40.0)
    assert any("precision lost" in record.message for record in caplog.records)


@pytest.mark.parametrize("n", range(9))
def test_series_matches_integral(n):
    for z in np.linspace(0.0, 2.0, 9):
        assert bessel_j(n, z) == pytest.approx(bessel_j_integral(n, z), abs=1e-9)


def test_integral_argument_checks():
    with pytest.raises(DomainError):
        bessel_j_integral(1.5, 1.0)
    with pytest.raises(DomainError):
        bessel_j_integral(1, 1.0, quad_points=8)


def test_product_example():
    expected = bessel_j(0, 0.7) * bessel_j(1, 0.7)
    assert bessel_product(0, 1, 0.7) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("mu", [0, 1, 2, 2.5])
@pytest.mark.parametrize("nu", [0, 1, 2, 2.5])
def test_product_series_matches_product_of_series(mu, nu):
    for z in np.linspace(0.0, 2.0, 11):
        assert bessel_product(mu, nu, z) == pytest.approx(bessel_j(mu, z) * bessel_j(nu, z), abs=1e-11)
