import math

import pytest

from src.errors import DomainError, NonConvergence
from src.series.kepler import KeplerParams, kepler_bessel, kepler_newton, residual
from src.series.series_eval import SumConfig


def test_params_validation():
    with pytest.raises(DomainError):
        KeplerParams(1.0, 0.5)
    with pytest.raises(DomainError):
        KeplerParams(-0.1, 0.5)
    with pytest.raises(DomainError):
        KeplerParams(0.5, math.inf)


def test_circular_orbit():
    kp = KeplerParams(0.0, 1.3)
    assert kepler_newton(kp) == 1.3
    report = kepler_bessel(kp)
    assert report.value == 1.3
    assert report.terms_used == 0


def test_apoapsis_is_fixed_point():
    assert kepler_newton(KeplerParams(0.3, math.pi)) == pytest.approx(math.pi, abs=1e-15)


def test_newton_reference_value():
    kp = KeplerParams(0.1, 1.0)
    E = kepler_newton(kp)
    assert E == pytest.approx(1.0886, abs=1e-4)
    assert abs(residual(kp, E)) < 1e-13


def test_newton_rejects_bad_tolerance():
    with pytest.raises(DomainError):
        kepler_newton(KeplerParams(0.1, 1.0), tol=0.0)


@pytest.mark.parametrize("ecc,M,tol", [(0.1, 1.0, 1e-10), (0.5, 2.0, 1e-8)])
def test_series_matches_newton(ecc, M, tol):
    kp = KeplerParams(ecc, M)
    assert abs(kepler_bessel(kp).value - kepler_newton(kp)) < tol


@pytest.mark.parametrize("ecc", [0.1, 0.2, 0.3, 0.4, 0.5])
@pytest.mark.parametrize("M", [0.5, 1.0, 2.0, 3.0])
def test_series_and_newton_agree_on_grid(ecc, M):
    kp = KeplerParams(ecc, M)
    E_series = kepler_bessel(kp).value
    E_newton = kepler_newton(kp)
    assert abs(E_series - E_newton) < 1e-8
    assert abs(residual(kp, E_series)) < 1e-8
    assert abs(residual(kp, E_newton)) < 1e-8


@pytest.mark.parametrize("ecc", [0.2, 0.4, 0.6])
@pytest.mark.parametrize("M", [0.5, 1.0, 2.0, 3.0])
def test_series_residual_tracks_tolerance(ecc, M):
    cfg = SumConfig(tol=1e-12)
    kp = KeplerParams(ecc, M)
    E = kepler_bessel(kp, cfg).value
    assert abs(residual(kp, E)) < 10 * cfg.tol * max(1.0, abs(E))


def test_high_eccentricity_reports_non_convergence():
    with pytest.raises(NonConvergence):
        kepler_bessel(KeplerParams(0.95, 1.0), SumConfig(max_n=300))


def test_zero_mean_anomaly():
    # every sin(n M) term vanishes
    report = kepler_bessel(KeplerParams(0.4, 0.0))
    assert report.value == 0.0 and report.terms_used == 0
    assert kepler_newton(KeplerParams(0.4, 0.0)) == 0.0
