"""
Kepler's equation M = E - e sin(E): a Newton solver and the Bessel-series solution.

The series converges for every 0 <= e < 1, but the number of terms grows
quickly as e approaches 1. Beyond e of about 0.8 the power series for
J_n(n e) loses precision before the terms become small, and the sum
ends in NonConvergence.
"""
import logging
import math
from dataclasses import dataclass

from src.errors import DomainError, NonConvergence
from src.series.series_eval import DEFAULT_SUM_CONFIG, EvalReport, SumConfig, kepler_series_sum

logger = logging.getLogger(__name__)

NEWTON_MAX_ITERATIONS = 64


@dataclass
class KeplerParams:
    eccentricity: float
    mean_anomaly: float  # radians

    def __post_init__(self):
        if not 0 <= self.eccentricity < 1:
            raise DomainError(f"Eccentricity must lie in [0, 1), got {self.eccentricity}")
        if not math.isfinite(self.mean_anomaly):
            raise DomainError(f"Mean anomaly must be finite, got {self.mean_anomaly}")


def residual(kp: KeplerParams, E: float) -> float:
    """E - e sin(E) - M."""
    return E - kp.eccentricity * math.sin(E) - kp.mean_anomaly


def kepler_newton(kp: KeplerParams, tol: float = 1e-13) -> float:
    """Solve for E by Newton's method from E0 = M."""
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    E = kp.mean_anomaly
    for iteration in range(NEWTON_MAX_ITERATIONS):
        f = residual(kp, E)
        if abs(f) < tol:
            logger.debug("Newton converged in %d iterations, E=%.15g", iteration, E)
            return E
        E -= f / (1.0 - kp.eccentricity * math.cos(E))
    f = residual(kp, E)
    if abs(f) < tol:
        return E
    raise NonConvergence(f"Newton iteration for e={kp.eccentricity}, M={kp.mean_anomaly} "
                         f"did not converge in {NEWTON_MAX_ITERATIONS} iterations",
                         terms_used=NEWTON_MAX_ITERATIONS, last_term=f)


def kepler_bessel(kp: KeplerParams, cfg: SumConfig = DEFAULT_SUM_CONFIG) -> EvalReport:
    """E(M) = M + sum_{n>=1} (2/n) J_n(n e) sin(n M)."""
    if kp.eccentricity == 0:
        return EvalReport(kp.mean_anomaly, 0, 0.0, 0.0)
    return kepler_series_sum(kp.eccentricity, kp.mean_anomaly, cfg)
