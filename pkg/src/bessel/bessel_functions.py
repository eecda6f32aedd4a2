import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gammaln

from src.errors import DomainError, NonConvergence

logger = logging.getLogger(__name__)

MAX_ARGUMENT = 50.0
PRECISION_LOSS_RATIO = 1e8


@dataclass
class BesselEvalConfig:
    tol: float = 1e-15  # absolute bound on the first omitted term
    max_terms: int = 200  # large |z| needs headroom for the pre-asymptotic hump

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be at least 1, got {self.max_terms}")


DEFAULT_BESSEL_CONFIG = BesselEvalConfig()


def _is_integer(x: float) -> bool:
    return float(x).is_integer()


def _check_arguments(z: float, *orders: float) -> None:
    for order in orders:
        if order < 0:
            raise DomainError(f"Bessel order must be nonnegative, got {order}")
    # Past MAX_ARGUMENT the series is only well conditioned while |z| stays below the order.
    if abs(z) > MAX_ARGUMENT and abs(z) > min(orders):
        raise DomainError(f"|z| = {abs(z)} exceeds the supported range {MAX_ARGUMENT}")
    if z < 0 and not all(_is_integer(order) for order in orders):
        raise DomainError("Negative argument requires integer orders")


def _sum_alternating(first: float, ratio: Callable[[int], float],
                     cfg: BesselEvalConfig, label: str) -> float:
    """Sum t_0 + t_1 + ... with t_{k+1} = t_k * ratio(k).

    Stops once the next term is below cfg.tol and no larger than the current
    one; for these alternating series that term bounds the tail.
    """
    total = first
    term = first
    largest = abs(first)
    for k in range(cfg.max_terms):
        nxt = term * ratio(k)
        if abs(nxt) < cfg.tol and abs(nxt) <= abs(term):
            if largest > PRECISION_LOSS_RATIO * abs(total):
                logger.warning("%s: largest term %.3e dwarfs result %.3e, precision lost",
                               label, largest, total)
            return total
        total += nxt
        term = nxt
        largest = max(largest, abs(term))
    raise NonConvergence(f"{label} did not converge in {cfg.max_terms} terms",
                         terms_used=cfg.max_terms, last_term=term)


def bessel_j(nu: float, z: float, cfg: BesselEvalConfig = DEFAULT_BESSEL_CONFIG) -> float:
    """J_nu(z) from its power series.

    Terms are generated by the ratio t_{k+1}/t_k = -(z/2)^2 / ((k+1)(nu+k+1))
    starting from (z/2)^nu / Gamma(nu+1), evaluated in log space.
    """
    _check_arguments(z, nu)
    if z == 0:
        return 1.0 if nu == 0 else 0.0
    sign = -1.0 if z < 0 and int(nu) % 2 else 1.0
    half = abs(z) / 2.0
    first = math.exp(nu * math.log(half) - gammaln(nu + 1.0))
    quarter = half * half

    def ratio(k: int) -> float:
        return -quarter / ((k + 1) * (nu + k + 1))

    return sign * _sum_alternating(first, ratio, cfg, f"J_{nu}({z})")


def bessel_j_integral(n: int, z: float, quad_points: int = 512) -> float:
    """J_n(z) = (1/pi) * integral_0^pi cos(nE - z sin E) dE by the composite trapezoid rule."""
    if quad_points < 16:
        raise DomainError(f"quad_points must be at least 16, got {quad_points}")
    if n < 0 or not _is_integer(n):
        raise DomainError(f"Integral representation needs a nonnegative integer order, got {n}")
    grid = np.linspace(0.0, np.pi, quad_points + 1)
    values = np.cos(n * grid - z * np.sin(grid))
    step = np.pi / quad_points
    integral = step * (values.sum() - 0.5 * (values[0] + values[-1]))
    return float(integral / np.pi)


def bessel_product(mu: float, nu: float, z: float,
                   cfg: BesselEvalConfig = DEFAULT_BESSEL_CONFIG) -> float:
    """J_mu(z) J_nu(z) from the single product series

        sum_k (-1)^k C(mu+nu+2k, k) (z/2)^(mu+nu+2k) / (Gamma(mu+k+1) Gamma(nu+k+1))
    """
    _check_arguments(z, mu, nu)
    if z == 0:
        return 1.0 if mu == 0 and nu == 0 else 0.0
    sign = -1.0 if z < 0 and int(mu + nu) % 2 else 1.0
    half = abs(z) / 2.0
    first = math.exp((mu + nu) * math.log(half) - gammaln(mu + 1.0) - gammaln(nu + 1.0))
    quarter = half * half
    total_order = mu + nu

    def ratio(k: int) -> float:
        return (-quarter * (total_order + 2 * k + 2) * (total_order + 2 * k + 1)
                / ((k + 1) * (total_order + k + 1) * (mu + k + 1) * (nu + k + 1)))

    return sign * _sum_alternating(first, ratio, cfg, f"J_{mu}({z})J_{nu}({z})")
