"""
Direct floating-point summation of Kapteyn series of both kinds and of
the squared-Bessel sums S1(m, a).

Every sum stops after `consecutive_small` successive terms fall below
tol * max(1, |partial|). Each Bessel evaluation gets a tolerance scaled
to its weight so that inner error stays an order below the outer one.
"""
import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, Optional

from src.bessel.bessel_functions import BesselEvalConfig, bessel_j, bessel_product
from src.errors import DomainError, NonConvergence

logger = logging.getLogger(__name__)

CoeffFn = Callable[[int], float]

# Inner tolerances never go below this; the Bessel series cannot resolve less anyway.
MIN_INNER_TOL = 1e-300


@dataclass
class SumConfig:
    tol: float = 1e-12
    max_n: int = 2000
    consecutive_small: int = 3

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.max_n < 1:
            raise DomainError(f"max_n must be at least 1, got {self.max_n}")
        if self.consecutive_small < 1:
            raise DomainError(f"consecutive_small must be at least 1, got {self.consecutive_small}")


DEFAULT_SUM_CONFIG = SumConfig()


@dataclass
class EvalReport:
    value: float
    terms_used: int
    last_term: float
    tail_estimate: float = 0.0

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)


def _inner_config(cfg: SumConfig, partial: float, weight: float) -> BesselEvalConfig:
    tol = 0.1 * cfg.tol * max(1.0, abs(partial)) / max(1.0, abs(weight))
    return BesselEvalConfig(tol=max(tol, MIN_INNER_TOL))


def _tail_estimate(last: float, previous: Optional[float]) -> float:
    """Geometric tail bound |last| r / (1 - r) from the last two terms; |last| when r >= 1."""
    if not last:
        return 0.0
    if not previous:
        return abs(last)
    r = abs(last / previous)
    return abs(last) * r / (1.0 - r) if r < 1.0 else abs(last)


def _sum_terms(term: Callable[[int, float], Optional[float]], start: int, cfg: SumConfig,
               label: str, initial: float = 0.0, n_terms: Optional[int] = None) -> EvalReport:
    """Add term(n, partial) for n = start, start+1, ...

    A term of None is a zero weight that was never evaluated; it neither
    resets nor advances the run of small terms. With n_terms the sequence
    is finite and every index below start + n_terms is summed. Without it,
    a sequence whose weights are all zero from some index up to max_n is
    taken as finite there.
    """
    partial = initial
    previous: Optional[float] = None
    last = 0.0
    small = 0
    last_evaluated = start - 1
    stop = start + (n_terms if n_terms is not None else cfg.max_n)
    for count, n in enumerate(range(start, stop), start=1):
        try:
            value = term(n, partial)
        except NonConvergence as e:
            raise NonConvergence(f"{label}: term n={n} failed: {e}",
                                 terms_used=count - 1, last_term=last) from e
        except DomainError as e:
            # the Bessel argument grew out of range before the terms became small
            raise NonConvergence(f"{label}: term n={n} out of range: {e}",
                                 terms_used=count - 1, last_term=last) from e
        if value is None:
            continue
        last_evaluated = n
        previous, last = last, value
        partial += value
        if n_terms is not None:
            continue
        small = small + 1 if abs(value) < cfg.tol * max(1.0, abs(partial)) else 0
        if small >= cfg.consecutive_small:
            logger.debug("%s converged after %d terms, value %.15g", label, count, partial)
            return EvalReport(partial, count, last, _tail_estimate(last, previous))
    if n_terms is not None:
        logger.debug("%s summed all %d terms, value %.15g", label, n_terms, partial)
        return EvalReport(partial, n_terms, last, 0.0)
    if stop - 1 - last_evaluated >= cfg.consecutive_small:
        logger.debug("%s: all weights after n=%d are zero up to %d", label, last_evaluated, stop - 1)
        return EvalReport(partial, cfg.max_n, last, 0.0)
    raise NonConvergence(f"{label} did not converge in {cfg.max_n} terms",
                         terms_used=cfg.max_n, last_term=last)


def _check_n_terms(n_terms: Optional[int]) -> None:
    if n_terms is not None and n_terms < 0:
        raise DomainError(f"n_terms must be nonnegative, got {n_terms}")


def eval_kapteyn1(coeff_fn: CoeffFn, nu: float, z: float,
                  cfg: SumConfig = DEFAULT_SUM_CONFIG, n_terms: Optional[int] = None) -> EvalReport:
    """sum_{n>=0} coeff_fn(n) J_{nu+n}((nu+n) z) for real |z| < 1.

    Pass n_terms when coeff_fn vanishes from that index on; the sum is then
    finite and the stopping rule is not applied.
    """
    _check_n_terms(n_terms)
    if nu < 0:
        raise DomainError(f"Order nu must be nonnegative, got {nu}")
    if not abs(z) < 1:
        raise DomainError(f"First-kind series need |z| < 1, got z={z}")
    if z < 0 and not float(nu).is_integer():
        raise DomainError("Negative z requires an integer order nu")

    def term(n: int, partial: float) -> Optional[float]:
        weight = float(coeff_fn(n))
        if weight == 0.0:
            return None
        order = nu + n
        return weight * bessel_j(order, order * z, _inner_config(cfg, partial, weight))

    return _sum_terms(term, 0, cfg, f"Kapteyn1(nu={nu}, z={z})", n_terms=n_terms)


def eval_kapteyn2(a_fn: CoeffFn, c_fn: Optional[CoeffFn], mu: float, nu: float, z: float,
                  cfg: SumConfig = DEFAULT_SUM_CONFIG, n_terms: Optional[int] = None) -> EvalReport:
    """sum_{n>=0} (a_n + z c_n) J_{mu+n}(w_n) J_{nu+n}(w_n), w_n = (mu+nu+2n) z, for |z| < 1/2."""
    _check_n_terms(n_terms)
    if mu < 0 or nu < 0:
        raise DomainError(f"Orders must be nonnegative, got mu={mu}, nu={nu}")
    if not abs(z) < 0.5:
        raise DomainError(f"Second-kind series need |z| < 1/2, got z={z}")
    if z < 0 and not (float(mu).is_integer() and float(nu).is_integer()):
        raise DomainError("Negative z requires integer orders")

    def term(n: int, partial: float) -> Optional[float]:
        weight = float(a_fn(n)) + (z * float(c_fn(n)) if c_fn is not None else 0.0)
        if weight == 0.0:
            return None
        w = (mu + nu + 2 * n) * z
        return weight * bessel_product(mu + n, nu + n, w, _inner_config(cfg, partial, weight))

    return _sum_terms(term, 0, cfg, f"Kapteyn2(mu={mu}, nu={nu}, z={z})", n_terms=n_terms)


def eval_s1(m: int, a: float, cfg: SumConfig = DEFAULT_SUM_CONFIG) -> EvalReport:
    """S1(m, a) = sum_{n>=1} n^(2m) J_n(n a)^2 for 0 <= a < 1."""
    if m < 0:
        raise DomainError(f"m must be nonnegative, got {m}")
    if not 0 <= a < 1:
        raise DomainError(f"S1 needs 0 <= a < 1, got a={a}")

    def term(n: int, partial: float) -> float:
        weight = float(n) ** (2 * m)
        return weight * bessel_product(n, n, n * a, _inner_config(cfg, partial, weight))

    return _sum_terms(term, 1, cfg, f"S1(m={m}, a={a})")


def power_weight(p: int) -> CoeffFn:
    """n -> n^(2p), with 0^0 = 1."""
    if p < 0:
        raise DomainError(f"p must be nonnegative, got {p}")
    return lambda n: float(n ** (2 * p))


def kepler_series_sum(eccentricity: float, mean_anomaly: float,
                      cfg: SumConfig = DEFAULT_SUM_CONFIG) -> EvalReport:
    """M + sum_{n>=1} (2/n) J_n(n e) sin(n M)."""
    if math.sin(mean_anomaly) == 0.0:
        # every sin(n M) vanishes and E = M solves the equation exactly
        return EvalReport(mean_anomaly, 0, 0.0, 0.0)

    def term(n: int, partial: float) -> Optional[float]:
        weight = 2.0 / n * math.sin(n * mean_anomaly)
        if weight == 0.0:
            return None
        return weight * bessel_j(n, n * eccentricity, _inner_config(cfg, partial, weight))

    return _sum_terms(term, 1, cfg, f"Kepler(e={eccentricity}, M={mean_anomaly})",
                      initial=mean_anomaly)
