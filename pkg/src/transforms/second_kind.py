"""
Transforms between Taylor coefficients of f and the coefficient pairs of

    z^(mu+nu) f(z) = sum_n (a_n + z c_n) J_{mu+n}(w_n) J_{nu+n}(w_n),  w_n = (mu+nu+2n) z.

The even Taylor chain b_{2s} pairs with a, the odd chain b_{2s+1} with c.
"""
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple, Union

from scipy.special import binom, gamma

from src.arith.exact import is_integral
from src.errors import DomainError
from src.transforms.records import KapteynSecondCoeffs, Mode, TaylorCoeffs, normalize_order

logger = logging.getLogger(__name__)

Scalar = Union[Fraction, float]


def _check_indices(mu, nu, s: int, k: int) -> None:
    if mu < 0 or nu < 0:
        raise DomainError(f"Orders must be nonnegative, got mu={mu}, nu={nu}")
    if not 0 <= k <= s:
        raise DomainError(f"Index k={k} outside 0..{s}")


def _exact_orders(mu, nu) -> bool:
    return all(not isinstance(x, float) and is_integral(x) for x in (mu, nu))


@lru_cache(maxsize=None)
def _alpha_exact(mu: int, nu: int, s: int, k: int) -> Fraction:
    if mu + nu + 2 * s == 0:
        return Fraction(1)
    return (Fraction((mu + nu + 2 * k) ** 2 * math.factorial(mu + k) * math.factorial(nu + k),
                     (mu + nu + s + k) * (mu + nu + 2 * s))
            * math.comb(mu + nu + s + k, s - k)
            * Fraction(2, mu + nu + 2 * s) ** (mu + nu + 2 * k))


@lru_cache(maxsize=None)
def _beta_exact(mu: int, nu: int, s: int, k: int) -> Fraction:
    # 0^0 = 1 at mu = nu = s = k = 0
    return (Fraction((-1) ** (s + k), math.factorial(mu + s) * math.factorial(nu + s))
            * math.comb(mu + nu + 2 * s, s - k)
            * Fraction(mu + nu + 2 * k, 2) ** (mu + nu + 2 * s))


def coeff_alpha(mu, nu, s: int, k: int) -> Scalar:
    """alpha_{s,k}: weight of b_{2k} (resp. b_{2k+1}) in a_s (resp. c_s).

    The 0/0 cell mu = nu = s = 0 is 1, the value forced by alpha_{s,s} beta_{s,s} = 1.
    """
    _check_indices(mu, nu, s, k)
    if _exact_orders(mu, nu):
        return _alpha_exact(int(mu), int(nu), s, k)
    mu, nu = float(mu), float(nu)
    if mu + nu + 2 * s == 0:
        return 1.0
    return ((mu + nu + 2 * k) ** 2 * gamma(mu + k + 1) * gamma(nu + k + 1)
            / ((mu + nu + s + k) * (mu + nu + 2 * s))
            * binom(mu + nu + s + k, s - k)
            * (2.0 / (mu + nu + 2 * s)) ** (mu + nu + 2 * k))


def coeff_beta(mu, nu, s: int, k: int) -> Scalar:
    """beta_{s,k}: weight of a_k (resp. c_k) in b_{2s} (resp. b_{2s+1})."""
    _check_indices(mu, nu, s, k)
    if _exact_orders(mu, nu):
        return _beta_exact(int(mu), int(nu), s, k)
    mu, nu = float(mu), float(nu)
    return ((-1) ** (s + k) / (gamma(mu + s + 1) * gamma(nu + s + 1))
            * binom(mu + nu + 2 * s, s - k)
            * ((mu + nu + 2 * k) / 2.0) ** (mu + nu + 2 * s))


def _zero(mode: Mode) -> Scalar:
    return Fraction(0) if mode is Mode.EXACT else 0.0


def kapteyn2_to_taylor(kc: KapteynSecondCoeffs) -> TaylorCoeffs:
    """Interleave b_{2s} = sum_k beta_{s,k} a_k and b_{2s+1} = sum_k beta_{s,k} c_k."""
    b = []
    for s in range(len(kc.a)):
        even = odd = _zero(kc.mode)
        for k in range(s + 1):
            weight = coeff_beta(kc.mu, kc.nu, s, k)
            even += weight * kc.a[k]
            odd += weight * kc.c[k]
        b.extend((even, odd))
    return TaylorCoeffs(tuple(b), kc.mode)


def taylor_to_kapteyn2(tc: TaylorCoeffs, mu, nu) -> KapteynSecondCoeffs:
    """a_s = sum_k alpha_{s,k} b_{2k}, c_s = sum_k alpha_{s,k} b_{2k+1}.

    Returns floor(N/2)+1 pairs for b_0..b_N; a missing b_{N+1} is zero.
    """
    mu = normalize_order(mu, tc.mode, "mu")
    nu = normalize_order(nu, tc.mode, "nu")
    zero = _zero(tc.mode)
    padded = list(tc.b) + [zero]
    pairs = (len(tc.b) + 1) // 2
    a, c = [], []
    for s in range(pairs):
        even = odd = zero
        for k in range(s + 1):
            weight = coeff_alpha(mu, nu, s, k)
            even += weight * padded[2 * k]
            odd += weight * padded[2 * k + 1]
        a.append(even)
        c.append(odd)
    return KapteynSecondCoeffs(mu, nu, tuple(a), tuple(c), tc.mode)


def biorthogonality_defects(mu: int, nu: int, s_max: int) -> List[Tuple[int, int, Fraction]]:
    """Cells (j, s, value) where sum_{k=j}^{s} alpha_{s,k} beta_{k,j} != delta_{j,s}."""
    defects = []
    for s in range(s_max + 1):
        for j in range(s + 1):
            total = sum((coeff_alpha(mu, nu, s, k) * coeff_beta(mu, nu, k, j)
                         for k in range(j, s + 1)), Fraction(0))
            expected = 1 if j == s else 0
            if total != expected:
                defects.append((j, s, total))
    logger.debug("second-kind biorthogonality mu=%s nu=%s s<=%d: %d defects",
                 mu, nu, s_max, len(defects))
    return defects
