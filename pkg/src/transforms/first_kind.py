"""
Transforms between Taylor coefficients b_m of f and the coefficients a_n of

    z^nu f(z) = sum_n a_n J_{nu+n}((nu+n) z).

Both directions are lower triangular in the paired index, so the first N+1
outputs depend only on the first N+1 inputs.
"""
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple, Union

from scipy.special import gamma

from src.arith.exact import is_integral
from src.errors import DomainError
from src.transforms.records import KapteynFirstCoeffs, Mode, TaylorCoeffs, normalize_order

logger = logging.getLogger(__name__)

Scalar = Union[Fraction, float]


def _is_exact_order(nu) -> bool:
    return not isinstance(nu, float) and is_integral(nu)


def _check_indices(nu, n: int, k: int) -> None:
    if nu < 0:
        raise DomainError(f"Order nu must be nonnegative, got {nu}")
    if n < 0 or not 0 <= k <= n // 2:
        raise DomainError(f"Index k={k} outside 0..{n // 2} for n={n}")


@lru_cache(maxsize=None)
def _u_exact(nu: int, n: int, k: int) -> Fraction:
    # 0^0 = 1 at nu + n = 2k = 0
    return (Fraction((-1) ** k, math.factorial(k) * math.factorial(nu + n - k))
            * Fraction(nu + n - 2 * k, 2) ** (nu + n))


@lru_cache(maxsize=None)
def _v_exact(nu: int, n: int, k: int) -> Fraction:
    if nu + n == 0:
        return Fraction(1)
    return (Fraction((nu + n - 2 * k) ** 2 * math.factorial(nu + n - k - 1), 2 * math.factorial(k))
            * Fraction(2, nu + n) ** (nu + n - 2 * k + 1))


def coeff_u(nu, n: int, k: int) -> Scalar:
    """u_{n,k} = (-1)^k / (k! Gamma(nu+n-k+1)) * ((nu+n-2k)/2)^(nu+n).

    Exact for integer nu, float otherwise.
    """
    _check_indices(nu, n, k)
    if _is_exact_order(nu):
        return _u_exact(int(nu), n, k)
    nu = float(nu)
    return ((-1) ** k / (math.factorial(k) * gamma(nu + n - k + 1))
            * ((nu + n - 2 * k) / 2.0) ** (nu + n))


def coeff_v(nu, n: int, k: int) -> Scalar:
    """v_{n,k} = (1/2)(nu+n-2k)^2 Gamma(nu+n-k) / k! * (2/(nu+n))^(nu+n-2k+1).

    The singular cell nu = n = 0 takes its limiting value 1.
    """
    _check_indices(nu, n, k)
    if _is_exact_order(nu):
        return _v_exact(int(nu), n, k)
    nu = float(nu)
    if nu + n == 0:
        return 1.0
    return (0.5 * (nu + n - 2 * k) ** 2 * gamma(nu + n - k) / math.factorial(k)
            * (2.0 / (nu + n)) ** (nu + n - 2 * k + 1))


def _zero(mode: Mode) -> Scalar:
    return Fraction(0) if mode is Mode.EXACT else 0.0


def kapteyn1_to_taylor(kc: KapteynFirstCoeffs) -> TaylorCoeffs:
    """b_s = sum_{m=0}^{s//2} u_{s,m} a_{s-2m}."""
    b = []
    for s in range(len(kc.a)):
        total = _zero(kc.mode)
        for m in range(s // 2 + 1):
            total += coeff_u(kc.nu, s, m) * kc.a[s - 2 * m]
        b.append(total)
    return TaylorCoeffs(tuple(b), kc.mode)


def taylor_to_kapteyn1(tc: TaylorCoeffs, nu) -> KapteynFirstCoeffs:
    """a_s = sum_{m=0}^{s//2} v_{s,m} b_{s-2m}."""
    nu = normalize_order(nu, tc.mode, "nu")
    a = []
    for s in range(len(tc.b)):
        total = _zero(tc.mode)
        for m in range(s // 2 + 1):
            total += coeff_v(nu, s, m) * tc.b[s - 2 * m]
        a.append(total)
    return KapteynFirstCoeffs(nu, tuple(a), tc.mode)


def biorthogonality_defects(nu: int, s_max: int, parity: int) -> List[Tuple[int, int, Fraction]]:
    """Cells (k, s, value) where sum_{j=k}^{s} u_{2j+p, j-k} v_{2s+p, s-j} != delta_{k,s}.

    parity 0 checks the even chain, 1 the odd chain. Empty list means the
    identity holds exactly.
    """
    if parity not in (0, 1):
        raise DomainError(f"parity must be 0 or 1, got {parity}")
    defects = []
    for s in range(s_max + 1):
        for k in range(s + 1):
            total = sum((coeff_u(nu, 2 * j + parity, j - k) * coeff_v(nu, 2 * s + parity, s - j)
                         for j in range(k, s + 1)), Fraction(0))
            expected = 1 if k == s else 0
            if total != expected:
                defects.append((k, s, total))
    logger.debug("first-kind biorthogonality nu=%s s<=%d parity=%d: %d defects",
                 nu, s_max, parity, len(defects))
    return defects
