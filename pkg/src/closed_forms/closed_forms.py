"""
Exact generation of the closed forms of the power-weighted Kapteyn sums

    f_p(z) = sum_n n^(2p) J_n(n z),        |z| < 1
    g_p(z) = sum_n n^(2p) J_n(2 n z)^2,    |z| < 1/2
    S1(m, a) = sum_{n>=1} n^(2m) J_n(n a)^2 = g_m(a/2) - [m == 0]

The Taylor coefficients come from extracting [t^(2p)] of powers of
sinh(t)/t. Each closed form is recovered by multiplying the exact Taylor
series by the expected denominator and checking that a guard window of
further coefficients vanishes.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Dict, Tuple

from src.arith.exact import (Polynomial, TruncSeries, as_rational, binomial_series,
                             pochhammer, rational_to_str, series_mul, series_pow,
                             sinh_over_t_series, sinh_series)
from src.errors import BoundExceeded, DomainError, GuardCheckFailed, NonTerminating, ParseError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClosedFormConfig:
    bound: int = 12  # largest p (or m) generated on request
    guard: int = 8  # trailing coefficients that must vanish past the numerator

    def __post_init__(self):
        if self.bound < 0:
            raise DomainError(f"bound must be nonnegative, got {self.bound}")
        if self.guard < 1:
            raise DomainError(f"guard must be at least 1, got {self.guard}")


DEFAULT_CLOSED_FORM_CONFIG = ClosedFormConfig()


class Base(str, Enum):
    ONE_MINUS_Z = "1-z"
    ONE_MINUS_FOUR_Z_SQ = "1-4z^2"
    ONE_MINUS_Z_SQ = "1-z^2"

    @property
    def _shape(self) -> Tuple[int, int]:
        # (c, stride) with base = 1 + c * z^stride
        return {Base.ONE_MINUS_Z: (-1, 1),
                Base.ONE_MINUS_FOUR_Z_SQ: (-4, 2),
                Base.ONE_MINUS_Z_SQ: (-1, 2)}[self]

    def series(self, exponent: Fraction, order: int) -> TruncSeries:
        """Maclaurin coefficients of base^exponent."""
        c, stride = self._shape
        return binomial_series(exponent, c, order, stride)

    def evaluate(self, x: float) -> float:
        c, stride = self._shape
        return 1.0 + c * x ** stride

    def render(self, var: str) -> str:
        return self.value.replace("z", var)


@dataclass(frozen=True)
class ClosedForm:
    """constant + prefactor * v^z_power * numerator(v) / base(v)^(exponent_num/exponent_den)."""
    constant: Fraction
    prefactor: Fraction
    z_power: int
    numerator: Polynomial
    base: Base
    exponent_num: int
    exponent_den: int = 1
    variable: str = "z"

    def __post_init__(self):
        object.__setattr__(self, "constant", Fraction(self.constant))
        object.__setattr__(self, "prefactor", Fraction(self.prefactor))
        exponent = Fraction(self.exponent_num, self.exponent_den)
        if exponent.denominator not in (1, 2):
            raise DomainError(f"Exponent {exponent} is not an integer or half-integer")
        object.__setattr__(self, "exponent_num", exponent.numerator)
        object.__setattr__(self, "exponent_den", exponent.denominator)
        if self.numerator.is_zero() or self.prefactor == 0:
            raise DomainError("Closed form needs a nonzero numerator and prefactor")
        if self.z_power < 0:
            raise DomainError(f"z_power must be nonnegative, got {self.z_power}")

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.exponent_num, self.exponent_den)

    @classmethod
    def normalized(cls, constant: Fraction, numerator: Polynomial, base: Base,
                   exponent: Fraction, variable: str = "z") -> "ClosedForm":
        """Factor the lowest power of the variable and the content out of `numerator`."""
        if numerator.is_zero():
            raise GuardCheckFailed("Extracted numerator is identically zero")
        z_power = next(j for j, c in enumerate(numerator.coeffs) if c)
        shifted = Polynomial(numerator.coeffs[z_power:])
        prefactor, primitive = shifted.primitive()
        exponent = Fraction(exponent)
        return cls(constant, prefactor, z_power, primitive, base,
                   exponent.numerator, exponent.denominator, variable)

    def full_numerator(self) -> Polynomial:
        """prefactor * v^z_power * numerator as one polynomial."""
        return Polynomial.monomial(self.z_power, self.prefactor) * self.numerator

    def taylor(self, order: int) -> TruncSeries:
        """Exact Maclaurin coefficients up to v^(order-1)."""
        top = TruncSeries.from_coeffs(self.full_numerator().coeffs, order)
        result = series_mul(top, self.base.series(-self.exponent, order))
        if order:
            result = result + TruncSeries.from_coeffs([self.constant], order)
        return result

    def evaluate(self, x: float) -> float:
        x = float(x)
        base = self.base.evaluate(x)
        if base <= 0:
            raise DomainError(f"{self.base.render(self.variable)} = {base} is outside the domain")
        top = float(self.prefactor) * x ** self.z_power * self.numerator.evaluate(x)
        return float(self.constant) + top / base ** float(self.exponent)

    def render(self) -> str:
        """Readable form, e.g. "z (1+9z) / (2 (1-z)^7)"."""
        var = self.variable
        top_parts = []
        lead = self.prefactor.numerator
        if self.z_power:
            top_parts.append(var if self.z_power == 1 else f"{var}^{self.z_power}")
        if self.numerator.degree > 0 or not top_parts:
            body = self.numerator.render(var)
            top_parts.append(f"({body})" if self.numerator.degree > 0 and top_parts else body)
        top = " ".join(top_parts)
        if abs(lead) != 1:
            top = f"{abs(lead)} {top}" if top != "1" else str(abs(lead))

        base = f"({self.base.render(var)})"
        if self.exponent != 1:
            exp = rational_to_str(self.exponent)
            base += f"^{exp}" if self.exponent_den == 1 else f"^({exp})"
        bottom = base if self.prefactor.denominator == 1 else f"{self.prefactor.denominator} {base}"
        text = f"{top} / ({bottom})" if " " in bottom else f"{top} / {bottom}"
        if lead < 0:
            text = f"-{text}"
        if self.constant:
            joiner = " - " if lead < 0 else " + "
            text = rational_to_str(self.constant) + joiner + text.lstrip("-")
        return text

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> Dict[str, Any]:
        return {
            "constant": rational_to_str(self.constant),
            "prefactor": rational_to_str(self.prefactor),
            "z_power": self.z_power,
            "numerator": self.numerator.to_json(),
            "base": self.base.value,
            "exponent": rational_to_str(self.exponent),
            "variable": self.variable,
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ClosedForm":
        try:
            exponent = as_rational(str(data["exponent"]))
            return cls(
                constant=as_rational(str(data.get("constant", "0"))),
                prefactor=as_rational(str(data["prefactor"])),
                z_power=int(data.get("z_power", 0)),
                numerator=Polynomial.from_json(data["numerator"]),
                base=Base(data["base"]),
                exponent_num=exponent.numerator,
                exponent_den=exponent.denominator,
                variable=data.get("variable", "z"),
            )
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(f"Bad closed-form record: {e}") from e


def epsilon(s: int, p: int) -> Fraction:
    """1 when s = p = 0, otherwise 1/2."""
    return Fraction(1) if s == 0 and p == 0 else Fraction(1, 2)


def sinh_power_derivative(r: int, m: int) -> Fraction:
    """d^m/dt^m sinh(t)^r at t = 0, as m! [t^m] sinh(t)^r."""
    if r < 0 or m < 0:
        raise DomainError(f"r and m must be nonnegative, got r={r}, m={m}")
    series = series_pow(sinh_series(m + 1), r, m + 1)
    return series.coeffs[m] * math.factorial(m)


def sinh_power_derivative_binomial(r: int, m: int) -> Fraction:
    """2^-r sum_k C(r,k) (-1)^k (r-2k)^m."""
    total = sum(math.comb(r, k) * (-1) ** k * (r - 2 * k) ** m for k in range(r + 1))
    return Fraction(total, 2 ** r)


@lru_cache(maxsize=None)
def _sinh_over_t_power(s: int, order: int) -> TruncSeries:
    return series_pow(sinh_over_t_series(order), s, order)


def sinh_over_t_coefficient(s: int, p: int) -> Fraction:
    """[t^(2p)] (sinh(t)/t)^s, computed with 2p+2 guard terms whose odd entries must vanish."""
    order = 4 * p + 3
    series = _sinh_over_t_power(s, order)
    odd = [j for j in range(1, order, 2) if series.coeffs[j]]
    if odd:
        raise NonTerminating(f"(sinh t/t)^{s} has nonzero odd coefficients at {odd}")
    return series.coeffs[2 * p]


def b_first(p: int, s: int) -> Fraction:
    """Coefficient of z^s in f_p: eps(s,p) (s+1)_(2p) [t^(2p)] (sinh(t)/t)^s."""
    _check_nonnegative(p=p, s=s)
    return epsilon(s, p) * pochhammer(s + 1, 2 * p) * sinh_over_t_coefficient(s, p)


def b_first_binomial(p: int, s: int) -> Fraction:
    """The same coefficient from the half-range binomial sum (0^0 = 1)."""
    _check_nonnegative(p=p, s=s)
    total = sum((-1) ** k * math.comb(s, k) * (s - 2 * k) ** (s + 2 * p) for k in range(s // 2 + 1))
    return Fraction(total, math.factorial(s) * 2 ** s)


def b_second(p: int, s: int) -> Fraction:
    """Coefficient of z^(2s) in g_p: eps(s,p) (2s+2p)! / (4^p (s!)^2) [t^(2p)] (sinh(t)/t)^(2s)."""
    _check_nonnegative(p=p, s=s)
    return (epsilon(s, p) * Fraction(math.factorial(2 * s + 2 * p), 4 ** p * math.factorial(s) ** 2)
            * sinh_over_t_coefficient(2 * s, p))


def b_second_binomial(p: int, s: int) -> Fraction:
    """The same coefficient from sum_k (-1)^k C(2s,k) (s-k)^(2(s+p)) / (s!)^2."""
    _check_nonnegative(p=p, s=s)
    total = sum((-1) ** k * math.comb(2 * s, k) * (s - k) ** (2 * (s + p)) for k in range(s + 1))
    return Fraction(total, math.factorial(s) ** 2)


def _first_table(p: int, s: int) -> Fraction:
    lead = Fraction(1, 2) * pochhammer(s + 1, 2 * p)
    if p == 0:
        return epsilon(s, 0)
    if p == 1:
        return lead * Fraction(s, 6)
    if p == 2:
        return lead * Fraction(s * (5 * s - 2), 360)
    if p == 3:
        return lead * Fraction(s * (35 * s ** 2 - 42 * s + 16), 45360)
    return lead * Fraction(s * (5 * s - 4) * (35 * s ** 2 - 56 * s + 36), 5443200)


def _second_table(p: int, s: int) -> Fraction:
    lead = Fraction(math.factorial(2 * s + 2 * p), 2 * 4 ** p * math.factorial(s) ** 2)
    if p == 0:
        return epsilon(s, 0) * Fraction(math.factorial(2 * s), math.factorial(s) ** 2)
    if p == 1:
        return lead * Fraction(s, 3)
    if p == 2:
        return lead * Fraction(s * (5 * s - 1), 90)
    if p == 3:
        return lead * Fraction(s * (35 * s ** 2 - 21 * s + 4), 5670)
    return lead * Fraction(s * (5 * s - 2) * (35 * s ** 2 - 28 * s + 9), 340200)


def b_first_table(p: int, s: int) -> Fraction:
    """Polynomial-in-s formulas for b_s(p), p <= 4."""
    if not 0 <= p <= 4:
        raise BoundExceeded(f"Tabulated formulas cover p <= 4, got {p}")
    return _first_table(p, s)


def b_second_table(p: int, s: int) -> Fraction:
    """Polynomial-in-s formulas for b_{2s}(p), p <= 4."""
    if not 0 <= p <= 4:
        raise BoundExceeded(f"Tabulated formulas cover p <= 4, got {p}")
    return _second_table(p, s)


def pochhammer_identity_holds(p: int, s: int) -> bool:
    """(p+1)_s (p+1/2)_s == (2s+2p)! / ((2p)! 4^s)."""
    left = pochhammer(p + 1, s) * pochhammer(Fraction(2 * p + 1, 2), s)
    right = Fraction(math.factorial(2 * s + 2 * p), math.factorial(2 * p) * 4 ** s)
    return left == right


def _check_nonnegative(**values: int) -> None:
    for name, value in values.items():
        if value < 0:
            raise DomainError(f"{name} must be nonnegative, got {value}")


def _check_bound(p: int, cfg: ClosedFormConfig) -> None:
    _check_nonnegative(p=p)
    if p > cfg.bound:
        raise BoundExceeded(f"p={p} exceeds the configured bound {cfg.bound}")


def _extract(coefficient: Callable[[int], Fraction], constant: Fraction, base: Base,
             exponent: Fraction, max_degree: int, cfg: ClosedFormConfig) -> ClosedForm:
    order = max_degree + 1 + cfg.guard
    values = [coefficient(j) for j in range(order)]
    values[0] -= constant
    product = series_mul(TruncSeries(tuple(values), order), base.series(exponent, order))
    window = product.coeffs[max_degree + 1:]
    if any(window):
        raise NonTerminating(
            f"Guard window past degree {max_degree} is nonzero for base {base.value}^{exponent}")
    logger.debug("extracted numerator of degree <= %d, guard %d clean", max_degree, cfg.guard)
    return ClosedForm.normalized(constant, Polynomial(product.coeffs[:max_degree + 1]), base, exponent)


def f_closed(p: int, cfg: ClosedFormConfig = DEFAULT_CLOSED_FORM_CONFIG) -> ClosedForm:
    """f_p(z) with denominator (1-z)^(3p+1)."""
    _check_bound(p, cfg)
    constant = Fraction(1, 2) if p == 0 else Fraction(0)
    return _extract(lambda j: b_first(p, j), constant, Base.ONE_MINUS_Z,
                    Fraction(3 * p + 1), 3 * p + 1, cfg)


def g_closed(p: int, cfg: ClosedFormConfig = DEFAULT_CLOSED_FORM_CONFIG) -> ClosedForm:
    """g_p(z) with denominator (1-4z^2)^((6p+1)/2)."""
    _check_bound(p, cfg)
    constant = Fraction(1, 2) if p == 0 else Fraction(0)

    def coefficient(j: int) -> Fraction:
        return b_second(p, j // 2) if j % 2 == 0 else Fraction(0)

    return _extract(coefficient, constant, Base.ONE_MINUS_FOUR_Z_SQ,
                    Fraction(6 * p + 1, 2), 6 * p, cfg)


def s1_closed(m: int, cfg: ClosedFormConfig = DEFAULT_CLOSED_FORM_CONFIG) -> ClosedForm:
    """S1(m, a) = g_m(a/2) minus the n = 0 term, in the variable a."""
    _check_bound(m, cfg)
    g = g_closed(m, cfg)
    top = g.full_numerator()
    rescaled = Polynomial(tuple(c / 2 ** j for j, c in enumerate(top.coeffs)))
    constant = g.constant - (1 if m == 0 else 0)
    return ClosedForm.normalized(constant, rescaled, Base.ONE_MINUS_Z_SQ, g.exponent, variable="a")


def p_polynomial(n: int, cfg: ClosedFormConfig = DEFAULT_CLOSED_FORM_CONFIG) -> Polynomial:
    """P_n from P_0 = 1; the step producing P_k is

        (z+1) P_k = z^2 (z-1)^2 P'' + z ((1-6k) z^2 + (6k-4) z + 3) P' + (9k^2 z^2 + (9k+1) z + 1) P

    with P = P_{k-1}. Every division by z+1 must be exact.
    """
    _check_bound(n, cfg)
    z = Polynomial.from_ints(0, 1)
    z_plus_one = Polynomial.from_ints(1, 1)
    second_weight = Polynomial.from_ints(0, 0, 1, -2, 1)  # z^2 (z-1)^2
    poly = Polynomial.from_ints(1)
    for k in range(1, n + 1):
        first_weight = z * Polynomial.from_ints(3, 6 * k - 4, 1 - 6 * k)
        zeroth_weight = Polynomial.from_ints(1, 9 * k + 1, 9 * k * k)
        total = (second_weight * poly.derivative().derivative()
                 + first_weight * poly.derivative()
                 + zeroth_weight * poly)
        poly = total.exact_div(z_plus_one)
    return poly


def kapteyn_operator(series: TruncSeries) -> TruncSeries:
    """(1-z^2)^-1 (z d/dz)^2 applied to a truncated series; maps f_p to f_(p+1)."""
    theta_squared = TruncSeries(tuple(j * j * c for j, c in enumerate(series.coeffs)), series.order)
    return series_mul(theta_squared, Base.ONE_MINUS_Z_SQ.series(Fraction(-1), series.order))
