import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from src.errors import DomainError, InexactDivision, ParseError

logger = logging.getLogger(__name__)

# Scalar of the exact path. Fraction keeps lowest terms with a positive denominator.
Rational = Fraction
Scalar = Union[int, Fraction]


def as_rational(value: Union[int, Fraction, str]) -> Fraction:
    """Convert an int, Fraction or "p/q" string to a Fraction. Floats are refused."""
    if isinstance(value, bool):
        raise ParseError(f"Not a rational value: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"Not a rational value: {value!r}") from e
    raise ParseError(f"Not a rational value: {value!r}")


def rational_to_str(value: Fraction) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def is_integral(value) -> bool:
    if isinstance(value, bool):
        return False
    if isinstance(value, int):
        return True
    if isinstance(value, Fraction):
        return value.denominator == 1
    return False


def pochhammer(x: Scalar, n: int) -> Fraction:
    """Rising factorial x(x+1)...(x+n-1); 1 when n = 0."""
    if n < 0:
        raise DomainError(f"Pochhammer length must be nonnegative, got {n}")
    x = Fraction(x)
    result = Fraction(1)
    for i in range(n):
        result *= x + i
    return result


def generalized_binomial(alpha: Scalar, j: int) -> Fraction:
    """C(alpha, j) for rational alpha and integer j >= 0."""
    return (-1) ** j * pochhammer(-Fraction(alpha), j) / math.factorial(j)


def content(coeffs: Iterable[Fraction]) -> Fraction:
    """Positive rational c such that coeffs / c are coprime integers; 0 for all-zero input."""
    nums, dens = [], []
    for c in coeffs:
        c = Fraction(c)
        if c:
            nums.append(abs(c.numerator))
            dens.append(c.denominator)
    if not nums:
        return Fraction(0)
    return Fraction(math.gcd(*nums), math.lcm(*dens))


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial over the rationals, index = degree. The zero polynomial has no coefficients."""
    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        trimmed = [Fraction(c) for c in self.coeffs]
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        object.__setattr__(self, "coeffs", tuple(trimmed))

    @classmethod
    def from_ints(cls, *coeffs: int) -> "Polynomial":
        return cls(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "Polynomial":
        return cls((Fraction(0),) * degree + (Fraction(coeff),))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, j: int) -> Fraction:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else Fraction(0)

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        other = _as_polynomial(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coeff(j) + other.coeff(j) for j in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-_as_polynomial(other))

    def __mul__(self, other) -> "Polynomial":
        other = _as_polynomial(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(j * c for j, c in enumerate(self.coeffs) if j > 0))

    def __divmod__(self, divisor: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        divisor = _as_polynomial(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("Polynomial division by zero")
        remainder = list(self.coeffs)
        quotient = [Fraction(0)] * max(0, len(remainder) - divisor.degree)
        lead = divisor.leading()
        for shift in range(len(remainder) - len(divisor.coeffs), -1, -1):
            factor = remainder[shift + divisor.degree] / lead
            quotient[shift] = factor
            if factor:
                for j, d in enumerate(divisor.coeffs):
                    remainder[shift + j] -= factor * d
        return Polynomial(tuple(quotient)), Polynomial(tuple(remainder))

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient of a division that must leave no remainder."""
        quotient, remainder = divmod(self, divisor)
        if not remainder.is_zero():
            raise InexactDivision(f"Division of {self} by {divisor} left remainder {remainder}")
        return quotient

    def evaluate(self, x):
        """Horner evaluation; exact for Fraction/int x, float for float x."""
        if isinstance(x, float):
            acc = 0.0
            for c in reversed(self.coeffs):
                acc = acc * x + float(c)
            return acc
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = evaluate

    def primitive(self) -> Tuple[Fraction, "Polynomial"]:
        """Split into (c, q) with q integer and coprime, lowest nonzero coefficient positive."""
        c = content(self.coeffs)
        if c == 0:
            return Fraction(0), Polynomial()
        lowest = next(x for x in self.coeffs if x)
        if lowest < 0:
            c = -c
        return c, Polynomial(tuple(x / c for x in self.coeffs))

    def to_json(self) -> List[str]:
        return [rational_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "Polynomial":
        return cls(tuple(as_rational(c) for c in data))

    def render(self, var: str = "z", descending: bool = False) -> str:
        """Human-readable form: 1+9z, or 9z+1 with descending=True."""
        if self.is_zero():
            return "0"
        parts = []
        indices = range(self.degree, -1, -1) if descending else range(self.degree + 1)
        for j in indices:
            c = self.coeffs[j]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if j == 0:
                body = rational_to_str(mag)
            else:
                power = var if j == 1 else f"{var}^{j}"
                body = power if mag == 1 else f"{rational_to_str(mag)}{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f"{sign}{body}"
        return text

    def __str__(self) -> str:
        return self.render()


def _as_polynomial(value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Polynomial((Fraction(value),))
    raise TypeError(f"Cannot combine Polynomial with {type(value).__name__}")


@dataclass(frozen=True)
class TruncSeries:
    """Formal power series truncated to `order` coefficients (t^0 .. t^(order-1))."""
    coeffs: Tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise DomainError(f"Series order must be nonnegative, got {self.order}")
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.order:
            raise DomainError(f"Series has {len(coeffs)} coefficients but order {self.order}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar], order: int) -> "TruncSeries":
        """Pad with zeros or truncate to exactly `order` coefficients."""
        values = [Fraction(c) for c in coeffs][:order]
        values += [Fraction(0)] * (order - len(values))
        return cls(tuple(values), order)

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls.from_coeffs([1], order)

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise DomainError(f"Cannot extend a series of order {self.order} to {order}")
        return TruncSeries(self.coeffs[:order], order)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        _check_orders(self, other)
        return TruncSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.order)


def _check_orders(a: TruncSeries, b: TruncSeries) -> None:
    if a.order != b.order:
        raise DomainError(f"Series orders differ: {a.order} != {b.order}")


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product truncated to the common order."""
    _check_orders(a, b)
    order = a.order
    out = [Fraction(0)] * order
    for i, x in enumerate(a.coeffs):
        if x:
            for j in range(order - i):
                y = b.coeffs[j]
                if y:
                    out[i + j] += x * y
    return TruncSeries(tuple(out), order)


def series_pow(base: TruncSeries, s: int, order: int) -> TruncSeries:
    """base**s truncated to `order`, by binary exponentiation."""
    if s < 0:
        raise DomainError(f"Series power must be nonnegative, got {s}")
    if base.order < order:
        raise DomainError(f"Base series of order {base.order} cannot give order {order}")
    result = TruncSeries.one(order)
    square = base.truncate(order)
    while s:
        if s & 1:
            result = series_mul(result, square)
        s >>= 1
        if s:
            square = series_mul(square, square)
    return result


def sinh_series(order: int) -> TruncSeries:
    """Maclaurin coefficients of sinh(t)."""
    return TruncSeries.from_coeffs(
        [Fraction(1, math.factorial(j)) if j % 2 else 0 for j in range(order)], order)


def sinh_over_t_series(order: int) -> TruncSeries:
    """Maclaurin coefficients of sinh(t)/t."""
    return TruncSeries.from_coeffs(
        [Fraction(1, math.factorial(j + 1)) if j % 2 == 0 else 0 for j in range(order)], order)


def binomial_series(exponent: Scalar, c: Scalar, order: int, stride: int = 1) -> TruncSeries:
    """Coefficients of (1 + c t^stride)^exponent for rational exponent."""
    c = Fraction(c)
    coeffs = [Fraction(0)] * order
    for j in range(0, (order - 1) // stride + 1 if order else 0):
        coeffs[j * stride] = generalized_binomial(exponent, j) * c ** j
    return TruncSeries(tuple(coeffs), order)
