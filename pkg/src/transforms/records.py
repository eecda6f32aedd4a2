"""
Coefficient records exchanged by the transforms and the CLI.

Exact records hold Fractions and integer orders; float records hold floats.
A record never mixes the two.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple, Union

from src.arith.exact import as_rational, is_integral, rational_to_str
from src.errors import DomainError, MixedModeError, ParseError

Order = Union[int, float]


class Mode(str, Enum):
    EXACT = "exact"
    FLOAT = "float"


def detect_mode(values: Iterable[Any]) -> Mode:
    """EXACT for ints/Fractions, FLOAT for floats; mixing both raises MixedModeError."""
    kinds = set()
    for v in values:
        if isinstance(v, bool):
            raise ParseError(f"Boolean is not a coefficient: {v!r}")
        if isinstance(v, float):
            kinds.add(Mode.FLOAT)
        elif isinstance(v, (int, Fraction)):
            kinds.add(Mode.EXACT)
        else:
            raise ParseError(f"Unsupported coefficient type {type(v).__name__}")
    if len(kinds) > 1:
        raise MixedModeError("Exact and floating coefficients mixed in one record")
    return kinds.pop() if kinds else Mode.EXACT


def normalize_order(order: Any, mode: Mode, name: str = "nu") -> Order:
    """Validate an order for the given mode: nonnegative integer in exact mode, nonnegative float otherwise."""
    if mode is Mode.EXACT:
        if isinstance(order, float):
            raise MixedModeError(f"Exact record given floating order {name}={order!r}")
        value = as_rational(order) if isinstance(order, str) else order
        if value < 0:
            raise DomainError(f"Order {name} must be nonnegative, got {order}")
        if not is_integral(value):
            raise DomainError(
                f"Exact mode requires an integer order, got {name}={order}; convert with as_float()")
        return int(value)
    value = float(order)
    if value < 0:
        raise DomainError(f"Order {name} must be nonnegative, got {order}")
    return value


def _normalize_values(values: Sequence[Any], mode: Mode) -> Tuple:
    if detect_mode(values) is not mode and values:
        raise MixedModeError(f"Coefficients do not match declared mode {mode.value}")
    if mode is Mode.EXACT:
        return tuple(Fraction(v) for v in values)
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class TaylorCoeffs:
    """b_0 .. b_N of f(z) = sum b_m z^m; coefficients past N are zero."""
    b: Tuple
    mode: Mode = Mode.EXACT

    def __post_init__(self):
        object.__setattr__(self, "b", _normalize_values(self.b, self.mode))

    @classmethod
    def of(cls, values: Sequence[Any]) -> "TaylorCoeffs":
        return cls(tuple(values), detect_mode(values))

    def as_float(self) -> "TaylorCoeffs":
        return TaylorCoeffs(tuple(float(v) for v in self.b), Mode.FLOAT)

    def __len__(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class KapteynFirstCoeffs:
    """a_0 .. a_N of z^nu f(z) = sum a_n J_{nu+n}((nu+n) z)."""
    nu: Order
    a: Tuple
    mode: Mode = Mode.EXACT

    def __post_init__(self):
        object.__setattr__(self, "nu", normalize_order(self.nu, self.mode, "nu"))
        object.__setattr__(self, "a", _normalize_values(self.a, self.mode))

    @classmethod
    def of(cls, nu: Order, values: Sequence[Any]) -> "KapteynFirstCoeffs":
        return cls(nu, tuple(values), detect_mode(values))

    def as_float(self) -> "KapteynFirstCoeffs":
        return KapteynFirstCoeffs(float(self.nu), tuple(float(v) for v in self.a), Mode.FLOAT)

    def __len__(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class KapteynSecondCoeffs:
    """Pairs (a_n, c_n) of z^(mu+nu) f(z) = sum (a_n + z c_n) J_{mu+n}(w) J_{nu+n}(w), w = (mu+nu+2n) z."""
    mu: Order
    nu: Order
    a: Tuple
    c: Tuple
    mode: Mode = Mode.EXACT

    def __post_init__(self):
        object.__setattr__(self, "mu", normalize_order(self.mu, self.mode, "mu"))
        object.__setattr__(self, "nu", normalize_order(self.nu, self.mode, "nu"))
        object.__setattr__(self, "a", _normalize_values(self.a, self.mode))
        object.__setattr__(self, "c", _normalize_values(self.c, self.mode))
        if len(self.a) != len(self.c):
            raise DomainError(f"Even and odd chains differ in length: {len(self.a)} != {len(self.c)}")

    @classmethod
    def of(cls, mu: Order, nu: Order, a: Sequence[Any], c: Sequence[Any]) -> "KapteynSecondCoeffs":
        return cls(mu, nu, tuple(a), tuple(c), detect_mode(list(a) + list(c)))

    def as_float(self) -> "KapteynSecondCoeffs":
        return KapteynSecondCoeffs(float(self.mu), float(self.nu),
                                   tuple(float(v) for v in self.a),
                                   tuple(float(v) for v in self.c), Mode.FLOAT)

    def __len__(self) -> int:
        return len(self.a)


Record = Union[TaylorCoeffs, KapteynFirstCoeffs, KapteynSecondCoeffs]


def _encode_values(values: Sequence, mode: Mode) -> list:
    if mode is Mode.EXACT:
        return [rational_to_str(v) for v in values]
    return [float(v) for v in values]


def _encode_order(order: Order, mode: Mode) -> str:
    return str(int(order)) if mode is Mode.EXACT else repr(float(order))


def record_to_json(record: Record) -> Dict[str, Any]:
    mode = record.mode
    if isinstance(record, TaylorCoeffs):
        return {"kind": "taylor", "mode": mode.value, "coeffs": _encode_values(record.b, mode)}
    if isinstance(record, KapteynFirstCoeffs):
        return {"kind": "kapteyn1", "nu": _encode_order(record.nu, mode), "mode": mode.value,
                "coeffs": _encode_values(record.a, mode)}
    if isinstance(record, KapteynSecondCoeffs):
        return {"kind": "kapteyn2", "mu": _encode_order(record.mu, mode),
                "nu": _encode_order(record.nu, mode), "mode": mode.value,
                "a": _encode_values(record.a, mode), "c": _encode_values(record.c, mode)}
    raise TypeError(f"Not a coefficient record: {type(record).__name__}")


def _decode_values(raw: Any, mode: Optional[Mode]) -> Tuple[list, Mode]:
    if not isinstance(raw, list):
        raise ParseError("Coefficients must be a JSON array")
    if any(isinstance(v, bool) for v in raw):
        raise ParseError("Boolean coefficient values are not numbers")
    if mode is None:
        # Strings and integers are exact, JSON floats are floating.
        mode = detect_mode([v if isinstance(v, float) else 0 for v in raw]) if raw else Mode.EXACT
    try:
        if mode is Mode.EXACT:
            if any(isinstance(v, float) for v in raw):
                raise MixedModeError("Floating value in an exact record")
            return [as_rational(v) if isinstance(v, str) else as_rational(int(v)) for v in raw], mode
        return [float(v) for v in raw], mode
    except (TypeError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"Bad coefficient value: {e}") from e


def _decode_order(raw: Any, mode: Mode, name: str) -> Order:
    if mode is Mode.FLOAT:
        try:
            return float(raw)
        except (TypeError, ValueError) as e:
            raise ParseError(f"Bad order {name}={raw!r}") from e
    if isinstance(raw, float):
        if not raw.is_integer():
            raise DomainError(f"Exact mode requires an integer order, got {name}={raw}")
        return int(raw)
    if isinstance(raw, (int, str)) and not isinstance(raw, bool):
        return as_rational(raw) if isinstance(raw, str) else raw
    raise ParseError(f"Bad order {name}={raw!r}")


def record_from_json(data: Dict[str, Any], default_kind: Optional[str] = None) -> Record:
    """Decode a coefficient record. Accepts "b"/"a" as aliases of "coeffs"."""
    if not isinstance(data, dict):
        raise ParseError("Coefficient record must be a JSON object")
    kind = data.get("kind", default_kind)
    mode = data.get("mode")
    if mode is not None:
        try:
            mode = Mode(mode)
        except ValueError as e:
            raise ParseError(f"Unknown mode {mode!r}") from e

    if kind == "taylor":
        values, mode = _decode_values(_pick(data, "coeffs", "b"), mode)
        return TaylorCoeffs(tuple(values), mode)
    if kind == "kapteyn1":
        values, mode = _decode_values(_pick(data, "coeffs", "a"), mode)
        nu = _decode_order(data.get("nu", 0), mode, "nu")
        return KapteynFirstCoeffs(nu, tuple(values), mode)
    if kind == "kapteyn2":
        raw_a = _pick(data, "a")
        raw_c = data.get("c", [0] * len(raw_a) if isinstance(raw_a, list) else None)
        if mode is None and isinstance(raw_a, list) and isinstance(raw_c, list):
            mode = detect_mode([v if isinstance(v, float) else 0 for v in raw_a + raw_c])
        a, mode = _decode_values(raw_a, mode)
        c, mode = _decode_values(raw_c, mode)
        mu = _decode_order(data.get("mu", 0), mode, "mu")
        nu = _decode_order(data.get("nu", 0), mode, "nu")
        return KapteynSecondCoeffs(mu, nu, tuple(a), tuple(c), mode)
    raise ParseError(f"Unknown record kind {kind!r}")


def _pick(data: Dict[str, Any], *keys: str) -> Any:
    for key in keys:
        if key in data:
            return data[key]
    raise ParseError(f"Record is missing {' / '.join(keys)}")
