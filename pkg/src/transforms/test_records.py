from fractions import Fraction

import pytest

from src.errors import DomainError, MixedModeError, ParseError
from src.transforms.records import (KapteynFirstCoeffs, KapteynSecondCoeffs, Mode, TaylorCoeffs,
                                    detect_mode, normalize_order, record_from_json, record_to_json)


def test_detect_mode():
    assert detect_mode([1, Fraction(1, 2)]) is Mode.EXACT
    assert detect_mode([0.5, 1.0]) is Mode.FLOAT
    assert detect_mode([]) is Mode.EXACT
    with pytest.raises(MixedModeError):
        detect_mode([1, 0.5])
    with pytest.raises(ParseError):
        detect_mode([True])


def test_normalize_order():
    assert normalize_order("2", Mode.EXACT) == 2
    assert normalize_order(Fraction(4, 2), Mode.EXACT) == 2
    assert normalize_order(0.5, Mode.FLOAT) == 0.5
    with pytest.raises(DomainError):
        normalize_order("1/2", Mode.EXACT)
    with pytest.raises(DomainError):
        normalize_order(-1, Mode.EXACT)
    with pytest.raises(DomainError):
        normalize_order(-0.5, Mode.FLOAT)
    with pytest.raises(MixedModeError):
        normalize_order(1.0, Mode.EXACT)


def test_records_reject_mixed_values():
    with pytest.raises(MixedModeError):
        TaylorCoeffs((Fraction(1), 0.5), Mode.EXACT)
    with pytest.raises(MixedModeError):
        KapteynFirstCoeffs.of(0, [1, 0.5])


def test_second_kind_chains_must_match():
    with pytest.raises(DomainError):
        KapteynSecondCoeffs.of(0, 0, [1, 2], [1])


def test_as_float():
    record = KapteynFirstCoeffs.of(1, [Fraction(1, 4), 2])
    converted = record.as_float()
    assert converted.mode is Mode.FLOAT
    assert converted.nu == 1.0
    assert converted.a == (0.25, 2.0)


def test_json_shapes():
    taylor = TaylorCoeffs.of([Fraction(1, 2), 3])
    assert record_to_json(taylor) == {"kind": "taylor", "mode": "exact", "coeffs": ["1/2", "3"]}
    first = KapteynFirstCoeffs.of(2, [1])
    assert record_to_json(first) == {"kind": "kapteyn1", "nu": "2", "mode": "exact", "coeffs": ["1"]}
    second = KapteynSecondCoeffs.of(0.5, 1.0, [0.25], [1.5])
    assert record_to_json(second) == {"kind": "kapteyn2", "mu": "0.5", "nu": "1.0", "mode": "float",
                                      "a": [0.25], "c": [1.5]}


@pytest.mark.parametrize("record", [
    TaylorCoeffs.of([Fraction(1, 3), 0, -7]),
    TaylorCoeffs.of([0.5, -1.25]),
    KapteynFirstCoeffs.of(3, [Fraction(-2, 5), 1]),
    KapteynSecondCoeffs.of(1, 2, [1, Fraction(1, 9)], [0, 4]),
    KapteynSecondCoeffs.of(0.5, 0.0, [0.1], [0.2]),
])
def test_json_roundtrip(record):
    assert record_from_json(record_to_json(record)) == record


def test_aliases_and_mode_inference():
    record = record_from_json({"a": [1, 0, 0], "nu": 0}, default_kind="kapteyn1")
    assert record == KapteynFirstCoeffs.of(0, [1, 0, 0])
    record = record_from_json({"b": ["0", "1"]}, default_kind="taylor")
    assert record == TaylorCoeffs.of([0, 1])
    assert record_from_json({"kind": "taylor", "coeffs": [0.5]}).mode is Mode.FLOAT
    second = record_from_json({"kind": "kapteyn2", "a": ["1", "2"]})
    assert second.c == (0, 0)


def test_decode_errors():
    with pytest.raises(ParseError):
        record_from_json({"kind": "laurent", "coeffs": []})
    with pytest.raises(ParseError):
        record_from_json({"kind": "taylor"})
    with pytest.raises(ParseError):
        record_from_json({"kind": "taylor", "coeffs": "1,2"})
    with pytest.raises(ParseError):
        record_from_json({"kind": "taylor", "mode": "interval", "coeffs": []})
    with pytest.raises(MixedModeError):
        record_from_json({"kind": "taylor", "coeffs": ["1", 0.5]})
    with pytest.raises(MixedModeError):
        record_from_json({"kind": "taylor", "mode": "exact", "coeffs": [0.5]})
    with pytest.raises(DomainError):
        record_from_json({"kind": "kapteyn1", "nu": "1/2", "coeffs": ["1"]})
    with pytest.raises(ParseError):
        record_from_json([1, 2])


@pytest.mark.parametrize("data", [
    {"kind": "taylor", "coeffs": ["1", True]},
    {"kind": "taylor", "mode": "exact", "coeffs": [False]},
    {"kind": "taylor", "mode": "float", "coeffs": [0.5, True]},
    {"kind": "kapteyn2", "nu": "0", "mu": "0", "a": ["1"], "c": [True]},
])
def test_boolean_coefficients_are_rejected(data):
    with pytest.raises(ParseError):
        record_from_json(data)
