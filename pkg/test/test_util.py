from __future__ import annotations
from fractions import Fraction
from pydantic import BaseModel
import pytest
from fusionkit.util import (
    InvalidAlgebraError,
    RationalWeight,
    Weight,
    WeightError,
    dot,
    parse_algebra,
    parse_weight,
)


class Holder(BaseModel):
    weight: Weight


@pytest.mark.parametrize(
    "s,coords",
    [
        ("0", (0,)),
        ("3", (3,)),
        ("1,1", (1, 1)),
        (" 1, 0 ,2 ", (1, 0, 2)),
        ("-1,2", (-1, 2)),
    ],
)
def test_parse_weight(s: str, coords: tuple[int, ...]) -> None:
    w = parse_weight(s)
    assert w == Weight(coords)
    assert w.coords == coords
    assert len(w) == len(coords)


@pytest.mark.parametrize("s", ["", "a", "1,,2", "1.5", "1;2", "(1,2)", ","])
def test_parse_weight_invalid(s: str) -> None:
    with pytest.raises(WeightError):
        parse_weight(s)


def test_parse_weight_rank() -> None:
    assert parse_weight("1,2", 2) == Weight((1, 2))
    with pytest.raises(WeightError) as excinfo:
        parse_weight("1,2", 3)
    assert "expected 3" in str(excinfo.value)


@pytest.mark.parametrize(
    "s,series,rank",
    [
        ("A1", "A", 1),
        ("a2", "A", 2),
        ("G2", "G", 2),
        ("E_8", "E", 8),
        (" c3 ", "C", 3),
        ("D12", "D", 12),
    ],
)
def test_parse_algebra(s: str, series: str, rank: int) -> None:
    assert parse_algebra(s) == (series, rank)


@pytest.mark.parametrize("s", ["", "A", "H2", "AA2", "2A", "sl2"])
def test_parse_algebra_invalid(s: str) -> None:
    with pytest.raises(InvalidAlgebraError) as excinfo:
        parse_algebra(s)
    assert str(excinfo.value) == f"Invalid algebra name: {s!r}"
    assert excinfo.value.rank is None


def test_weight_arithmetic() -> None:
    a = Weight((1, 2))
    b = Weight((3, -1))
    assert a + b == Weight((4, 1))
    assert a - b == Weight((-2, 3))
    assert -a == Weight((-1, -2))
    assert 3 * a == Weight((3, 6))
    assert a * 3 == Weight((3, 6))
    assert str(b) == "3,-1"
    assert repr(a) == "Weight((1, 2))"


def test_weight_dimension_mismatch() -> None:
    with pytest.raises(WeightError):
        Weight((1, 2)) + Weight((1, 2, 3))
    with pytest.raises(WeightError):
        Weight((1,)) - Weight((1, 2))


def test_weight_predicates() -> None:
    assert Weight((0, 2)).is_dominant()
    assert not Weight((0, 2)).is_regular_dominant()
    assert Weight((1, 2)).is_regular_dominant()
    assert not Weight((1, -1)).is_dominant()
    assert Weight.zero(3).is_zero()
    assert Weight.fundamental(3, 1) == Weight((0, 1, 0))


def test_weight_order() -> None:
    ws = [Weight((1, 0)), Weight((0, 2)), Weight((0, 0)), Weight((1, -1))]
    assert sorted(ws) == [
        Weight((0, 0)),
        Weight((0, 2)),
        Weight((1, -1)),
        Weight((1, 0)),
    ]


def test_rational_weight() -> None:
    x = Weight((2, 4)).scaled(Fraction(1, 2))
    assert x == RationalWeight((1, 2))
    assert x.is_integral()
    assert x.to_weight() == Weight((1, 2))
    y = Weight((1, 1)).scaled(Fraction(4, 3))
    assert not y.is_integral()
    assert str(y) == "4/3,4/3"
    assert y + Weight((1, 0)) == RationalWeight((Fraction(7, 3), Fraction(4, 3)))
    assert Weight((1, 0)) + y == y + Weight((1, 0))
    assert y * 3 == RationalWeight((4, 4))
    with pytest.raises(WeightError):
        y.to_weight()


def test_weight_pydantic() -> None:
    h = Holder(weight=Weight((1, 0, 2)))
    assert h.model_dump_json() == '{"weight":[1,0,2]}'
    assert Holder.model_validate_json('{"weight": [3, 1]}').weight == Weight((3, 1))
    assert Holder.model_validate({"weight": [0, 1]}).weight == Weight((0, 1))


def test_dot() -> None:
    assert dot([1, 2, 3], [4, 5, 6]) == 32
    assert dot([Fraction(1, 2)], [4]) == 2
    with pytest.raises(ValueError):
        dot([1, 2], [1])
