from __future__ import annotations
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction
import operator
import re
from typing import Any, Union
from pydantic import GetCoreSchemaHandler
from pydantic_core import CoreSchema, core_schema


class FusionkitError(Exception):
    """Base class for all errors raised by ``fusionkit``"""


class InvalidAlgebraError(FusionkitError, ValueError):
    """
    Raised when asked for a simple Lie algebra of an unsupported type, or when
    an algebra name cannot be parsed
    """

    def __init__(self, series: str, rank: int | None = None) -> None:
        #: The requested series letter (or the unparsable name)
        self.series = series
        #: The requested rank, if one was given
        self.rank = rank

    def __str__(self) -> str:
        if self.rank is None:
            return f"Invalid algebra name: {self.series!r}"
        return f"Unsupported simple Lie algebra: {self.series}{self.rank}"


class WeightError(FusionkitError, ValueError):
    """
    Raised for a malformed weight: an unparsable string, a coordinate vector of
    the wrong length, or a non-dominant weight where a dominant one is required
    """


class NotInAlcoveError(WeightError):
    """Raised when a weight outside of P_ℓ is passed to a level-ℓ operation"""

    def __init__(self, weight: Weight, level: int) -> None:
        self.weight = weight
        self.level = level

    def __str__(self) -> str:
        return f"Weight {self.weight} is not in P_{self.level}"


class NotDominatingError(WeightError):
    """Raised when an operation requires λ≫μ and it does not hold"""

    def __init__(self, lam: Weight, mu: Weight) -> None:
        self.lam = lam
        self.mu = mu

    def __str__(self) -> str:
        return (
            f"λ={self.lam} does not dominate μ={self.mu}: some λ+ν, ν a weight"
            " of V(μ), is not dominant"
        )


class CapExceededError(FusionkitError, ValueError):
    """Raised when a computation would exceed a configured resource cap"""

    def __init__(self, what: str, value: int, limit: int) -> None:
        self.what = what
        self.value = value
        self.limit = limit

    def __str__(self) -> str:
        return f"{self.what} is {self.value}, above the configured limit of {self.limit}"


class ConfigError(FusionkitError, ValueError):
    """Raised for an invalid configuration value"""


class InvariantViolation(FusionkitError, RuntimeError):
    """
    Raised when a result contradicts a guaranteed mathematical property.  This
    always indicates either a bug or a counterexample, never bad input.
    """


@dataclass(frozen=True, order=True, init=False)
class Weight:
    """
    An integral weight, given by its coordinates against the fundamental
    weights ω_1, …, ω_r.  Ordering is lexicographic on the coordinates.
    """

    coords: tuple[int, ...]

    def __init__(self, coords: Iterable[int]) -> None:
        object.__setattr__(self, "coords", tuple(map(operator.index, coords)))

    @classmethod
    def __get_pydantic_core_schema__(
        cls, _source_type: Any, _handler: GetCoreSchemaHandler
    ) -> CoreSchema:
        from_list = core_schema.no_info_after_validator_function(
            cls, core_schema.list_schema(core_schema.int_schema())
        )
        return core_schema.json_or_python_schema(
            json_schema=from_list,
            python_schema=core_schema.union_schema(
                [core_schema.is_instance_schema(cls), from_list]
            ),
            serialization=core_schema.plain_serializer_function_ser_schema(list),
        )

    @classmethod
    def zero(cls, rank: int) -> Weight:
        return cls((0,) * rank)

    @classmethod
    def fundamental(cls, rank: int, i: int) -> Weight:
        """ω_{i+1}, using 0-based indices"""
        return cls(int(j == i) for j in range(rank))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __str__(self) -> str:
        return ",".join(map(str, self.coords))

    def __repr__(self) -> str:
        return f"Weight({self.coords!r})"

    def _check_rank(self, other: Weight) -> None:
        if len(self) != len(other):
            raise WeightError(
                f"Dimension mismatch: {self} has {len(self)} coordinates, {other}"
                f" has {len(other)}"
            )

    def __add__(self, other: Weight) -> Weight:
        if not isinstance(other, Weight):
            return NotImplemented
        self._check_rank(other)
        return Weight(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: Weight) -> Weight:
        if not isinstance(other, Weight):
            return NotImplemented
        self._check_rank(other)
        return Weight(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> Weight:
        return Weight(-a for a in self.coords)

    def __mul__(self, k: int) -> Weight:
        if not isinstance(k, int):
            return NotImplemented
        return Weight(k * a for a in self.coords)

    __rmul__ = __mul__

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def is_regular_dominant(self) -> bool:
        return all(c > 0 for c in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def scaled(self, q: Fraction | int) -> RationalWeight:
        return RationalWeight(q * c for c in self.coords)


@dataclass(frozen=True, order=True, init=False)
class RationalWeight:
    """A weight with rational fundamental-weight coordinates"""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable[Fraction | int]) -> None:
        object.__setattr__(self, "coords", tuple(map(Fraction, coords)))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __str__(self) -> str:
        return ",".join(map(str, self.coords))

    def __repr__(self) -> str:
        return f"RationalWeight(({', '.join(map(str, self.coords))}))"

    def __add__(self, other: RationalWeight | Weight) -> RationalWeight:
        if not isinstance(other, (RationalWeight, Weight)):
            return NotImplemented
        if len(self) != len(other):
            raise WeightError(f"Dimension mismatch: {self} vs. {other}")
        return RationalWeight(a + b for a, b in zip(self.coords, other.coords))

    __radd__ = __add__

    def __sub__(self, other: RationalWeight | Weight) -> RationalWeight:
        if not isinstance(other, (RationalWeight, Weight)):
            return NotImplemented
        if len(self) != len(other):
            raise WeightError(f"Dimension mismatch: {self} vs. {other}")
        return RationalWeight(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> RationalWeight:
        return RationalWeight(-a for a in self.coords)

    def __mul__(self, q: Fraction | int) -> RationalWeight:
        if not isinstance(q, (Fraction, int)):
            return NotImplemented
        return RationalWeight(q * a for a in self.coords)

    __rmul__ = __mul__

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def to_weight(self) -> Weight:
        """
        :raises WeightError: if some coordinate is not an integer
        """
        if not self.is_integral():
            raise WeightError(f"Rational weight {self} is not integral")
        return Weight(c.numerator for c in self.coords)


AnyWeight = Union[Weight, RationalWeight]


def parse_weight(s: str, rank: int | None = None) -> Weight:
    """
    Parse a weight given as comma-separated fundamental-weight coordinates,
    e.g. ``"1,0,2"``

    :raises WeightError: if ``s`` is malformed or does not have ``rank``
        coordinates
    """
    if not re.fullmatch(r"\s*-?\d+(\s*,\s*-?\d+)*\s*", s):
        raise WeightError(f"Invalid weight: {s!r}")
    w = Weight(int(c) for c in s.split(","))
    if rank is not None and len(w) != rank:
        raise WeightError(
            f"Weight {s!r} has {len(w)} coordinates; expected {rank} for this algebra"
        )
    return w


def parse_algebra(s: str) -> tuple[str, int]:
    """
    Split an algebra name like ``"A2"``, ``"g2"`` or ``"E8"`` into its series
    letter and rank.  The pair is not checked for being a valid simple type.

    :raises InvalidAlgebraError: if ``s`` is not of the form letter + number
    """
    m = re.fullmatch(r"\s*([A-Ga-g])\s*_?(\d+)\s*", s)
    if not m:
        raise InvalidAlgebraError(s)
    return (m[1].upper(), int(m[2]))


def dot(xs: Iterable[Any], ys: Iterable[Any]) -> Any:
    return sum((x * y for x, y in zip(xs, ys, strict=True)), 0)
