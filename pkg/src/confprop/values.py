"""Measure results and the error hierarchy shared by all modules."""
from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from typing import Optional, Union

Number = Union[int, float, Fraction]


class ConfpropError(Exception):
    """Base class for errors raised by this package."""


class ParseError(ConfpropError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ResourceError(ConfpropError):
    """A bounded search ran out of budget (state cap, alignment cap)."""


class UnboundedNetError(ConfpropError):
    """The net can accumulate tokens without bound."""


class UndefinedMeasureError(ConfpropError):
    """Raised by estimator ``score`` when the measure has no value."""


@dataclass(frozen=True)
class MeasureValue:
    """A value in [0, 1] or an explanation of why none exists.

    ``exact`` keeps the rational value for count-based measures so that
    equality checks between scaled logs are not subject to rounding.
    """

    value: Optional[float]
    reason: Optional[str] = None
    exact: Optional[Fraction] = None

    @classmethod
    def of(cls, x: Number) -> "MeasureValue":
        if isinstance(x, (Fraction, int)):
            q = Fraction(x)
            if not 0 <= q <= 1:
                raise ValueError(f"measure value {q} outside [0, 1]")
            return cls(float(q), None, q)
        x = float(x)
        if not 0.0 <= x <= 1.0:
            raise ValueError(f"measure value {x} outside [0, 1]")
        return cls(x)

    @classmethod
    def undefined(cls, reason: str) -> "MeasureValue":
        return cls(None, reason)

    @property
    def defined(self) -> bool:
        return self.value is not None

    def __float__(self) -> float:
        if self.value is None:
            raise UndefinedMeasureError(self.reason or "undefined")
        return self.value

    def format(self, places: int = 6) -> str:
        if self.value is None:
            return f"undefined({self.reason})"
        src = Decimal(self.exact.numerator) / Decimal(self.exact.denominator) if self.exact is not None else Decimal(repr(self.value))
        q = Decimal(1).scaleb(-places)
        return str(src.quantize(q, rounding=ROUND_HALF_EVEN))

    def __repr__(self) -> str:
        return f"MeasureValue({self.format()})"
