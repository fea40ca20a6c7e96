"""
Rigorous interval values with outward rounding.

A BoundedValue [lo, hi] is guaranteed to contain the real number it stands for.
Every floating operation rounds its lower endpoint towards -inf and its upper
endpoint towards +inf with math.nextafter, so containment survives rounding.
Transcendental results are widened by one ulp on each side.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

Number = Union[int, float, Fraction, "BoundedValue"]

_EXACT_INT_LIMIT = 2 ** 53


def _down(x: float) -> float:
    return math.nextafter(x, -math.inf)


def _up(x: float) -> float:
    return math.nextafter(x, math.inf)


@dataclass(frozen=True)
class BoundedValue:
    """Closed interval [lo, hi] of floats."""

    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("BoundedValue endpoints must not be NaN")
        if self.lo > self.hi:
            raise ValueError(f"Invalid BoundedValue: [{self.lo}, {self.hi}]")

    # -- construction -------------------------------------------------------

    @classmethod
    def point(cls, x: float) -> "BoundedValue":
        x = float(x)
        return cls(x, x)

    @classmethod
    def from_fraction(cls, q: Fraction) -> "BoundedValue":
        q = Fraction(q)
        x = float(q)
        if Fraction(x) == q:
            return cls(x, x)
        return cls(_down(x), _up(x))

    @classmethod
    def from_int(cls, n: int) -> "BoundedValue":
        if abs(n) < _EXACT_INT_LIMIT:
            return cls(float(n), float(n))
        return cls.from_fraction(Fraction(n))

    @classmethod
    def from_mpf(cls, x) -> "BoundedValue":
        """Enclose an mpmath value computed at working precision well above 53 bits."""
        v = float(x)
        return cls(_down(v), _up(v))

    @classmethod
    def pi(cls) -> "BoundedValue":
        with mpmath.workdps(30):
            return cls.from_mpf(mpmath.pi)

    @classmethod
    def coerce(cls, other: Number) -> "BoundedValue":
        if isinstance(other, BoundedValue):
            return other
        if isinstance(other, bool):
            raise TypeError("bool is not a number here")
        if isinstance(other, int):
            return cls.from_int(other)
        if isinstance(other, Fraction):
            return cls.from_fraction(other)
        if isinstance(other, float):
            return cls.point(other)
        raise TypeError(f"cannot use {type(other).__name__} as BoundedValue")

    # -- inspection ---------------------------------------------------------

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: Number) -> bool:
        other = BoundedValue.coerce(x)
        return self.lo <= other.lo and other.hi <= self.hi

    def to_pair(self) -> list:
        return [self.lo, self.hi]

    def __repr__(self):
        return f"[{self.lo:.12g}, {self.hi:.12g}]"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: Number) -> "BoundedValue":
        o = BoundedValue.coerce(other)
        return BoundedValue(_down(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __sub__(self, other: Number) -> "BoundedValue":
        o = BoundedValue.coerce(other)
        return BoundedValue(_down(self.lo - o.hi), _up(self.hi - o.lo))

    def __rsub__(self, other: Number) -> "BoundedValue":
        return BoundedValue.coerce(other) - self

    def __neg__(self) -> "BoundedValue":
        return BoundedValue(-self.hi, -self.lo)

    def __mul__(self, other: Number) -> "BoundedValue":
        o = BoundedValue.coerce(other)
        products = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi]
        return BoundedValue(_down(min(products)), _up(max(products)))

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "BoundedValue":
        o = BoundedValue.coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError(f"division by interval containing zero: {o!r}")
        quotients = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi]
        return BoundedValue(_down(min(quotients)), _up(max(quotients)))

    def __rtruediv__(self, other: Number) -> "BoundedValue":
        return BoundedValue.coerce(other) / self

    def __pow__(self, k: int) -> "BoundedValue":
        if not isinstance(k, int):
            return self.pow_real(float(k))
        if k < 0:
            return 1 / (self ** -k)
        result = BoundedValue.point(1.0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- monotone functions ---------------------------------------------------

    def _require_positive(self, name: str) -> None:
        if self.lo <= 0:
            raise ValueError(f"{name} needs a positive interval, got {self!r}")

    def sqrt(self) -> "BoundedValue":
        lo = max(self.lo, 0.0)
        return BoundedValue(max(_down(math.sqrt(lo)), 0.0), _up(math.sqrt(self.hi)))

    def exp(self) -> "BoundedValue":
        return BoundedValue(max(_down(math.exp(self.lo)), 0.0), _up(math.exp(self.hi)))

    def log(self) -> "BoundedValue":
        self._require_positive("log")
        return BoundedValue(_down(math.log(self.lo)), _up(math.log(self.hi)))

    def pow_real(self, t: float) -> "BoundedValue":
        """x**t for a positive interval and a real exponent t."""
        self._require_positive("pow_real")
        a, b = math.pow(self.lo, t), math.pow(self.hi, t)
        lo, hi = (a, b) if t >= 0 else (b, a)
        return BoundedValue(max(_down(lo), 0.0), _up(hi))
