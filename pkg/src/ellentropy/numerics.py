"""Small numeric helpers: compensated summation, intervals, big-int logs."""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple


class Interval(NamedTuple):
    """A certified enclosure [lo, hi] of a real quantity."""

    lo: float
    hi: float

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __add__(self, other):  # type: ignore[override]
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        return Interval(self.lo + other, self.hi + other)

    def scale(self, factor: float) -> "Interval":
        # factor >= 0 preserves orientation
        if factor < 0:
            return Interval(self.hi * factor, self.lo * factor)
        return Interval(self.lo * factor, self.hi * factor)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


def kahan_sum(values: Iterable[float]) -> float:
    """Compensated summation; partial sums here reach 1e6 terms."""
    total = 0.0
    carry = 0.0
    for v in values:
        y = v - carry
        t = total + y
        carry = (t - total) - y
        total = t
    return total


def log2_bigint(n: int) -> float:
    """log2 of a positive integer of arbitrary size."""
    if n <= 0:
        raise ValueError("log2 of non-positive integer")
    return math.log2(n)
