"""The interval domain restricted to rational endpoints, with its partial metric."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .distance import DistanceValue, exact


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def __contains__(self, other: "RationalInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def diam(self) -> Fraction:
        return self.hi - self.lo

    def widen(self, margin) -> "RationalInterval":
        margin = Fraction(margin)
        return RationalInterval(self.lo - margin, self.hi + margin)

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def hull(a: RationalInterval, b: RationalInterval) -> RationalInterval:
    return RationalInterval(min(a.lo, b.lo), max(a.hi, b.hi))


def p_int(a: RationalInterval, b: RationalInterval) -> DistanceValue:
    """Diameter of the convex hull: the smallest interval containing both."""
    return exact(hull(a, b).diam())


def int_leq(a: RationalInterval, b: RationalInterval) -> bool:
    """Information order: reverse inclusion."""
    return b in a
