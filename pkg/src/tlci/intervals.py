"""Intervals over the non-negative rationals, with exact endpoints.

Endpoints are ``fractions.Fraction`` (never floats).  ``hi is None`` stands
for an unbounded right end and forces an open right end.  Empty intervals
cannot be constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Rat = Union[Fraction, int, str]


def rat(x: Rat) -> Fraction:
    """Coerce ints / 'p/q' / decimal strings to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not allowed in interval arithmetic")
    return Fraction(x)


@dataclass(frozen=True)
class Interval:
    """A non-empty interval ``<lo, hi>`` with 0 <= lo and lo <= hi."""

    lo: Fraction
    hi: Optional[Fraction]  # None = +inf
    lo_closed: bool
    hi_closed: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", rat(self.lo))
        if self.hi is not None:
            object.__setattr__(self, "hi", rat(self.hi))
        if self.lo < 0:
            raise ValueError("interval endpoints must be non-negative")
        if self.hi is None:
            if self.hi_closed:
                raise ValueError("an unbounded interval must be right-open")
            return
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise ValueError("empty interval: equal endpoints need closed ends")

    # -- predicates ---------------------------------------------------------

    def contains(self, t: Fraction) -> bool:
        if t < self.lo or (t == self.lo and not self.lo_closed):
            return False
        if self.hi is None:
            return True
        if t > self.hi or (t == self.hi and not self.hi_closed):
            return False
        return True

    def is_singular(self) -> bool:
        """Single positive point [a,a]; [0,0] is the degenerate now-window
        and is not flagged."""
        return self.hi is not None and self.lo == self.hi and self.lo > 0

    def is_unilateral(self) -> bool:
        """[0, b> or <a, inf) shapes (the TLC-admissible decorations)."""
        return (self.lo == 0 and self.lo_closed) or self.hi is None

    def is_bounded(self) -> bool:
        return self.hi is not None

    def width(self) -> Optional[Fraction]:
        return None if self.hi is None else self.hi - self.lo

    # -- arithmetic ---------------------------------------------------------

    def shift(self, d: Rat) -> "Interval":
        d = rat(d)
        return Interval(self.lo + d, None if self.hi is None else self.hi + d,
                        self.lo_closed, self.hi_closed)

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        hi = "inf" if self.hi is None else _fmt(self.hi)
        return f"{left}{_fmt(self.lo)},{hi}{right}"


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def closed(a: Rat, b: Rat) -> Interval:
    return Interval(rat(a), rat(b), True, True)


def open_(a: Rat, b: Optional[Rat]) -> Interval:
    return Interval(rat(a), None if b is None else rat(b), False, False)


def closed_open(a: Rat, b: Optional[Rat]) -> Interval:
    return Interval(rat(a), None if b is None else rat(b), True, False)


def open_closed(a: Rat, b: Rat) -> Interval:
    return Interval(rat(a), rat(b), False, True)


# Frequently used shapes.
FULL = closed_open(0, None)          # [0, inf)
GT0 = open_(0, None)                 # (0, inf)
AT0 = closed(0, 0)                   # [0, 0], i.e. "<= 0"


def up_to(b: Rat, incl: bool) -> Interval:
    """[0, b] or [0, b)."""
    return Interval(Fraction(0), rat(b), True, incl)


def at_least(a: Rat) -> Interval:
    """[a, inf)."""
    return closed_open(a, None)


def parse_interval(text: str) -> Interval:
    """Parse '[1,2)', '(0,1/2]', '[0,inf)' style interval literals."""
    s = text.strip()
    if len(s) < 4 or s[0] not in "([" or s[-1] not in ")]":
        raise ValueError(f"bad interval literal: {text!r}")
    lo_closed = s[0] == "["
    hi_closed = s[-1] == "]"
    body = s[1:-1]
    parts = body.split(",")
    if len(parts) != 2:
        raise ValueError(f"bad interval literal: {text!r}")
    lo = rat(parts[0].strip())
    hi_text = parts[1].strip()
    hi = None if hi_text in ("inf", "oo") else rat(hi_text)
    return Interval(lo, hi, lo_closed, hi_closed)
