"""Exact arithmetic on finite unions of rational intervals.

Endpoints are ``fractions.Fraction`` values and nothing in this module touches
floating point: endpoint comparisons drive every construction built on top.

Textual format (round-trips exactly)::

    [1,2],(3/2,5]      two parts
    ∅                  empty set
"""

import bisect
import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from src.core.exceptions import EmptySetError, IntervalParseError, ValidationError

Rational = Fraction | int | str

EMPTY_TEXT = "∅"

_NUMBER = r"-?\d+(?:/\d+)?"
_PART_RE = re.compile(rf"([\[(])\s*({_NUMBER})\s*,\s*({_NUMBER})\s*([\])])")
_SEP_RE = re.compile(r"\s*,\s*")


def to_fraction(value: Rational) -> Fraction:
    """Coerce an int, a ``p/q`` string or a Fraction to a Fraction. Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise ValidationError(f"inexact endpoint {value!r}; use a Fraction or 'p/q' text")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise ValidationError(f"not a rational number: {value!r}") from e


@dataclass(frozen=True)
class RationalInterval:
    """Interval with rational endpoints; open or closed at either end."""

    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", to_fraction(self.lo))
        object.__setattr__(self, "hi", to_fraction(self.hi))
        if self.lo > self.hi:
            raise ValidationError(f"interval lower end {self.lo} exceeds upper end {self.hi}")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise ValidationError(f"degenerate interval at {self.lo} must be closed")

    @classmethod
    def open(cls, lo: Rational, hi: Rational) -> "RationalInterval":
        return cls(to_fraction(lo), to_fraction(hi), False, False)

    @classmethod
    def closed(cls, lo: Rational, hi: Rational) -> "RationalInterval":
        return cls(to_fraction(lo), to_fraction(hi), True, True)

    @classmethod
    def point(cls, x: Rational) -> "RationalInterval":
        value = to_fraction(x)
        return cls(value, value, True, True)

    def contains(self, x: Fraction) -> bool:
        above = self.lo < x or (self.lo_closed and x == self.lo)
        below = x < self.hi or (self.hi_closed and x == self.hi)
        return above and below

    def closure(self) -> "RationalInterval":
        return RationalInterval(self.lo, self.hi, True, True)

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def shift(self, t: Fraction) -> "RationalInterval":
        return RationalInterval(self.lo + t, self.hi + t, self.lo_closed, self.hi_closed)

    def intersection(self, other: "RationalInterval") -> "RationalInterval | None":
        """Common part of two intervals, or None when they are disjoint."""
        if self.lo > other.lo:
            lo, lo_closed = self.lo, self.lo_closed
        elif self.lo < other.lo:
            lo, lo_closed = other.lo, other.lo_closed
        else:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed

        if self.hi < other.hi:
            hi, hi_closed = self.hi, self.hi_closed
        elif self.hi > other.hi:
            hi, hi_closed = other.hi, other.hi_closed
        else:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed

        if lo < hi or (lo == hi and lo_closed and hi_closed):
            return RationalInterval(lo, hi, lo_closed, hi_closed)
        return None

    def text(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo},{self.hi}{right}"

    def __str__(self) -> str:
        return self.text()


def _canonicalize(parts: Iterable[RationalInterval]) -> tuple[RationalInterval, ...]:
    """Sort parts and merge those that overlap or touch at a closed junction."""
    ordered = sorted(parts, key=lambda p: (p.lo, not p.lo_closed))
    merged: list[RationalInterval] = []
    for part in ordered:
        if merged:
            last = merged[-1]
            touching = part.lo == last.hi and (last.hi_closed or part.lo_closed)
            if part.lo < last.hi or touching:
                if part.hi > last.hi:
                    hi, hi_closed = part.hi, part.hi_closed
                elif part.hi == last.hi:
                    hi, hi_closed = last.hi, last.hi_closed or part.hi_closed
                else:
                    hi, hi_closed = last.hi, last.hi_closed
                merged[-1] = RationalInterval(last.lo, hi, last.lo_closed, hi_closed)
                continue
        merged.append(part)
    return tuple(merged)


@dataclass(frozen=True)
class IntervalSet:
    """Finite union of disjoint rational intervals, kept in canonical form.

    Parts are sorted ascending and pairwise disjoint; parts that overlap or
    touch with a closed endpoint at the junction are merged. Instances are
    immutable and safe to share across threads.
    """

    parts: tuple[RationalInterval, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", _canonicalize(self.parts))

    @classmethod
    def _from_canonical(cls, parts: Iterable[RationalInterval]) -> "IntervalSet":
        instance = object.__new__(cls)
        object.__setattr__(instance, "parts", tuple(parts))
        return instance

    @classmethod
    def of(cls, *parts: RationalInterval) -> "IntervalSet":
        return cls(tuple(parts))

    @classmethod
    def points(cls, xs: Iterable[Rational]) -> "IntervalSet":
        """Set of degenerate point intervals."""
        return cls(tuple(RationalInterval.point(x) for x in xs))

    @classmethod
    def parse(cls, text: str) -> "IntervalSet":
        """Parse the textual format produced by :meth:`text`."""
        stripped = text.strip()
        if stripped in ("", EMPTY_TEXT):
            return cls()
        parts = []
        pos = 0
        while True:
            match = _PART_RE.match(stripped, pos)
            if match is None:
                raise IntervalParseError(text, f"expected an interval at position {pos}")
            left, lo, hi, right = match.groups()
            try:
                parts.append(RationalInterval(Fraction(lo), Fraction(hi), left == "[", right == "]"))
            except (ValidationError, ZeroDivisionError) as e:
                raise IntervalParseError(text, str(e)) from e
            pos = match.end()
            if pos == len(stripped):
                break
            sep = _SEP_RE.match(stripped, pos)
            if sep is None or sep.end() == len(stripped):
                raise IntervalParseError(text, f"expected ',' between parts at position {pos}")
            pos = sep.end()
        return cls(tuple(parts))

    @cached_property
    def _los(self) -> list[Fraction]:
        return [p.lo for p in self.parts]

    @cached_property
    def _his(self) -> list[Fraction]:
        return [p.hi for p in self.parts]

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[RationalInterval]:
        return iter(self.parts)

    @property
    def is_empty(self) -> bool:
        return not self.parts

    # Membership

    def contains(self, x: Rational) -> bool:
        """True iff x lies in some part, respecting open and closed ends."""
        value = to_fraction(x)
        i = bisect.bisect_right(self._los, value) - 1
        return i >= 0 and self.parts[i].contains(value)

    def contains_closure(self, x: Rational) -> bool:
        """True iff x lies in the topological closure of the set."""
        value = to_fraction(x)
        i = bisect.bisect_right(self._los, value) - 1
        return i >= 0 and value <= self.parts[i].hi

    # Set algebra

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.parts + other.parts)

    def append_above(self, other: "IntervalSet") -> "IntervalSet":
        """Union with a set lying strictly above this one, without re-sorting."""
        if self.is_empty:
            return other
        if other.is_empty:
            return self
        if other.parts[0].lo > self.parts[-1].hi:
            return IntervalSet._from_canonical(self.parts + other.parts)
        return self.union(other)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        i = j = 0
        a, b = self.parts, other.parts
        while i < len(a) and j < len(b):
            piece = a[i].intersection(b[j])
            if piece is not None:
                out.append(piece)
            if (a[i].hi, a[i].hi_closed) < (b[j].hi, b[j].hi_closed):
                i += 1
            else:
                j += 1
        return IntervalSet(tuple(out))

    def _complement_within(self, lo: Fraction, hi: Fraction) -> "IntervalSet":
        gaps = []
        gap_lo, gap_lo_closed = lo, True
        for part in self.parts:
            gap_hi, gap_hi_closed = part.lo, not part.lo_closed
            if gap_lo < gap_hi or (gap_lo == gap_hi and gap_lo_closed and gap_hi_closed):
                gaps.append(RationalInterval(gap_lo, gap_hi, gap_lo_closed, gap_hi_closed))
            gap_lo, gap_lo_closed = part.hi, not part.hi_closed
        if gap_lo < hi or (gap_lo == hi and gap_lo_closed):
            gaps.append(RationalInterval(gap_lo, hi, gap_lo_closed, True))
        return IntervalSet._from_canonical(gaps)

    def subtract(self, other: "IntervalSet") -> "IntervalSet":
        if not self.parts or not other.parts:
            return self
        lo = min(self.parts[0].lo, other.parts[0].lo) - 1
        hi = max(self.parts[-1].hi, other.parts[-1].hi) + 1
        return self.intersect(other._complement_within(lo, hi))

    def clip(self, lo: Rational, hi: Rational) -> "IntervalSet":
        """Intersection with the closed interval [lo, hi]."""
        return self.intersect(IntervalSet.of(RationalInterval.closed(lo, hi)))

    def closure(self) -> "IntervalSet":
        return IntervalSet(tuple(p.closure() for p in self.parts))

    def shift(self, t: Rational) -> "IntervalSet":
        offset = to_fraction(t)
        return IntervalSet._from_canonical(p.shift(offset) for p in self.parts)

    def issubset(self, other: "IntervalSet") -> bool:
        return self.subtract(other).is_empty

    # Sum-freeness

    def is_sum_free_closure(self) -> bool:
        """True iff no x, y, z in the closure satisfy x + y = z.

        For every pair of parts with closures [a, b] and [c, d], the sum range
        [a + c, b + d] is tested against the closures of all parts; the first
        part ending at or above the sum's lower end is the only candidate.
        """
        if not self.parts:
            return True
        los, his = self._los, self._his
        top = his[-1]
        count = len(self.parts)
        for i in range(count):
            for j in range(i, count):
                sum_lo = los[i] + los[j]
                if sum_lo > top:
                    break
                k = bisect.bisect_left(his, sum_lo)
                if k < count and los[k] <= his[i] + his[j]:
                    return False
        return True

    # Extrema

    def min(self) -> Fraction:
        if not self.parts:
            raise EmptySetError("min")
        return self.parts[0].lo

    def max(self) -> Fraction:
        if not self.parts:
            raise EmptySetError("max")
        return self.parts[-1].hi

    def total_length(self) -> Fraction:
        return sum((p.length for p in self.parts), Fraction(0))

    def text(self) -> str:
        return ",".join(p.text() for p in self.parts) if self.parts else EMPTY_TEXT

    def __str__(self) -> str:
        return self.text()
