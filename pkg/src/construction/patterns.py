"""Canonical enumeration of white/black interval patterns.

A level-``L`` pattern places ``m`` open intervals (at most ``L`` white and at
most ``L`` black) with strictly increasing endpoints on the grid

    G_L = {-L + j / L! : 0 <= j <= 2 L L!}

Levels are dovetailed: level ``L`` lists the patterns of level ``L`` that are
not already patterns of level ``L - 1``, ordered by

    (m, colour word with W < B, endpoint tuple by value)

which is also the serialization ``m;colors;e1,e2,...``. Every pattern with
rational endpoints appears exactly once. Indices grow very fast, so ranking
and unranking use closed-form binomial counts instead of listing patterns.

The triangle-free enumeration keeps the plain index. A plain pattern whose
white closure is sum-free is listed unchanged; any other is listed translated
by ``(L + 1)**2``, which moves its white closure into
``[L**2 + L + 1, L**2 + 3L + 1]``, a sum-free window. Every sum-free pattern
therefore appears at its own plain index. The K_s-free enumeration is the
plain one.
"""

import logging
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, replace
from enum import StrEnum
from fractions import Fraction
from functools import lru_cache

from src.core.exceptions import (
    InfeasibleCoverError,
    PreconditionError,
    ValidationError,
)
from src.observability.decorators import traced_operation

from .intervals import IntervalSet, Rational, RationalInterval, to_fraction

logger = logging.getLogger(__name__)

WHITE = "W"
BLACK = "B"
MAX_LOCATE_HALVINGS = 64


class FilterMode(StrEnum):
    PLAIN = "plain"
    TRIANGLE_FREE = "triangle_free"
    KS_FREE = "ks_free"


@dataclass(frozen=True)
class PatternFilter:
    """Restriction applied to the enumeration."""

    mode: FilterMode
    s: int | None = None

    def __post_init__(self) -> None:
        if self.mode is FilterMode.KS_FREE:
            if self.s is None or self.s < 4:
                raise ValidationError(f"ks_free mode needs s >= 4, got {self.s}", "s")
        elif self.s is not None:
            raise ValidationError(f"s is only meaningful in ks_free mode, not {self.mode}", "s")

    @classmethod
    def plain(cls) -> "PatternFilter":
        return cls(FilterMode.PLAIN)

    @classmethod
    def triangle_free(cls) -> "PatternFilter":
        return cls(FilterMode.TRIANGLE_FREE)

    @classmethod
    def ks_free(cls, s: int) -> "PatternFilter":
        return cls(FilterMode.KS_FREE, s)

    @classmethod
    def parse(cls, text: str) -> "PatternFilter":
        """Parse ``plain``, ``triangle_free`` (or ``trianglefree``) and ``ks_free:S``."""
        name, _, arg = text.strip().lower().replace("-", "_").partition(":")
        if name == "plain" and not arg:
            return cls.plain()
        if name in ("triangle_free", "trianglefree") and not arg:
            return cls.triangle_free()
        if name in ("ks_free", "ksfree") and arg.isdigit():
            return cls.ks_free(int(arg))
        raise ValidationError(f"unknown pattern filter '{text}'", "mode")

    @property
    def clique_bound(self) -> int | None:
        """Size of the smallest forbidden clique, if any."""
        if self.mode is FilterMode.TRIANGLE_FREE:
            return 3
        return self.s

    def text(self) -> str:
        return f"{self.mode}:{self.s}" if self.s is not None else str(self.mode)


# Grid and counting helpers


@lru_cache(maxsize=None)
def _factorial(level: int) -> int:
    return math.factorial(level)


def grid_size(level: int) -> int:
    """Number of points of the level grid."""
    return 2 * level * _factorial(level) + 1


def grid_value(t: int, level: int) -> Fraction:
    return Fraction(t, _factorial(level)) - level


def grid_index(value: Fraction, level: int) -> int | None:
    """Position of ``value`` on the level grid, or None if it is not a grid point."""
    scaled = (value + level) * _factorial(level)
    if scaled.denominator != 1 or not 0 <= scaled.numerator < grid_size(level):
        return None
    return scaled.numerator


def count_below(value: Fraction, level: int) -> int:
    """Number of level-grid points strictly below ``value``."""
    if level == 0:
        return 0
    raw = math.ceil((value + level) * _factorial(level))
    return min(max(raw, 0), grid_size(level))


def word_count(m: int, bound: int) -> int:
    """Colour words of length m with at most ``bound`` letters of each colour."""
    return sum(math.comb(m, w) for w in range(max(0, m - bound), min(m, bound) + 1))


def _completions(rest: int, whites: int, blacks: int, bound: int) -> int:
    return sum(
        math.comb(rest, w)
        for w in range(rest + 1)
        if whites + w <= bound and blacks + rest - w <= bound
    )


@lru_cache(maxsize=None)
def level_total(level: int) -> int:
    """Number of patterns of level at most ``level``."""
    if level <= 0:
        return 0
    n = grid_size(level)
    return sum(word_count(m, level) * math.comb(n, 2 * m) for m in range(1, 2 * level + 1))


def new_count(level: int) -> int:
    """Number of patterns whose level is exactly ``level``."""
    return level_total(level) - level_total(level - 1)


def first_index(level: int) -> int:
    return 1 + level_total(level - 1)


def level_of_index(n: int) -> int:
    if n < 1:
        raise ValidationError(f"pattern index must be >= 1, got {n}", "n")
    level = 1
    while level_total(level) < n:
        level += 1
    return level


def _new_with_m(level: int, m: int) -> int:
    return word_count(m, level) * math.comb(grid_size(level), 2 * m) - word_count(
        m, level - 1
    ) * math.comb(grid_size(level - 1), 2 * m)


def _new_with_word_prefix(level: int, m: int, rest: int, whites: int, blacks: int) -> int:
    return _completions(rest, whites, blacks, level) * math.comb(
        grid_size(level), 2 * m
    ) - _completions(rest, whites, blacks, level - 1) * math.comb(grid_size(level - 1), 2 * m)


def grid_level(value: Fraction) -> int:
    """Smallest L >= 1 with ``value`` a multiple of 1/L!."""
    q = value.denominator
    level, residue = 1, 1 % q
    while residue:
        level += 1
        residue = (residue * level) % q
    return level


class _EndpointWalk:
    """Counts new completions of an endpoint prefix, for rank and unrank.

    ``below(t)`` is the number of patterns of exactly this level that extend
    the current prefix and place the next endpoint strictly below grid index
    ``t``: every completion on G_L minus those lying entirely on G_{L-1}.
    """

    def __init__(self, level: int, k: int, old_word: bool):
        self.level = level
        self.k = k
        self.n = grid_size(level)
        self.n_old = grid_size(level - 1)
        self.last = -1
        self.last_old = -1
        self.on_old = old_word and level > 1
        self.position = 1

    def below(self, t: int) -> int:
        r = self.k - self.position + 1
        total = math.comb(self.n - 1 - self.last, r) - math.comb(self.n - t, r)
        if self.on_old:
            cb = max(count_below(grid_value(t, self.level), self.level - 1), self.last_old + 1)
            total -= math.comb(self.n_old - 1 - self.last_old, r) - math.comb(self.n_old - cb, r)
        return total

    def advance(self, t: int) -> None:
        if self.on_old:
            old = grid_index(grid_value(t, self.level), self.level - 1)
            if old is None:
                self.on_old = False
            else:
                self.last_old = old
        self.last = t
        self.position += 1


@dataclass(frozen=True)
class Pattern:
    """White and black families of open rational intervals with disjoint closures.

    ``index`` is the position in the enumeration that produced the pattern,
    ``level`` the enumeration level it belongs to and ``offset`` the
    translation the enumeration applied to the plain pattern at ``index``.
    """

    white: IntervalSet
    black: IntervalSet
    index: int
    level: int
    offset: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        parts = sorted(self.intervals(), key=lambda item: item[1].lo)
        if not parts:
            raise ValidationError("a pattern needs at least one interval")
        for _, part in parts:
            if part.lo_closed or part.hi_closed or part.is_degenerate:
                raise ValidationError(f"pattern intervals must be open and nondegenerate: {part}")
        for (_, a), (_, b) in zip(parts, parts[1:], strict=False):
            if not a.hi < b.lo:
                raise ValidationError(f"pattern closures overlap: {a} and {b}")

    def intervals(self) -> list[tuple[str, RationalInterval]]:
        return [(WHITE, p) for p in self.white] + [(BLACK, p) for p in self.black]

    def shape(self) -> tuple[str, tuple[Fraction, ...]]:
        """Colour word and endpoint tuple in ascending order."""
        parts = sorted(self.intervals(), key=lambda item: item[1].lo)
        word = "".join(colour for colour, _ in parts)
        endpoints = tuple(e for _, part in parts for e in (part.lo, part.hi))
        return word, endpoints

    def key(self) -> str:
        word, endpoints = self.shape()
        return f"{len(word)};{word};{','.join(str(e) for e in endpoints)}"

    def span(self) -> Fraction:
        """Largest absolute endpoint."""
        _, endpoints = self.shape()
        return max(abs(e) for e in endpoints)

    def text(self) -> str:
        return f"W: {self.white.text()} | B: {self.black.text()} | idx: {self.index}"

    def __str__(self) -> str:
        return self.text()


def natural_level(white: IntervalSet, black: IntervalSet) -> int:
    """Enumeration level of a plain pattern: grid, range and part-count levels combined."""
    endpoints = [e for part in (*white, *black) for e in (part.lo, part.hi)]
    grid = max(grid_level(e) for e in endpoints)
    extent = max(1, math.ceil(max(abs(e) for e in endpoints)))
    return max(grid, extent, len(white), len(black))


def translation(level: int) -> int:
    """Offset applied to level-``level`` patterns in the triangle-free enumeration."""
    return (level + 1) ** 2


def _unrank_plain(n: int) -> tuple[IntervalSet, IntervalSet, int]:
    level = level_of_index(n)
    r = n - first_index(level)

    for m in range(1, 2 * level + 1):
        count = _new_with_m(level, m)
        if r < count:
            break
        r -= count
    else:
        raise ValidationError(f"index {n} falls outside level {level}")

    word = []
    whites = blacks = 0
    for pos in range(m):
        rest = m - pos - 1
        white_count = _new_with_word_prefix(level, m, rest, whites + 1, blacks)
        if r < white_count:
            word.append(WHITE)
            whites += 1
        else:
            r -= white_count
            word.append(BLACK)
            blacks += 1

    k = 2 * m
    walk = _EndpointWalk(level, k, old_word=whites <= level - 1 and blacks <= level - 1)
    chosen = []
    for _ in range(k):
        lo, hi = walk.last + 1, walk.n - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if walk.below(mid) <= r:
                lo = mid
            else:
                hi = mid - 1
        r -= walk.below(lo)
        chosen.append(lo)
        walk.advance(lo)

    white_parts, black_parts = [], []
    for i, colour in enumerate(word):
        part = RationalInterval.open(grid_value(chosen[2 * i], level), grid_value(chosen[2 * i + 1], level))
        (white_parts if colour == WHITE else black_parts).append(part)
    return IntervalSet(tuple(white_parts)), IntervalSet(tuple(black_parts)), level


def _rank_plain(white: IntervalSet, black: IntervalSet) -> int:
    level = natural_level(white, black)
    parts = sorted(
        [(WHITE, p) for p in white] + [(BLACK, p) for p in black], key=lambda item: item[1].lo
    )
    m = len(parts)
    r = sum(_new_with_m(level, smaller) for smaller in range(1, m))

    whites = blacks = 0
    for pos, (colour, _) in enumerate(parts):
        rest = m - pos - 1
        if colour == BLACK:
            r += _new_with_word_prefix(level, m, rest, whites + 1, blacks)
            blacks += 1
        else:
            whites += 1

    walk = _EndpointWalk(level, 2 * m, old_word=whites <= level - 1 and blacks <= level - 1)
    for _, part in parts:
        for endpoint in (part.lo, part.hi):
            t = grid_index(endpoint, level)
            if t is None:
                raise ValidationError(f"endpoint {endpoint} is not on the level-{level} grid")
            r += walk.below(t)
            walk.advance(t)
    return first_index(level) + r


class PatternEnumerator:
    """Random-access enumeration and cover location for one pattern filter."""

    def __init__(self, pattern_filter: PatternFilter, max_halvings: int = MAX_LOCATE_HALVINGS):
        self.filter = pattern_filter
        self.max_halvings = max_halvings

    @property
    def sum_free(self) -> bool:
        return self.filter.mode is FilterMode.TRIANGLE_FREE

    def enumerate(self, n: int) -> Pattern:
        """The n-th pattern (1-based)."""
        white, black, level = _unrank_plain(n)
        if self.sum_free and not white.closure().is_sum_free_closure():
            offset = Fraction(translation(level))
            return Pattern(white.shift(offset), black.shift(offset), n, level, offset)
        return Pattern(white, black, n, level)

    def rank(self, white: IntervalSet, black: IntervalSet) -> Pattern:
        """Pattern with its enumeration index.

        A triangle-free pattern that is also listed translated at a smaller
        index ranks to the index where it appears unchanged.

        Raises:
            ValidationError: If the intervals are not a pattern of this enumeration.
        """
        if self.sum_free and not white.closure().is_sum_free_closure():
            raise ValidationError("white closure is not sum-free")
        candidate = Pattern(white, black, 0, natural_level(white, black))
        return replace(candidate, index=_rank_plain(white, black))

    @traced_operation("pattern_locate")
    def locate(
        self,
        whites: Iterable[Rational],
        blacks: Iterable[Rational],
        admissible: Callable[[Pattern], bool] | None = None,
    ) -> Pattern:
        """Pattern whose white part covers ``whites`` and black part covers ``blacks``.

        Each point gets its own open interval of half-width about ``delta`` with
        endpoints rounded inward to the grid of resolution 1/F!, where F is the
        smallest level with 1/F! < delta. ``delta`` starts at a quarter of the
        smallest gap (at most 1/4) and is halved while the cover is rejected.

        Raises:
            PreconditionError: If a point is both white and black.
            InfeasibleCoverError: If no cover is accepted within the halving budget.
        """
        white_points = sorted({to_fraction(x) for x in whites})
        black_points = sorted({to_fraction(x) for x in blacks})
        if set(white_points) & set(black_points):
            raise PreconditionError("white and black points must be disjoint")
        if not white_points and not black_points:
            return self.enumerate(1)

        points = sorted(white_points + black_points)
        details = {"whites": [str(p) for p in white_points], "blacks": [str(p) for p in black_points]}
        delta = initial_radius(points)

        reason = "no admissible cover"
        for halving in range(self.max_halvings + 1):
            resolution = _factorial(cover_level(delta))
            white = IntervalSet(tuple(_cover(p, delta, resolution) for p in white_points))
            black = IntervalSet(tuple(_cover(p, delta, resolution) for p in black_points))
            try:
                pattern = self.rank(white, black)
            except ValidationError as e:
                reason = e.message
            else:
                if admissible is None or admissible(pattern):
                    logger.debug("Located pattern %s after %d halvings", pattern.index, halving)
                    return pattern
                reason = "cover rejected by admissibility test"
            delta /= 2

        raise InfeasibleCoverError(
            reason, mode=str(self.filter.mode), halvings=self.max_halvings, details=details
        )


def initial_radius(points: Sequence[Fraction]) -> Fraction:
    """Starting cover half-width: a quarter of the smallest gap, at most 1/4."""
    ordered = sorted(points)
    gaps = [b - a for a, b in zip(ordered, ordered[1:], strict=False)]
    return min(min(gaps) / 4, Fraction(1, 4)) if gaps else Fraction(1, 4)


def cover_level(delta: Fraction) -> int:
    """Smallest level whose grid spacing is below delta."""
    level = 1
    while Fraction(1, _factorial(level)) >= delta:
        level += 1
    return level


def _cover(point: Fraction, delta: Fraction, resolution: int) -> RationalInterval:
    lo = Fraction(math.ceil((point - delta) * resolution), resolution)
    hi = Fraction(math.floor((point + delta) * resolution), resolution)
    return RationalInterval.open(lo, hi)


def enumerate_pattern(pattern_filter: PatternFilter, n: int) -> Pattern:
    return PatternEnumerator(pattern_filter).enumerate(n)


def locate(
    pattern_filter: PatternFilter,
    whites: Sequence[Rational],
    blacks: Sequence[Rational],
    admissible: Callable[[Pattern], bool] | None = None,
) -> Pattern:
    return PatternEnumerator(pattern_filter).locate(whites, blacks, admissible)
