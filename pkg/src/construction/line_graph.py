"""Shift-invariant universal and triangle-free universal graphs on the line.

Vertices are the reals; ``x ~ y`` iff ``|x - y|`` lies in the closure of
``Z = base ∪ Z_1 ∪ Z_2 ∪ ...``. Step ``n`` takes the n-th pattern with white
intervals ``(a_i, a'_i)`` and puts

    Z_n = ∪ (c - a'_i - eps, c - a_i + eps)

so that points near ``c`` are joined to the white part and not to the black
part. The shift ``c`` comes from :mod:`layout`; ``eps`` starts at a quarter of
the pattern's smallest endpoint gap (at most 1/2) and is halved until the step
conditions hold.

The model is a growable cache: a sequential prefix of built steps plus single
steps materialized on demand for far-away distances. Extension is serialized
by a re-entrant lock; readers only ever see fully built steps.
"""

import logging
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from src.core.config import ConstructionConfig
from src.core.exceptions import (
    ConstructionError,
    LoopError,
    PreconditionError,
    StepLimitError,
    ValidationError,
)
from src.observability.decorators import traced_operation

from .intervals import IntervalSet, Rational, RationalInterval, to_fraction
from .layout import StepLayout
from .patterns import (
    FilterMode,
    Pattern,
    PatternEnumerator,
    PatternFilter,
    initial_radius,
)

logger = logging.getLogger(__name__)

SKIP = "SKIP"


def sum_free_offset(points: list[Fraction]) -> Fraction:
    """Translation centring ``points`` so that no sum relation among them stays exact.

    After adding ``t``, ``w_i + w_j = w_k`` would need ``t = w_k - w_i - w_j``.
    Those values lie on the grid 1/D (D the common denominator) and the
    centring shift on 1/(2D), so ``t`` keeps distance at least 1/(4D) from all
    of them and small enough covers of the shifted whites are sum-free.
    """
    denominator = math.lcm(*(p.denominator for p in points))
    centre = (points[0] + points[-1]) / 2
    return -centre + Fraction(1, 4 * denominator)


@dataclass(frozen=True)
class LineStep:
    """One built step: pattern, shift, epsilon and the added set."""

    n: int
    pattern: Pattern
    shift: Fraction
    epsilon: Fraction | None
    z: IntervalSet

    @property
    def skipped(self) -> bool:
        return self.epsilon is None

    def dump_line(self) -> str:
        eps = SKIP if self.epsilon is None else str(self.epsilon)
        return f"{self.n} | {self.pattern.index} | {self.shift} | {eps} | {self.z.text()}"


class LineGraphModel:
    """Lazily extended construction of Z on the positive half-line."""

    def __init__(self, mode: PatternFilter | str = "plain", config: ConstructionConfig | None = None):
        self.filter = PatternFilter.parse(mode) if isinstance(mode, str) else mode
        if self.filter.mode is FilterMode.KS_FREE:
            raise ValidationError("line models support plain and triangle_free modes only", "mode")
        self.config = config or ConstructionConfig()
        self.enumerator = PatternEnumerator(self.filter, self.config.locate_halvings)
        self.layout = StepLayout(triangle_free=self.triangle_free)
        self._lock = threading.RLock()
        self._steps: list[LineStep] = []
        self._sparse: dict[int, LineStep] = {}
        self._z_prefix = self.layout.base

    @property
    def triangle_free(self) -> bool:
        return self.filter.mode is FilterMode.TRIANGLE_FREE

    @property
    def base(self) -> IntervalSet:
        return self.layout.base

    @property
    def built(self) -> tuple[LineStep, ...]:
        return tuple(self._steps)

    @property
    def z_prefix(self) -> IntervalSet:
        return self._z_prefix

    @property
    def frontier(self) -> int:
        return len(self._steps) + 1

    def describe(self) -> str:
        return "line-trianglefree" if self.triangle_free else "line-universal"

    def summary(self) -> dict:
        return {"model": self.describe(), "frontier": self.frontier, "cached": len(self._sparse)}

    # Building

    def step(self) -> LineStep:
        """Build the next sequential step and add it to the prefix."""
        with self._lock:
            n = self.frontier
            built = self._sparse.pop(n, None) or self._materialize(n)
            self._steps.append(built)
            self._z_prefix = self._z_prefix.append_above(built.z)
            return built

    @traced_operation("line_extend")
    def extend_to_bound(self, bound: Rational) -> "LineGraphModel":
        """Build every step whose slot starts at or below ``bound``.

        Raises:
            StepLimitError: If more than ``max_steps`` steps would be needed.
        """
        value = to_fraction(bound)
        if value < 0:
            raise ValidationError(f"bound must be non-negative, got {value}", "bound")
        needed = self.layout.steps_starting_at_or_below(value)
        if needed > self.config.max_steps:
            raise StepLimitError(needed, self.config.max_steps)
        self._build_through(needed)
        return self

    def _build_through(self, n: int) -> None:
        with self._lock:
            while self.frontier <= n:
                self.step()

    def step_by_index(self, n: int, pattern: Pattern | None = None) -> LineStep:
        """Step n, from the prefix or materialized on its own."""
        if n < self.frontier:
            return self._steps[n - 1]
        with self._lock:
            if n < self.frontier:
                return self._steps[n - 1]
            cached = self._sparse.get(n)
            if cached is None:
                cached = self._materialize(n, pattern)
                self._sparse[n] = cached
            return cached

    def _materialize(self, n: int, pattern: Pattern | None = None) -> LineStep:
        window, j = self.layout.position(n)
        pattern = pattern if pattern is not None else self.enumerator.enumerate(n)
        c = window.centre(j) + pattern.offset
        slot_lo, slot_hi = window.slot(j)
        whites, blacks = list(pattern.white), list(pattern.black)

        z_low = IntervalSet()
        if self.triangle_free:
            z_low = self.closure_between(0, 2 * window.radius + 1)
            if self._differences_meet(whites, z_low):
                logger.debug("Step %d skipped: white differences meet the low part of Z", n)
                return LineStep(n, pattern, c, None, IntervalSet())

        _, endpoints = pattern.shape()
        gaps = [b - a for a, b in zip(endpoints, endpoints[1:], strict=False)]
        eps = min(min(gaps), Fraction(2)) / 4

        for _ in range(self.config.eps_halvings + 1):
            z = IntervalSet(tuple(RationalInterval.open(c - w.hi - eps, c - w.lo + eps) for w in whites))
            black_zone = IntervalSet(
                tuple(RationalInterval.closed(c - b.hi - eps, c - b.lo + eps) for b in blacks)
            )
            if (
                len(z) == len(whites)
                and z.intersect(black_zone).is_empty
                and (z.is_empty or (slot_lo <= z.min() and z.max() <= slot_hi))
                and (not self.triangle_free or z_low.union(z).is_sum_free_closure())
            ):
                return LineStep(n, pattern, c, eps, z)
            eps /= 2

        raise ConstructionError(
            f"no epsilon satisfied the step conditions after {self.config.eps_halvings} halvings",
            step=n,
            details={"pattern": pattern.text(), "shift": str(c)},
        )

    @staticmethod
    def _differences_meet(whites: list[RationalInterval], z_low: IntervalSet) -> bool:
        """True iff some closure difference of two white intervals lies in ``z_low``."""
        ranges = [
            RationalInterval.closed(max(Fraction(0), u.lo - v.hi), u.hi - v.lo)
            for u in whites
            for v in whites
            if u.hi - v.lo >= 0
        ]
        return not z_low.intersect(IntervalSet(tuple(ranges))).is_empty

    # Queries

    def closure_between(self, lo: Rational, hi: Rational) -> IntervalSet:
        """The closure of Z intersected with [lo, hi]."""
        low, high = to_fraction(lo), to_fraction(hi)
        if low > high:
            return IntervalSet()
        indices = self.layout.steps_overlapping(low, high)
        count = max(0, indices.stop - indices.start)
        if count > self.config.max_steps:
            raise StepLimitError(count, self.config.max_steps)
        parts = list(self.base.closure().clip(low, high))
        for n in indices:
            parts.extend(self.step_by_index(n).z.closure().clip(low, high))
        return IntervalSet(tuple(parts))

    def contains_closure(self, d: Rational) -> bool:
        """True iff d lies in the closure of Z."""
        value = to_fraction(d)
        n = self.layout.step_at(value)
        if n is None:
            return self.base.contains_closure(value)
        if n <= self.config.eager_steps:
            self._build_through(n)
            return self._z_prefix.contains_closure(value)
        return self.step_by_index(n).z.contains_closure(value)

    def adjacent(self, x: Rational, y: Rational) -> bool:
        """True iff |x - y| lies in the closure of Z.

        Raises:
            LoopError: If x == y.
        """
        a, b = to_fraction(x), to_fraction(y)
        if a == b:
            raise LoopError(a)
        return self.contains_closure(abs(a - b))

    # Witnesses

    @traced_operation("line_witness")
    def witness_interval(
        self, whites: list[Rational], blacks: list[Rational]
    ) -> RationalInterval:
        """Open interval of vertices adjacent to every white and to no black.

        Raises:
            PreconditionError: If whites and blacks overlap, or (triangle-free)
                two whites are adjacent.
            InfeasibleCoverError: If no admissible cover is found.
            ConstructionError: If exact verification fails.
        """
        white_points = sorted({to_fraction(x) for x in whites})
        black_points = sorted({to_fraction(x) for x in blacks})
        if set(white_points) & set(black_points):
            raise PreconditionError("white and black points must be disjoint")

        if self.triangle_free:
            candidate = self._sum_free_witness(white_points, black_points)
        else:
            pattern = self.enumerator.locate(white_points, black_points)
            built = self.step_by_index(pattern.index, pattern)
            candidate = RationalInterval.open(built.shift - built.epsilon, built.shift + built.epsilon)

        self._verify_witness(candidate, white_points, black_points)
        return candidate

    def _sum_free_witness(
        self, whites: list[Fraction], blacks: list[Fraction]
    ) -> RationalInterval:
        for u, v in combinations(whites, 2):
            if self.adjacent(u, v):
                raise PreconditionError(f"white points {u} and {v} are adjacent")

        points = sorted(whites + blacks)
        if not points:
            pattern = self.enumerator.enumerate(1)
            built = self.step_by_index(1, pattern)
            return RationalInterval.open(built.shift - built.epsilon, built.shift + built.epsilon)

        delta = initial_radius(points)
        distances = [v - u for u, v in combinations(whites, 2)]
        for _ in range(self.config.locate_halvings + 1):
            if all(self.closure_between(d - 2 * delta, d + 2 * delta).is_empty for d in distances):
                break
            delta /= 2
        else:
            raise PreconditionError("white distances stay too close to Z at the search resolution")

        offset = sum_free_offset(points)

        def admissible(pattern: Pattern) -> bool:
            return not self.step_by_index(pattern.index, pattern).skipped

        pattern = self.enumerator.locate(
            [w + offset for w in whites], [b + offset for b in blacks], admissible
        )
        built = self.step_by_index(pattern.index, pattern)
        return RationalInterval.open(
            built.shift - built.epsilon - offset, built.shift + built.epsilon - offset
        )

    def _verify_witness(
        self, candidate: RationalInterval, whites: list[Fraction], blacks: list[Fraction]
    ) -> None:
        for w in whites:
            lo, hi = candidate.lo - w, candidate.hi - w
            if lo <= 0 or not IntervalSet.of(RationalInterval.open(lo, hi)).issubset(
                self.closure_between(lo, hi)
            ):
                raise ConstructionError(f"witness {candidate} is not joined to white {w}")
        for b in blacks:
            lo, hi = candidate.lo - b, candidate.hi - b
            if lo <= 0:
                raise ConstructionError(f"witness {candidate} does not lie above black {b}")
            hits = self.closure_between(lo, hi).intersect(IntervalSet.of(RationalInterval.open(lo, hi)))
            if not hits.is_empty:
                raise ConstructionError(f"witness {candidate} meets black {b} at {hits}")

    def dump(self) -> list[str]:
        """State dump: ``n | idx | c | eps | Z_n`` per built step."""
        lines = [f"0 | base | - | - | {self.base.text()}"]
        lines.extend(step.dump_line() for step in self._steps)
        return lines
