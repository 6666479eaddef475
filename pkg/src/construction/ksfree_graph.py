"""Topologically universal K_s-free graph on the line (s >= 4).

The edge set is a closed symmetric set ``Z`` in the plane avoiding the
diagonal: ``x ~ y`` iff ``(x, y) ∈ Z``. It starts from the base rectangles

    [1, 2] x [3, 4]  and  [3, 4] x [1, 2]

and step ``n`` adds the strip ``[M_n + 1, M_n + 2] x W_n`` and its transpose,
where ``W_n`` is the closure of the white part of the n-th plain pattern and

    M_0 = 4,   M_n = L_n + M_{n-1} + n + 1

with ``L_n`` the pattern's level (which bounds its endpoints). A step is
skipped when its white closure already hosts a K_{s-1}: adding the strip
would then create a K_s.
"""

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import networkx as nx

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
from .patterns import (
    Pattern,
    PatternEnumerator,
    PatternFilter,
    first_index,
    level_of_index,
    new_count,
)

logger = logging.getLogger(__name__)

M_BASE = 4


@dataclass(frozen=True)
class Box:
    """Closed box x_range × y_range."""

    x: RationalInterval
    y: RationalInterval

    def contains(self, u: Fraction, v: Fraction) -> bool:
        return self.x.lo <= u <= self.x.hi and self.y.lo <= v <= self.y.hi

    def transpose(self) -> "Box":
        return Box(self.y, self.x)

    def meets_diagonal(self) -> bool:
        return self.x.lo <= self.y.hi and self.y.lo <= self.x.hi

    def text(self) -> str:
        return f"{self.x.text()}x{self.y.text()}"


@dataclass(frozen=True)
class BoxSet:
    """Finite union of closed boxes, stored with every transpose."""

    boxes: tuple[Box, ...] = ()

    @classmethod
    def symmetric(cls, boxes: list[Box]) -> "BoxSet":
        out: list[Box] = []
        for box in boxes:
            for candidate in (box, box.transpose()):
                if candidate not in out:
                    out.append(candidate)
        return cls(tuple(out))

    def contains(self, u: Fraction, v: Fraction) -> bool:
        return any(box.contains(u, v) for box in self.boxes)

    def union(self, other: "BoxSet") -> "BoxSet":
        return BoxSet(self.boxes + tuple(b for b in other.boxes if b not in self.boxes))

    def is_symmetric(self) -> bool:
        return all(box.transpose() in self.boxes for box in self.boxes)

    def avoids_diagonal(self) -> bool:
        return not any(box.meets_diagonal() for box in self.boxes)

    def __len__(self) -> int:
        return len(self.boxes)

    def __iter__(self):
        return iter(self.boxes)


BASE_BOXES = BoxSet.symmetric(
    [Box(RationalInterval.closed(1, 2), RationalInterval.closed(3, 4))]
)


def m_closed_form(level: int, n: int, m_before: int) -> int:
    """M_n for step n of ``level`` given M at the end of the previous level.

    Within a level L_n is constant, so M grows by (L + 1) + n per step.
    """
    f = first_index(level)
    count = n - f + 1
    return m_before + count * (level + 1) + (f + n) * count // 2


def strip_boxes(m_value: int, white: IntervalSet) -> BoxSet:
    """Symmetrized strip ``[M + 1, M + 2] × closure(white)``."""
    column = RationalInterval.closed(m_value + 1, m_value + 2)
    return BoxSet.symmetric([Box(column, part.closure()) for part in white])


@dataclass(frozen=True)
class PlaneStep:
    """One step of the plane construction; ``boxes`` is empty when skipped."""

    n: int
    pattern: Pattern
    m_value: int
    skipped: bool
    boxes: BoxSet

    @property
    def strip(self) -> RationalInterval:
        return RationalInterval.closed(self.m_value + 1, self.m_value + 2)

    def dump_line(self) -> str:
        idx = "SKIP" if self.skipped else str(self.pattern.index)
        return (
            f"{self.n} | {idx} | {self.m_value} | {self.strip.text()} | "
            f"{self.pattern.white.closure().text()}"
        )


def _cells(white: IntervalSet, breakpoints: list[Fraction]) -> list[tuple[Fraction, bool]]:
    """Split ``white`` at the breakpoints into cells of constant box membership.

    Each cell is reported as (representative, is_open_cell); point cells hold
    one vertex, open cells infinitely many.
    """
    cells: list[tuple[Fraction, bool]] = []
    for part in white:
        if part.is_degenerate:
            cells.append((part.lo, False))
            continue
        inner = sorted({b for b in breakpoints if part.lo < b < part.hi})
        marks = [part.lo, *inner, part.hi]
        if part.lo_closed:
            cells.append((part.lo, False))
        for i, (a, b) in enumerate(zip(marks, marks[1:], strict=False)):
            cells.append(((a + b) / 2, True))
            if i < len(inner):
                cells.append((b, False))
        if part.hi_closed:
            cells.append((part.hi, False))
    return cells


def white_clique_check(boxes: BoxSet, white: IntervalSet, k: int) -> bool:
    """True iff ``white`` holds k points that are pairwise adjacent under ``boxes``.

    Box membership is constant on the cells between box breakpoints, so
    adjacency between two cells is decided at their representatives. An open
    cell whose representative pair lies in a box can supply any number of
    clique members; every other cell supplies at most one.
    """
    if k < 2:
        raise ValidationError(f"clique size must be at least 2, got {k}", "k")
    breakpoints = [e for box in boxes for e in (box.x.lo, box.x.hi, box.y.lo, box.y.hi)]
    cells = _cells(white, breakpoints)

    graph = nx.Graph()
    capacity = {}
    for i, (rep, is_open) in enumerate(cells):
        graph.add_node(i)
        capacity[i] = k if is_open and boxes.contains(rep, rep) else 1
    for i, j in combinations(range(len(cells)), 2):
        if boxes.contains(cells[i][0], cells[j][0]):
            graph.add_edge(i, j)

    return any(sum(capacity[i] for i in clique) >= k for clique in nx.find_cliques(graph))


class PlaneGraphModel:
    """Lazily extended construction of the symmetric box set Z."""

    def __init__(self, s: int, config: ConstructionConfig | None = None):
        self.filter = PatternFilter.ks_free(s)
        self.s = s
        self.config = config or ConstructionConfig()
        self.enumerator = PatternEnumerator(self.filter, self.config.locate_halvings)
        self._lock = threading.RLock()
        self._steps: list[PlaneStep] = []
        self._sparse: dict[int, PlaneStep] = {}
        self._z = BASE_BOXES
        self._level_end_m: list[int] = [M_BASE]

    @property
    def z(self) -> BoxSet:
        return self._z

    @property
    def built(self) -> tuple[PlaneStep, ...]:
        return tuple(self._steps)

    @property
    def frontier(self) -> int:
        return len(self._steps) + 1

    @property
    def m_sequence(self) -> list[int]:
        return [M_BASE] + [step.m_value for step in self._steps]

    def describe(self) -> str:
        return f"ksfree:{self.s}"

    def summary(self) -> dict:
        return {"model": self.describe(), "frontier": self.frontier, "cached": len(self._sparse)}

    # M sequence

    def _end_of_level_m(self, level: int) -> int:
        """M at the last step of ``level`` (M_0 for level 0)."""
        with self._lock:
            while len(self._level_end_m) <= level:
                lv = len(self._level_end_m)
                last = first_index(lv) + new_count(lv) - 1
                self._level_end_m.append(m_closed_form(lv, last, self._level_end_m[lv - 1]))
            return self._level_end_m[level]

    def m_value(self, n: int) -> int:
        """M_n in closed form."""
        if n == 0:
            return M_BASE
        level = level_of_index(n)
        return m_closed_form(level, n, self._end_of_level_m(level - 1))

    def strip_at(self, x: Fraction) -> int | None:
        """Index of the step whose strip column [M_n + 1, M_n + 2] contains x."""
        if x < self.m_value(1) + 1:
            return None
        level = 1
        while self._end_of_level_m(level) + 2 < x:
            level += 1
        lo, hi = first_index(level), first_index(level) + new_count(level) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.m_value(mid) + 1 <= x:
                lo = mid
            else:
                hi = mid - 1
        return lo if self.m_value(lo) + 1 <= x <= self.m_value(lo) + 2 else None

    # Building

    def boxes_below(self, bound: Fraction) -> BoxSet:
        """Base boxes plus the strips whose column starts at or below ``bound``."""
        boxes = BASE_BOXES
        n = 1
        while self.m_value(n) + 1 <= bound:
            boxes = boxes.union(self.step_by_index(n).boxes)
            n += 1
        return boxes

    def _first_strip_reaching(self, x: Fraction) -> int:
        """Smallest n >= 1 whose strip column ends at or above x."""
        if x <= self.m_value(1) + 2:
            return 1
        level = 1
        while self._end_of_level_m(level) + 2 < x:
            level += 1
        lo, hi = first_index(level), first_index(level) + new_count(level) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if self.m_value(mid) + 2 >= x:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def strips_meeting(self, white: IntervalSet) -> list[int]:
        """Indices of the steps whose strip column meets the closure of ``white``.

        Raises:
            StepLimitError: If more than ``max_steps`` columns meet it.
        """
        indices: set[int] = set()
        for part in white.closure():
            n = self._first_strip_reaching(part.lo)
            while self.m_value(n) + 1 <= part.hi:
                indices.add(n)
                if len(indices) > self.config.max_steps:
                    raise StepLimitError(len(indices), self.config.max_steps)
                n += 1
        return sorted(indices)

    def boxes_meeting(self, white: IntervalSet) -> BoxSet:
        """Base boxes plus every strip that can join two points of ``white``."""
        boxes = BASE_BOXES
        for n in self.strips_meeting(white):
            boxes = boxes.union(self.step_by_index(n).boxes)
        return boxes

    def _materialize(self, n: int, pattern: Pattern | None = None) -> PlaneStep:
        pattern = pattern if pattern is not None else self.enumerator.enumerate(n)
        m_value = self.m_value(n)
        white = pattern.white.closure()
        if white.is_empty:
            return PlaneStep(n, pattern, m_value, False, BoxSet())
        if white_clique_check(self.boxes_meeting(white), white, self.s - 1):
            logger.debug("Step %d skipped: white part hosts a K_%d", n, self.s - 1)
            return PlaneStep(n, pattern, m_value, True, BoxSet())
        return PlaneStep(n, pattern, m_value, False, strip_boxes(m_value, white))

    def step_by_index(self, n: int, pattern: Pattern | None = None) -> PlaneStep:
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

    def step(self) -> PlaneStep:
        """Build the next sequential step and add its strip to z."""
        with self._lock:
            n = self.frontier
            built = self._sparse.pop(n, None) or self._materialize(n)
            self._steps.append(built)
            self._z = self._z.union(built.boxes)
            return built

    @traced_operation("plane_extend")
    def extend_to_bound(self, bound: Rational) -> "PlaneGraphModel":
        """Build every step whose strip column starts at or below ``bound``."""
        value = to_fraction(bound)
        with self._lock:
            while self.m_value(self.frontier) + 1 <= value:
                if self.frontier > self.config.max_steps:
                    raise StepLimitError(self.frontier, self.config.max_steps)
                self.step()
        return self

    # Queries

    def adjacent(self, x: Rational, y: Rational) -> bool:
        """True iff (x, y) lies in Z.

        Raises:
            LoopError: If x == y.
        """
        u, v = to_fraction(x), to_fraction(y)
        if u == v:
            raise LoopError(u)
        if BASE_BOXES.contains(u, v):
            return True
        for a, b in ((u, v), (v, u)):
            n = self.strip_at(a)
            if n is not None:
                built = self.step_by_index(n)
                if not built.skipped and built.pattern.white.closure().contains_closure(b):
                    return True
        return False

    def white_clique_check(self, white: IntervalSet, k: int) -> bool:
        """Clique check against every box that can meet ``white``."""
        if white.is_empty:
            return False
        return white_clique_check(self.boxes_meeting(white), white, k)

    @traced_operation("plane_witness")
    def witness_box(self, whites: list[Rational], blacks: list[Rational]) -> RationalInterval:
        """Open interval of vertices adjacent to every white and to no black.

        Raises:
            PreconditionError: If whites and blacks overlap or whites contain a K_{s-1}.
            InfeasibleCoverError: If no admissible cover is found.
            ConstructionError: If exact verification fails.
        """
        white_points = sorted({to_fraction(x) for x in whites})
        black_points = sorted({to_fraction(x) for x in blacks})
        if set(white_points) & set(black_points):
            raise PreconditionError("white and black points must be disjoint")
        if len(white_points) >= self.s - 1 and self.white_clique_check(
            IntervalSet.points(white_points), self.s - 1
        ):
            raise PreconditionError(f"white points contain a K_{self.s - 1}")

        def admissible(pattern: Pattern) -> bool:
            return not self.step_by_index(pattern.index, pattern).skipped

        pattern = self.enumerator.locate(white_points, black_points, admissible)
        built = self.step_by_index(pattern.index, pattern)
        candidate = RationalInterval.open(built.m_value + 1, built.m_value + 2)
        self._verify_witness(candidate, built, white_points, black_points)
        return candidate

    def _verify_witness(
        self,
        candidate: RationalInterval,
        built: PlaneStep,
        whites: list[Fraction],
        blacks: list[Fraction],
    ) -> None:
        if built.skipped:
            raise ConstructionError("located step was skipped", built.n)
        column = IntervalSet.of(candidate)
        white = built.pattern.white.closure()
        for w in whites:
            if not white.contains(w):
                raise ConstructionError(f"white {w} is outside the strip's white part", built.n)
        for b in blacks:
            if white.contains(b):
                raise ConstructionError(f"black {b} is inside the strip's white part", built.n)
            for box in BASE_BOXES:
                if box.y.contains(b) and not column.intersect(IntervalSet.of(box.x)).is_empty:
                    raise ConstructionError(f"witness {candidate} meets the base at black {b}", built.n)
            n = self.strip_at(b)
            if n is not None:
                other = self.step_by_index(n)
                if not other.skipped and not column.intersect(other.pattern.white.closure()).is_empty:
                    raise ConstructionError(
                        f"witness {candidate} meets the transposed strip {n} at black {b}", built.n
                    )

    def dump(self) -> list[str]:
        """State dump: ``n | idx or SKIP | M_n | strip | white`` per built step."""
        lines = [f"0 | base | {M_BASE} | - | {BASE_BOXES.boxes[0].text()}"]
        lines.extend(step.dump_line() for step in self._steps)
        return lines

