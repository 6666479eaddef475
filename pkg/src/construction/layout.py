"""Placement of construction steps on the positive half-line.

Step ``n`` of a line construction lives in a slot ``[centre - r, centre + r]``
determined by its pattern level ``L`` (radius ``r = L + 1``) and its position
``j`` inside that level. Slots never overlap and increase with ``n``, so any
step can be built without building its predecessors and the step covering a
given distance is found by arithmetic. A step with pattern ``P`` uses the shift
``c = centre + P.offset``, so ``c - P.white`` lies in the slot.

Plain layout (base ``[1, 2]``)::

    E_0 = 2,  S_L = E_{L-1} + 1,  spacing = 2r + 1
    centre_j = S_L + r + j * spacing

Triangle-free layout (base ``[1, 6/5]``)::

    E_0 = 6/5,  spacing = smallest even integer >= ceil(E_{L-1}) + 6r + 3
    S_L = spacing * (floor(2 E_{L-1} / spacing) + 1)
    centre_j = S_L + (2j + 1) * spacing / 2

Slot centres of one triangle-free level sit at half-spacing residues while
sums of two elements of that level sit near whole multiples of the spacing.
"""

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .intervals import IntervalSet, RationalInterval
from .patterns import first_index, level_of_index, new_count

PLAIN_BASE = IntervalSet.of(RationalInterval.closed(1, 2))
TRIANGLE_FREE_BASE = IntervalSet.of(RationalInterval.closed(1, Fraction(6, 5)))


@dataclass(frozen=True)
class LevelWindow:
    """Slots of all steps whose pattern has one level."""

    level: int
    start: Fraction
    spacing: int
    first: int
    count: int
    triangle_free: bool

    @property
    def radius(self) -> int:
        return self.level + 1

    @property
    def end(self) -> Fraction:
        return self.start + self.count * self.spacing

    @property
    def last(self) -> int:
        return self.first + self.count - 1

    def centre(self, j: int) -> Fraction:
        if self.triangle_free:
            return self.start + Fraction((2 * j + 1) * self.spacing, 2)
        return self.start + self.radius + j * self.spacing

    def slot(self, j: int) -> tuple[Fraction, Fraction]:
        centre = self.centre(j)
        return centre - self.radius, centre + self.radius

    def position_of(self, d: Fraction) -> int | None:
        """Position j of the slot containing d, if any."""
        if d < self.start or d >= self.end:
            return None
        j = math.floor((d - self.start) / self.spacing)
        lo, hi = self.slot(j)
        return j if lo <= d <= hi else None


class StepLayout:
    """Lazily computed level windows for one layout flavour."""

    def __init__(self, triangle_free: bool):
        self.triangle_free = triangle_free
        self.base = TRIANGLE_FREE_BASE if triangle_free else PLAIN_BASE
        self._windows: list[LevelWindow] = []
        self._lock = threading.Lock()

    def window(self, level: int) -> LevelWindow:
        with self._lock:
            while len(self._windows) < level:
                self._windows.append(self._next_window(len(self._windows) + 1))
            return self._windows[level - 1]

    def _next_window(self, level: int) -> LevelWindow:
        previous_end = self._windows[-1].end if self._windows else self.base.max()
        radius = level + 1
        if self.triangle_free:
            spacing = math.ceil(previous_end) + 6 * radius + 3
            spacing += spacing % 2
            start = Fraction(spacing * (math.floor(2 * previous_end / spacing) + 1))
        else:
            spacing = 2 * radius + 1
            start = previous_end + 1
        return LevelWindow(
            level=level,
            start=start,
            spacing=spacing,
            first=first_index(level),
            count=new_count(level),
            triangle_free=self.triangle_free,
        )

    def position(self, n: int) -> tuple[LevelWindow, int]:
        """Window and in-level position of step n."""
        window = self.window(level_of_index(n))
        return window, n - window.first

    def slot(self, n: int) -> tuple[Fraction, Fraction]:
        window, j = self.position(n)
        return window.slot(j)

    def _window_reaching(self, d: Fraction) -> LevelWindow | None:
        """First window whose end exceeds d."""
        if d < self.window(1).start:
            return None
        level = 1
        while self.window(level).end <= d:
            level += 1
        return self.window(level)

    def step_at(self, d: Fraction) -> int | None:
        """Index of the step whose slot contains d, if any."""
        window = self._window_reaching(d)
        if window is None:
            return None
        j = window.position_of(d)
        return None if j is None else window.first + j

    def steps_starting_at_or_below(self, bound: Fraction) -> int:
        """Number of steps whose slot's lower end is at most ``bound``."""
        window = self._window_reaching(bound)
        if window is None:
            return 0
        lo, _ = window.slot(0)
        if bound < lo:
            return window.first - 1
        if self.triangle_free:
            j = math.floor((bound - window.start - Fraction(window.spacing, 2) + window.radius) / window.spacing)
        else:
            j = math.floor((bound - window.start) / window.spacing)
        return window.first + min(j, window.count - 1)

    def steps_overlapping(self, lo: Fraction, hi: Fraction) -> range:
        """Indices of steps whose slots meet [lo, hi]."""
        first = self.steps_starting_at_or_below(lo)
        if first >= 1:
            _, slot_hi = self.slot(first)
            if slot_hi < lo:
                first += 1
        else:
            first = 1
        last = self.steps_starting_at_or_below(hi)
        return range(first, last + 1)
