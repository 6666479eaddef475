"""Vertex measures: where sampled vertices come from.

Continuous draws are rounded to the dyadic grid ``k / 2**bits`` at once, so
every later adjacency query is exact-rational and reproducible bit for bit.
Coordinates are carried as int64 numerators over ``2**bits``.
"""

import math
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

import numpy as np

from src.construction.intervals import Rational, to_fraction
from src.core.exceptions import ValidationError
from src.core.rng import box_muller

# numerators must stay clear of int64 overflow in pairwise differences
_NUMERATOR_LIMIT = 2**61


class MeasureKind(StrEnum):
    UNIFORM = "uniform"
    GAUSSIAN = "gaussian"
    DISCRETE_BLOCKS = "discrete_blocks"


@dataclass(frozen=True)
class VertexMeasure:
    """A nondegenerate probability measure on the vertex space."""

    kind: MeasureKind
    lo: Fraction | None = None
    hi: Fraction | None = None
    mean: Fraction | None = None
    sigma: Fraction | None = None
    masses: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        if self.kind is MeasureKind.UNIFORM:
            if self.lo is None or self.hi is None or not self.lo < self.hi:
                raise ValidationError(f"uniform measure needs lo < hi, got {self.lo}, {self.hi}")
        elif self.kind is MeasureKind.GAUSSIAN:
            if self.mean is None or self.sigma is None or self.sigma <= 0:
                raise ValidationError(f"gaussian measure needs sigma > 0, got {self.sigma}", "sigma")
        else:
            if not self.masses:
                raise ValidationError("discrete_blocks needs at least one mass", "masses")
            if any(m < 0 for m in self.masses):
                raise ValidationError("block masses must be non-negative", "masses")
            if sum(self.masses) != 1:
                raise ValidationError(f"block masses sum to {sum(self.masses)}, not 1", "masses")

    @classmethod
    def uniform(cls, lo: Rational, hi: Rational) -> "VertexMeasure":
        return cls(MeasureKind.UNIFORM, lo=to_fraction(lo), hi=to_fraction(hi))

    @classmethod
    def gaussian(cls, mean: Rational = 0, sigma: Rational = 1) -> "VertexMeasure":
        return cls(MeasureKind.GAUSSIAN, mean=to_fraction(mean), sigma=to_fraction(sigma))

    @classmethod
    def discrete_blocks(cls, masses: list[Rational]) -> "VertexMeasure":
        return cls(MeasureKind.DISCRETE_BLOCKS, masses=tuple(to_fraction(m) for m in masses))

    @classmethod
    def parse(cls, text: str) -> "VertexMeasure":
        """Parse ``gaussian:MEAN:SIGMA``, ``uniform:LO:HI`` or ``blocks:M1,M2,...``."""
        name, _, rest = text.strip().partition(":")
        args = rest.split(":") if rest else []
        try:
            if name == "gaussian" and len(args) == 2:
                return cls.gaussian(args[0], args[1])
            if name == "uniform" and len(args) == 2:
                return cls.uniform(args[0], args[1])
            if name in ("blocks", "discrete_blocks") and len(args) == 1:
                return cls.discrete_blocks(args[0].split(","))
        except ValidationError as e:
            raise ValidationError(f"bad measure '{text}': {e.message}", "measure") from e
        raise ValidationError(
            f"unknown measure '{text}'; use gaussian:MEAN:SIGMA, uniform:LO:HI or blocks:M1,M2",
            "measure",
        )

    @property
    def continuous(self) -> bool:
        return self.kind is not MeasureKind.DISCRETE_BLOCKS

    def text(self) -> str:
        if self.kind is MeasureKind.UNIFORM:
            return f"uniform:{self.lo}:{self.hi}"
        if self.kind is MeasureKind.GAUSSIAN:
            return f"gaussian:{self.mean}:{self.sigma}"
        return "blocks:" + ",".join(str(m) for m in self.masses)

    def __str__(self) -> str:
        return self.text()

    # Drawing

    def draw_numerators(self, rng: np.random.Generator, n: int, bits: int) -> np.ndarray:
        """n points as int64 numerators over ``2**bits``.

        Gaussian points use the Box-Muller transform of the stream's uniforms.
        """
        if not self.continuous:
            raise ValidationError("discrete_blocks measures draw block labels, not points")
        if self.kind is MeasureKind.UNIFORM:
            values = float(self.lo) + (float(self.hi) - float(self.lo)) * rng.random(n)
        else:
            values = float(self.mean) + float(self.sigma) * box_muller(rng, n)
        scaled = np.rint(np.ldexp(values, bits))
        if n and np.max(np.abs(scaled)) >= _NUMERATOR_LIMIT:
            raise ValidationError(f"sampled coordinates exceed the {bits}-bit grid range", "measure")
        return scaled.astype(np.int64)

    def draw_blocks(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """n block labels distributed according to the masses."""
        if self.continuous:
            raise ValidationError(f"{self.kind} measures have no blocks")
        cumulative = np.cumsum([float(m) for m in self.masses])
        labels = np.searchsorted(cumulative, rng.random(n), side="right")
        return np.minimum(labels, len(self.masses) - 1).astype(np.int64)


def to_coordinates(numerators: np.ndarray, bits: int) -> list[Fraction]:
    """Exact Fraction coordinates from grid numerators."""
    denominator = 1 << bits
    return [Fraction(int(k), denominator) for k in numerators]


def grid_bounds(lo: Fraction, hi: Fraction, bits: int) -> tuple[int, int]:
    """Integer range of numerators k with lo <= k / 2**bits <= hi."""
    scale = 1 << bits
    return math.ceil(lo * scale), math.floor(hi * scale)
