"""Tests for the shift-invariant line constructions."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from src.construction.intervals import IntervalSet
from src.construction.layout import PLAIN_BASE, TRIANGLE_FREE_BASE, StepLayout
from src.construction.line_graph import LineGraphModel, sum_free_offset
from src.core.config import ConstructionConfig
from src.core.exceptions import LoopError, PreconditionError, StepLimitError, ValidationError


def interior_points(interval, count: int = 5) -> list[Fraction]:
    """Evenly spaced points strictly inside an open interval."""
    return [interval.lo + (interval.hi - interval.lo) * Fraction(i, count + 1) for i in range(1, count + 1)]


def random_point(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-160, 160), 8)


class TestLayout:
    """Tests for step slot placement."""

    def test_plain_first_window(self):
        """Test level 1 slots start right after the base."""
        layout = StepLayout(triangle_free=False)
        window = layout.window(1)
        assert window.start == 3
        assert window.spacing == 5
        assert layout.slot(1) == (3, 7)

    def test_slots_increase_and_do_not_overlap(self):
        """Test consecutive slots are strictly ordered across levels."""
        for triangle_free in (False, True):
            layout = StepLayout(triangle_free)
            previous = layout.base.max()
            for n in range(1, 40):
                lo, hi = layout.slot(n)
                assert previous < lo < hi
                previous = hi

    def test_step_at_finds_slot(self):
        """Test distance lookup returns the owning step."""
        layout = StepLayout(triangle_free=False)
        for n in (1, 5, 6, 7, 100):
            lo, hi = layout.slot(n)
            assert layout.step_at((lo + hi) / 2) == n
        assert layout.step_at(Fraction(5, 2)) is None

    def test_steps_starting_at_or_below(self):
        """Test slot counting by lower end."""
        layout = StepLayout(triangle_free=False)
        assert layout.steps_starting_at_or_below(Fraction(0)) == 0
        assert layout.steps_starting_at_or_below(Fraction(3)) == 1
        assert layout.steps_starting_at_or_below(Fraction(7)) == 1
        assert layout.steps_starting_at_or_below(Fraction(8)) == 2


class TestLineGraphConstruction:
    """Tests for building the plain and triangle-free models."""

    def test_plain_base(self):
        """Test the plain prefix starts as [1, 2]."""
        model = LineGraphModel("plain")
        assert model.z_prefix == PLAIN_BASE
        assert model.z_prefix.text() == "[1,2]"
        assert model.frontier == 1

    def test_triangle_free_base(self):
        """Test the triangle-free prefix starts as [1, 6/5]."""
        model = LineGraphModel("triangle_free")
        assert model.z_prefix == TRIANGLE_FREE_BASE
        assert model.z_prefix.is_sum_free_closure()

    def test_ks_free_mode_rejected(self):
        """Test line models only support plain and triangle_free."""
        with pytest.raises(ValidationError):
            LineGraphModel("ks_free:4")

    def test_extend_to_zero_builds_nothing(self):
        """Test nothing lies below 0."""
        model = LineGraphModel("plain").extend_to_bound(0)
        assert model.built == ()
        assert model.z_prefix == PLAIN_BASE

    def test_extend_to_hundred(self):
        """Test the next unbuilt step starts above the bound."""
        model = LineGraphModel("plain").extend_to_bound(100)
        next_lo, _ = model.layout.slot(model.frontier)
        assert next_lo > 100
        assert model.layout.slot(model.frontier - 1)[0] <= 100

    def test_extend_is_idempotent(self):
        """Test repeated calls with the same bound build nothing more."""
        model = LineGraphModel("plain").extend_to_bound(60)
        frontier = model.frontier
        model.extend_to_bound(60)
        assert model.frontier == frontier

    def test_negative_bound_rejected(self):
        """Test bounds must be non-negative."""
        with pytest.raises(ValidationError):
            LineGraphModel("plain").extend_to_bound(-1)

    def test_step_limit(self):
        """Test exceeding max_steps raises StepLimitError."""
        model = LineGraphModel("plain", ConstructionConfig(max_steps=5))
        with pytest.raises(StepLimitError):
            model.extend_to_bound(100)

    def test_monotone_steps(self):
        """Test max(Z_n) < min(Z_{n+1}) for built steps."""
        model = LineGraphModel("plain")
        for _ in range(30):
            model.step()
        sets = [model.base] + [step.z for step in model.built if not step.z.is_empty]
        for lower, upper in zip(sets, sets[1:], strict=False):
            assert lower.max() < upper.min()

    def test_prefix_is_union_of_steps(self):
        """Test z_prefix equals the union of base and all built Z_n."""
        model = LineGraphModel("plain")
        for _ in range(12):
            model.step()
        union = model.base
        for step in model.built:
            union = union.union(step.z)
        assert model.z_prefix == union

    def test_step_joins_white_part(self):
        """Test points near c see the white part and avoid the black part."""
        model = LineGraphModel("plain")
        for _ in range(20):
            step = model.step()
            for w in step.pattern.white:
                assert model.adjacent(step.shift, (w.lo + w.hi) / 2)
            for b in step.pattern.black:
                assert not model.adjacent(step.shift, (b.lo + b.hi) / 2)

    def test_triangle_free_step_joins_white_part(self):
        """Test c - white lies in Z for translated and unchanged triangle-free patterns."""
        model = LineGraphModel("triangle_free")
        offsets = set()
        for _ in range(60):
            step = model.step()
            if step.skipped:
                continue
            offsets.add(step.pattern.offset == 0)
            for w in step.pattern.white:
                assert model.adjacent(step.shift, (w.lo + w.hi) / 2)
            for b in step.pattern.black:
                assert not model.adjacent(step.shift, (b.lo + b.hi) / 2)
        assert offsets == {True, False}

    def test_triangle_free_sum_free_after_200_steps(self):
        """Test the triangle-free prefix stays sum-free."""
        model = LineGraphModel("triangle_free")
        for _ in range(200):
            model.step()
        assert model.z_prefix.is_sum_free_closure()

    def test_deterministic(self):
        """Test two models with the same mode build identical steps."""
        a, b = LineGraphModel("triangle_free"), LineGraphModel("triangle_free")
        for _ in range(25):
            a.step()
            b.step()
        assert a.dump() == b.dump()

    def test_random_access_matches_sequential(self):
        """Test a materialized far step equals the sequentially built one."""
        eager = LineGraphModel("plain")
        lazy = LineGraphModel("plain")
        for _ in range(15):
            eager.step()
        assert lazy.step_by_index(15) == eager.built[14]


class TestAdjacency:
    """Tests for the adjacency oracle."""

    def test_base_distance(self):
        """Test |0 - 3/2| lies in the base [1, 2]."""
        assert LineGraphModel("plain").adjacent(0, Fraction(3, 2))

    def test_gap_distance(self):
        """Test 5/2 lies between the base and the first slot."""
        assert not LineGraphModel("plain").adjacent(0, Fraction(5, 2))

    def test_closure_endpoint(self):
        """Test closure adjacency at the base endpoint."""
        assert LineGraphModel("plain").adjacent(0, 2)

    def test_loop_rejected(self):
        """Test adjacency with itself raises LoopError."""
        with pytest.raises(LoopError):
            LineGraphModel("plain").adjacent(1, 1)

    def test_symmetry(self):
        """Test adjacent(x, y) = adjacent(y, x)."""
        model = LineGraphModel("plain")
        rng = random.Random(1)
        for _ in range(1000):
            x, y = random_point(rng), random_point(rng)
            if x != y:
                assert model.adjacent(x, y) == model.adjacent(y, x)

    def test_shift_invariance(self):
        """Test adjacent(x + t, y + t) = adjacent(x, y)."""
        model = LineGraphModel("plain")
        rng = random.Random(2)
        for _ in range(1000):
            x, y, t = random_point(rng), random_point(rng), random_point(rng)
            if x != y:
                assert model.adjacent(x + t, y + t) == model.adjacent(x, y)

    def test_far_distance_uses_single_step(self):
        """Test a distance beyond the eager range does not build the prefix."""
        model = LineGraphModel("plain", ConstructionConfig(eager_steps=10))
        lo, hi = model.layout.slot(500)
        model.contains_closure((lo + hi) / 2)
        assert model.frontier == 1

    def test_closure_between(self):
        """Test the closure restricted to a window."""
        model = LineGraphModel("plain")
        assert model.closure_between(0, Fraction(5, 2)) == IntervalSet.parse("[1,2]")
        assert model.closure_between(3, 2).is_empty


class TestWitnessInterval:
    """Tests for witness intervals."""

    def test_single_white(self):
        """Test a witness joined to 0."""
        model = LineGraphModel("plain")
        witness = model.witness_interval([0], [])
        assert witness.lo < witness.hi
        assert all(model.adjacent(v, 0) for v in interior_points(witness))

    def test_whites_and_black(self):
        """Test two whites and one black."""
        model = LineGraphModel("plain")
        witness = model.witness_interval([0, 10], [5])
        for v in interior_points(witness):
            assert model.adjacent(v, 0)
            assert model.adjacent(v, 10)
            assert not model.adjacent(v, 5)

    def test_overlapping_sets_rejected(self):
        """Test a point cannot be white and black."""
        with pytest.raises(PreconditionError):
            LineGraphModel("plain").witness_interval([1], [1])

    def test_triangle_free_adjacent_whites_rejected(self):
        """Test adjacent whites violate the triangle-free precondition."""
        model = LineGraphModel("triangle_free")
        assert model.adjacent(0, 1)
        with pytest.raises(PreconditionError):
            model.witness_interval([0, 1], [])

    def test_triangle_free_whites_with_a_sum(self):
        """Test whites 5 and 10 (5 + 5 = 10) still get a witness avoiding the black 20."""
        model = LineGraphModel("triangle_free")
        witness = model.witness_interval([5, 10], [20])
        for v in interior_points(witness):
            assert model.adjacent(v, 5)
            assert model.adjacent(v, 10)
            assert not model.adjacent(v, 20)

    def test_sum_free_offset_breaks_sum_relations(self):
        """Test the centring shift keeps every w_i + w_j - w_k away from zero."""
        points = [Fraction(-3), Fraction(1, 2), Fraction(2), Fraction(4)]
        t = sum_free_offset(points)
        shifted = [p + t for p in points]
        assert abs(shifted[0] + shifted[-1]) < 1
        for a in shifted:
            for b in shifted:
                for c in shifted:
                    assert abs(a + b - c) >= Fraction(1, 8)

    def test_triangle_free_single_white(self):
        """Test a triangle-free witness for one white point."""
        model = LineGraphModel("triangle_free")
        witness = model.witness_interval([0], [])
        assert all(model.adjacent(v, 0) for v in interior_points(witness))



class TestDump:
    """Tests for the state dump."""

    def test_base_line(self):
        """Test the dump of a fresh model."""
        assert LineGraphModel("plain").dump() == ["0 | base | - | - | [1,2]"]

    def test_step_lines(self):
        """Test one line per built step."""
        model = LineGraphModel("plain")
        model.step()
        model.step()
        lines = model.dump()
        assert len(lines) == 3
        assert lines[1].startswith("1 | 1 | 5 | ")
        assert lines[2].startswith("2 | 2 | 10 | ")


@pytest.mark.slow
class TestLineGraphAcceptance:
    """Acceptance-scale construction and witness runs."""

    def test_sum_free_after_500_steps(self):
        """Test the triangle-free prefix after 500 steps."""
        model = LineGraphModel("triangle_free")
        for _ in range(500):
            model.step()
        assert model.z_prefix.is_sum_free_closure()

    def test_plain_witnesses(self):
        """Test 100 random plain instances with up to 3 whites and 3 blacks in [-20, 20]."""
        model = LineGraphModel("plain")
        rng = random.Random(100)
        for _ in range(100):
            points = [Fraction(p, 8) for p in rng.sample(range(-160, 161), rng.randint(1, 6))]
            cut = min(3, rng.randint(0, len(points)))
            whites, blacks = points[:cut], points[cut : cut + 3]
            witness = model.witness_interval(whites, blacks)
            assert witness.lo < witness.hi

    def test_triangle_free_witnesses(self):
        """Test 100 random triangle-free instances with independent whites."""
        model = LineGraphModel("triangle_free")
        rng = random.Random(101)
        done = 0
        while done < 100:
            points = [Fraction(p, 8) for p in rng.sample(range(-160, 161), rng.randint(1, 5))]
            cut = min(3, rng.randint(1, len(points)))
            whites, blacks = points[:cut], points[cut : cut + 3]
            if any(model.adjacent(u, v) for u, v in combinations(whites, 2)):
                continue
            witness = model.witness_interval(whites, blacks)
            assert witness.lo < witness.hi
            done += 1
