import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import subset_pvar
from sigpaths.harness import example_path, random_path
from sigpaths.paths import PiecewiseLinearPath, concat, line
from sigpaths.variation import (
    VariationResult,
    control,
    p_var_distance,
    p_variation,
    p_variation_interval,
    p_variation_lift,
    refined_grid,
    subadditivity_check,
)

E1, E2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])


def test_line():
    res = p_variation(line([3.0, 4.0]), 2.0)
    assert res.value == 5.0 and res.exact
    assert np.array_equal(res.optimal_partition, [0.0, 1.0])


def test_one_variation_is_length(random_paths):
    for X in random_paths:
        assert p_variation(X, 1.0).value == pytest.approx(X.length(), rel=1e-12)


def test_axis_pair():
    X = concat(line(E1), line(E2))
    assert p_variation(X, 1.0).value == pytest.approx(2.0)
    assert p_variation(X, 2.0).value == pytest.approx(np.sqrt(2.0))
    # for large p the single chord sqrt(2) wins over 2^(1/p)
    assert p_variation(X, 3.0).value == pytest.approx(np.sqrt(2.0))


@pytest.mark.parametrize("p", [1.0, 1.1, 1.25, 1.3, 1.5, 1.9, 3.0])
def test_example_path_closed_form(p):
    # only two partitions matter: the chord (value 2) and the one through
    # both turning points; the chord wins once p exceeds ~1.2551 at eps = 0.1
    eps = 0.1
    three = (2 * (1 + eps) ** p + (2 * eps) ** p) ** (1 / p)
    assert p_variation(example_path(eps), p).value == pytest.approx(max(2.0, three), abs=1e-12)
    assert (three > 2.0) == (p < 1.2550778341668796)


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("p", [1.0, 1.5, 2.5, 4.0])
def test_matches_subset_oracle(seed, p):
    X = random_path(np.random.default_rng(seed), 2, 7)
    assert p_variation(X, p).value == pytest.approx(subset_pvar(X.points, p), rel=1e-12)


def test_partition_attains_value(rng):
    X = random_path(rng, 3, 9)
    res = p_variation(X, 2.0)
    pts = X(res.optimal_partition)
    s = np.sum(np.linalg.norm(np.diff(pts, axis=0), axis=1) ** 2.0)
    assert s ** 0.5 == pytest.approx(res.value, rel=1e-12)


def test_validation():
    with pytest.raises(ValueError):
        p_variation(line(E1), 0.5)
    with pytest.raises(ValueError):
        VariationResult(-1.0, np.array([0.0]), True)
    with pytest.raises(ValueError):
        VariationResult(1.0, np.array([0.0]), True, refinement_level=2)
    assert p_variation(PiecewiseLinearPath.constant(2), 2.0).value == 0.0


def test_interval_and_control(rng):
    X = random_path(rng, 2, 6)
    assert p_variation_interval(X, 1.5, 0.2, 0.2).value == 0.0
    with pytest.raises(ValueError):
        p_variation_interval(X, 1.5, 0.6, 0.2)
    # on one linear piece the variation is the chord length for any p
    a, b = X.times[1], X.times[2]
    res = p_variation_interval(X, 2.5, a, b)
    assert res.value == pytest.approx(np.linalg.norm(X.points[2] - X.points[1]), rel=1e-12)
    assert control(X, 2.0, 0, 1) == pytest.approx(p_variation(X, 2.0).value ** 2)


class TestProperties:
    @given(st.integers(0, 2**31), st.floats(0.05, 0.95), st.floats(0.0, 1.0), st.floats(0.0, 1.0))
    def test_superadditive_control(self, seed, u, fs, ft):
        X = random_path(np.random.default_rng(seed), 2, 5)
        s, t = u * fs, u + (1 - u) * ft
        assert control(X, 1.7, s, u) + control(X, 1.7, u, t) <= control(X, 1.7, s, t) * (1 + 1e-12) + 1e-12

    @given(st.integers(0, 2**31), st.sampled_from([1.0, 1.5, 2.5]))
    def test_subadditive(self, seed, p):
        rng = np.random.default_rng(seed)
        assert subadditivity_check(random_path(rng, 2, 4), random_path(rng, 2, 4), p).passed

    @given(st.integers(0, 2**31))
    def test_monotone_in_p(self, seed):
        X = random_path(np.random.default_rng(seed), 3, 6)
        vals = [p_variation(X, p).value for p in (1.0, 1.5, 2.5, 6.0)]
        assert all(b <= a * (1 + 1e-12) for a, b in zip(vals, vals[1:]))

    @given(st.integers(0, 2**31), st.floats(0.01, 1.0), st.sampled_from([1.0, 2.0, 3.5]))
    def test_beats_random_partitions(self, seed, scale, p):
        rng = np.random.default_rng(seed)
        X = random_path(rng, 2, 5)
        best = p_variation(X, p).value ** p
        for _ in range(20):
            cut = np.sort(rng.uniform(0, 1, size=int(rng.integers(1, 12))))
            pts = X(np.concatenate([[0.0], cut, [1.0]])) * scale
            assert np.sum(np.linalg.norm(np.diff(pts, axis=0), axis=1) ** p) <= best * scale**p * (1 + 1e-12)


class TestLift:
    def test_refined_grid(self):
        g = refined_grid(np.array([0.0, 0.5, 1.0]), 2)
        assert np.allclose(g, np.linspace(0, 1, 9))
        assert np.array_equal(refined_grid(np.array([0.0, 1.0]), 0), [0.0, 1.0])
        with pytest.raises(ValueError):
            refined_grid(np.array([0.0, 1.0]), -1)

    def test_level_one_exact(self, rng):
        X = random_path(rng, 2, 5)
        assert p_variation_lift(X, 1.5, 1).value == p_variation(X, 1.5).value

    def test_lower_bounds_and_monotone(self, rng):
        X = random_path(rng, 2, 4)
        vals = [p_variation_lift(X, 2.5, 2, k).value for k in range(4)]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
        assert vals[0] >= p_variation(X, 2.5).value - 1e-12
        assert not p_variation_lift(X, 2.5, 2, 2).exact

    def test_square_area_seen(self):
        # a closed square has zero level-one increment but area 1 at level 2
        X = PiecewiseLinearPath.from_increments([E1, E2, -E1, -E2])
        lift = p_variation_lift(X, 2.5, 2, 2).value
        assert lift >= 1.0


class TestDistance:
    def test_self_zero(self, rng):
        X = random_path(rng, 2, 4)
        assert p_var_distance(X, X, 1.5, 3, 2).value == 0.0

    def test_level_one_exact(self, rng):
        X, Y = random_path(rng, 2, 4), random_path(rng, 2, 3)
        res = p_var_distance(X, Y, 2.0, 1)
        assert res.exact and res.value > 0
        grid = np.union1d(X.times, Y.times)
        assert res.value == pytest.approx(subset_pvar(X(grid) - Y(grid), 2.0), rel=1e-12)

    def test_horizon_rescaled(self):
        X = line(E1)
        Y = line(E1, T=3.0)
        assert p_var_distance(X, Y, 1.5, 2, 2).value == 0.0

    def test_levels_reported(self, rng):
        X, Y = random_path(rng, 2, 3), random_path(rng, 2, 3)
        res = p_var_distance(X, Y, 2.5, 3, 1)
        assert len(res.level_values) == 3 and res.value == max(res.level_values)

    def test_symmetric(self, rng):
        X, Y = random_path(rng, 2, 3), random_path(rng, 2, 3)
        assert p_var_distance(X, Y, 1.5, 2, 2).value == pytest.approx(p_var_distance(Y, X, 1.5, 2, 2).value)

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            p_var_distance(line(E1), line([1.0]), 1.5, 1)
