import math

import pytest

from bichromatic.approx import GridTransform, approx_solve, far_case_solve, grid_snap
from bichromatic.geometry import Instance, Point, sed_tuple
from bichromatic.oracle import brute_exact, verify_solution

from conftest import random_instance


def test_far_case_two_clusters(rng):
    for _ in range(5):
        S = random_instance(rng, 6, "two-cluster")
        a = [p for pair in S.pairs for p in pair if p.x < 3]
        b = [p for pair in S.pairs for p in pair if p.x >= 3]
        sol = far_case_solve(S)
        assert verify_solution(S, sol)
        assert sol.radius == pytest.approx(max(sed_tuple(a)[2], sed_tuple(b)[2]))
        assert sol.radius == pytest.approx(brute_exact(S).radius, rel=1e-9)


def test_far_case_needs_straddling():
    S = Instance.from_coords([((1.5, 0.6), (1.6, 0.7)), ((5, 5), (-5, -5)), ((5, -5), (-5, 5))])
    assert far_case_solve(S) is None


def test_far_case_single_pair():
    sol = far_case_solve(Instance.from_coords([((-10, 0), (10, 0))]))
    assert sol.radius == 0


def test_delta_from_enclosing_radius():
    S = Instance.from_coords([((-100, 0), (100, 0))])
    assert grid_snap(S, 0.1).transform.delta == pytest.approx(0.1)


def test_same_cell_same_grid_point():
    tf = GridTransform(Point(0, 0), 0.5, 10)
    assert tf.to_grid((1.1, 2.2)) == tf.to_grid((1.4, 2.4))


def test_round_trip_within_cell_diagonal(rng):
    for _ in range(5):
        S = random_instance(rng, 10)
        inst = grid_snap(S, 0.3)
        tf = inst.transform
        for p in S.points:
            q = tf.to_world(tf.to_grid(p))
            assert math.dist(p, q) <= tf.delta * math.sqrt(2) + 1e-12


def test_grid_bounds(rng):
    for eps in (1.0, 0.5, 0.1):
        for _ in range(5):
            S = random_instance(rng, 8)
            inst = grid_snap(S, eps)
            assert inst.U <= 201 / eps + 203
            assert inst.U <= math.ceil(100 * (2 + 2 * eps) / eps) + 2
            for a, b in inst.pairs:
                assert all(1 <= v <= inst.U for v in a + b)
            assert len(set(inst.pairs)) == len(inst.pairs)


def test_collapsed_pair_kept():
    S = Instance.from_coords([((0, 0), (1e-6, 0)), ((-10, 0), (10, 0))])
    inst = grid_snap(S, 0.5)
    assert any(a == b for a, b in inst.pairs)


def test_eps_out_of_range(demo):
    for eps in (0, -0.1, 1.5):
        with pytest.raises(ValueError):
            grid_snap(demo, eps)
        with pytest.raises(ValueError):
            approx_solve(demo, eps)


def test_demo(demo):
    sol = approx_solve(demo, 0.2)
    assert 0.5 - 1e-9 <= sol.radius <= 0.6
    assert verify_solution(demo, sol)


def test_all_points_equal():
    S = Instance.from_coords([((1, 1), (1, 1)), ((1, 1), (1, 1))])
    assert approx_solve(S, 0.5).radius == 0


@pytest.mark.parametrize("eps", [0.5, 0.25])
def test_bound_against_oracle(rng, eps):
    for kind in ("uniform", "two-cluster", "nearby-lens"):
        for _ in range(3):
            S = random_instance(rng, int(rng.integers(2, 9)), kind)
            opt = brute_exact(S).radius
            sol = approx_solve(S, eps)
            assert verify_solution(S, sol)
            assert opt * (1 - 1e-9) <= sol.radius <= (1 + eps) * opt + 1e-9
