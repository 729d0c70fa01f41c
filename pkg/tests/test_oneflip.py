import numpy as np
import pytest

from bbqp import Move, Side, Solution, apply_move, evaluate, init_deltas
from bbqp.errors import ShapeError

from conftest import random_bits, random_instance


def scratch_gains(inst, x, y):
    """Gains as f(flipped) - f(current), one full evaluation per index."""
    base = evaluate(inst, Solution(x, y))
    dx, dy = [], []
    for i in range(inst.m):
        x2 = x.copy()
        x2[i] ^= 1
        dx.append(evaluate(inst, Solution(x2, y)) - base)
    for j in range(inst.n):
        y2 = y.copy()
        y2[j] ^= 1
        dy.append(evaluate(inst, Solution(x, y2)) - base)
    return dx, dy


def test_init_at_zero_reduces_to_linear_terms(e1, zero_solution):
    state = init_deltas(e1, zero_solution)
    assert state.dx.tolist() == [1, -1]
    assert state.dy.tolist() == [-2, 1]
    assert state.value == 0


def test_init_e1_with_first_row_on(e1):
    state = init_deltas(e1, Solution([1, 0], [0, 0]))
    assert state.dx.tolist() == [-1, -1]
    assert state.dy.tolist() == [-1, -1]


def test_init_matches_scratch_30x40():
    rng = np.random.default_rng(3040)
    inst = random_instance(rng, 30, 40)
    x, y = random_bits(rng, 30), random_bits(rng, 40)
    state = init_deltas(inst, Solution(x, y))
    dx, dy = scratch_gains(inst, x, y)
    assert state.dx.tolist() == dx and state.dy.tolist() == dy
    assert state.value == evaluate(inst, Solution(x, y))


def test_init_shape_error(e1):
    with pytest.raises(ShapeError):
        init_deltas(e1, Solution([0], [0, 0]))


def test_apply_x_flip_e1(e1, zero_solution):
    state = init_deltas(e1, zero_solution)
    apply_move(state, Move(Side.X, 0))
    assert state.x.tolist() == [1, 0]
    assert state.dx.tolist() == [-1, -1]
    assert state.dy.tolist() == [-1, -1]
    assert state.value == 1


@pytest.mark.parametrize("side", [Side.X, Side.Y])
def test_apply_twice_is_identity(side):
    rng = np.random.default_rng(9)
    inst = random_instance(rng, 12, 9)
    state = init_deltas(inst, Solution(random_bits(rng, 12), random_bits(rng, 9)))
    before = state.copy()
    size = inst.m if side is Side.X else inst.n
    for idx in range(size):
        apply_move(state, Move(side, idx))
        assert state != before
        apply_move(state, Move(side, idx))
        assert state == before


def test_random_moves_match_reinitialization():
    rng = np.random.default_rng(1000)
    inst = random_instance(rng, 50, 50)
    state = init_deltas(inst, Solution(random_bits(rng, 50), random_bits(rng, 50)))
    start_value = state.value
    gains = 0
    for _ in range(1000):
        side = Side.X if rng.integers(2) == 0 else Side.Y
        mv = Move(side, int(rng.integers(50)))
        gains += state.gain(mv)
        apply_move(state, mv)
    fresh = init_deltas(inst, state.solution)
    assert state == fresh
    assert state.value == start_value + gains


def test_gains_match_scratch_after_moves():
    rng = np.random.default_rng(77)
    inst = random_instance(rng, 7, 11)
    state = init_deltas(inst, Solution(random_bits(rng, 7), random_bits(rng, 11)))
    for _ in range(60):
        side = Side.X if rng.integers(2) == 0 else Side.Y
        apply_move(state, Move(side, int(rng.integers(7 if side is Side.X else 11))))
        dx, dy = scratch_gains(inst, state.x, state.y)
        assert state.dx.tolist() == dx and state.dy.tolist() == dy


def test_dump_lists_gains(e1, zero_solution):
    assert init_deltas(e1, zero_solution).dump() == "value 0\ndx 1 -1\ndy -2 1\n"


def test_per_move_cost_scales_linearly():
    from conftest import per_move_seconds

    t100, t1000, t10000 = (per_move_seconds(s) for s in (100, 1000, 10_000))
    assert t1000 / t100 <= 15
    assert t10000 / t1000 <= 15
