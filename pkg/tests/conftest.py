import itertools

import numpy as np
import pytest

from bbqp import Instance, Solution


def naive_value(Q, c, d, x, y):
    """Objective by plain Python loops; independent of numpy matmul paths."""
    m, n = len(c), len(d)
    total = 0
    for i in range(m):
        for j in range(n):
            total += int(x[i]) * int(Q[i][j]) * int(y[j])
    total += sum(int(c[i]) * int(x[i]) for i in range(m))
    total += sum(int(d[j]) * int(y[j]) for j in range(n))
    return total


def enumerate_optimum(inst):
    """Full 2^(m+n) enumeration; returns (value, sorted list of optimal bit tuples)."""
    Q, c, d = inst.Q.tolist(), inst.c.tolist(), inst.d.tolist()
    best, winners = None, []
    for bits in itertools.product((0, 1), repeat=inst.m + inst.n):
        x, y = bits[: inst.m], bits[inst.m:]
        v = naive_value(Q, c, d, x, y)
        if best is None or v > best:
            best, winners = v, [bits]
        elif v == best:
            winners.append(bits)
    return best, sorted(winners)


def f_ystar_definitional(inst, x):
    """max over all y of f(x, y), by enumeration of y."""
    Q, c, d = inst.Q.tolist(), inst.c.tolist(), inst.d.tolist()
    return max(naive_value(Q, c, d, x, y)
               for y in itertools.product((0, 1), repeat=inst.n))


def random_instance(rng, m, n, lo=-100, hi=100):
    return Instance(rng.integers(lo, hi + 1, (m, n)), rng.integers(lo, hi + 1, m),
                    rng.integers(lo, hi + 1, n))


def random_bits(rng, k):
    return rng.integers(0, 2, k).astype(np.int8)


@pytest.fixture
def e1():
    return Instance([[1, -2], [3, 4]], [1, -1], [-2, 1], name="e1")


@pytest.fixture
def negative_instance():
    rng = np.random.default_rng(11)
    return Instance(-rng.integers(1, 50, (5, 5)), -rng.integers(1, 50, 5),
                    -rng.integers(1, 50, 5))


@pytest.fixture
def zero_solution():
    return Solution([0, 0], [0, 0])


def per_move_seconds(size, moves=4000, repeats=5, seed=0):
    """Best-of-repeats wall time of one apply_move on an (size/2)x(size/2) instance."""
    import time

    from bbqp import Move, Side, apply_move, init_deltas

    rng = np.random.default_rng(seed)
    half = size // 2
    inst = random_instance(rng, half, half)
    state = init_deltas(inst, Solution(random_bits(rng, half), random_bits(rng, half)))
    plan = [Move(Side.X if s else Side.Y, int(i))
            for s, i in zip(rng.integers(0, 2, moves), rng.integers(0, half, moves))]
    for mv in plan[:100]:
        apply_move(state, mv)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for mv in plan:
            apply_move(state, mv)
        best = min(best, (time.perf_counter() - t0) / moves)
    return best


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
