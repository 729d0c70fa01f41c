"""One-flip tabu search.

Each iteration performs the best admissible one-flip move (non-tabu, or
tabu but strictly beating the best value found so far), even when its
gain is negative.  A flipped index stays tabu for ``side // divisor +
rand(0, span)`` iterations.  The search stops once the best value has not
improved for ``tabu_depth`` consecutive iterations.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from .errors import BBQPError
from .model import Instance, Solution, check_solution
from .oneflip import flip_x, flip_y, init_deltas

# trace columns
T_ITER, T_SIDE, T_INDEX, T_TENURE, T_KIND, T_VALUE = range(6)
KIND_FREE, KIND_ASPIRATION, KIND_FORCED = 0, 1, 2

# counters shared with the kernel
_IT, _VALUE, _BEST, _STALL = range(4)


@dataclass(frozen=True)
class TabuParams:
    """Tabu search settings.

    ``tabu_depth=None`` means ``10 * (m + n)`` for the instance at hand.
    """

    tabu_depth: Optional[int] = None
    tenure_base_divisor: int = 20
    tenure_rand_span: int = 10
    rng_seed: int = 0

    def __post_init__(self):
        if self.tabu_depth is not None and self.tabu_depth < 1:
            raise BBQPError("tabu_depth must be >= 1")
        if self.tenure_base_divisor < 1:
            raise BBQPError("tenure_base_divisor must be >= 1")
        if self.tenure_rand_span < 0:
            raise BBQPError("tenure_rand_span must be >= 0")
        if not 0 <= self.rng_seed < 2**64:
            raise BBQPError("rng_seed must be an unsigned 64-bit integer")

    def depth_for(self, inst: Instance) -> int:
        if self.tabu_depth is None:
            return default_tabu_depth(inst.m, inst.n)
        return self.tabu_depth


def default_tabu_depth(m: int, n: int) -> int:
    return 10 * (m + n)


class TabuList:
    """Per-index expiry iterations; an index is tabu while expiry > iteration."""

    def __init__(self, m: int, n: int):
        self.expiry_x = np.zeros(m, dtype=np.int64)
        self.expiry_y = np.zeros(n, dtype=np.int64)
        self.iteration = 0

    def is_tabu_x(self, i: int) -> bool:
        return bool(self.expiry_x[i] > self.iteration)

    def is_tabu_y(self, j: int) -> bool:
        return bool(self.expiry_y[j] > self.iteration)


@dataclass
class TabuResult:
    solution: Solution
    value: int
    iterations: int
    trace: Optional[np.ndarray] = None

    def __iter__(self):
        return iter((self.solution, self.value, self.iterations))


@njit(cache=True)
def _tabu_steps(Q, QT, x, y, dx, dy, exp_x, exp_y, best_x, best_y, counters,
                depth, ten_x, ten_y, span, rng, max_steps, trace):
    m = x.shape[0]
    n = y.shape[0]
    steps = 0
    while counters[3] < depth and steps < max_steps:
        it = counters[0]
        value = counters[1]
        best = counters[2]

        # best admissible move; X before Y and lower index on ties
        side = -1
        idx = -1
        gain = 0
        kind = 0
        fb_side = -1
        fb_idx = -1
        fb_gain = 0
        for i in range(m):
            g = dx[i]
            if fb_side < 0 or g > fb_gain:
                fb_side = 0
                fb_idx = i
                fb_gain = g
            free = exp_x[i] <= it
            if free or value + g > best:
                if side < 0 or g > gain:
                    side = 0
                    idx = i
                    gain = g
                    kind = 0 if free else 1
        for j in range(n):
            g = dy[j]
            if g > fb_gain:
                fb_side = 1
                fb_idx = j
                fb_gain = g
            free = exp_y[j] <= it
            if free or value + g > best:
                if side < 0 or g > gain:
                    side = 1
                    idx = j
                    gain = g
                    kind = 0 if free else 1
        if side < 0:
            side = fb_side
            idx = fb_idx
            kind = 2

        if side == 0:
            gain = flip_x(Q, x, y, dx, dy, idx)
            tenure = ten_x + rng.integers(0, span + 1)
            exp_x[idx] = it + tenure + 1
        else:
            gain = flip_y(QT, x, y, dx, dy, idx)
            tenure = ten_y + rng.integers(0, span + 1)
            exp_y[idx] = it + tenure + 1
        value += gain
        counters[1] = value

        if steps < trace.shape[0]:
            trace[steps, 0] = it
            trace[steps, 1] = side
            trace[steps, 2] = idx
            trace[steps, 3] = tenure
            trace[steps, 4] = kind
            trace[steps, 5] = value

        counters[0] = it + 1
        if value > best:
            counters[2] = value
            best_x[:] = x
            best_y[:] = y
            counters[3] = 0
        else:
            counters[3] += 1
        steps += 1
    return steps


_NO_TRACE = np.zeros((0, 6), dtype=np.int64)


def run_tabu(inst: Instance, start: Solution, params: TabuParams = TabuParams(),
             deadline: Optional[float] = None, rng: Optional[np.random.Generator] = None,
             trace: bool = False) -> TabuResult:
    """Run tabu search from ``start``.

    ``deadline`` is an absolute :func:`time.monotonic` timestamp.  ``rng``
    overrides the generator seeded from ``params.rng_seed`` (the harness
    passes its per-restart stream).  With ``trace=True`` every iteration is
    recorded as a row ``(iteration, side, index, tenure, kind, value)``
    where side 0 is x, and kind is free / aspiration / forced.
    """
    check_solution(inst, start)
    if rng is None:
        rng = np.random.default_rng(params.rng_seed)
    m, n = inst.m, inst.n
    depth = params.depth_for(inst)
    state = init_deltas(inst, start)
    tabu = TabuList(m, n)
    best_x = state.x.copy()
    best_y = state.y.copy()
    counters = np.array([0, state.value, state.value, 0], dtype=np.int64)
    ten_x = m // params.tenure_base_divisor
    ten_y = n // params.tenure_base_divisor

    if deadline is None and not trace:
        chunk = np.iinfo(np.int64).max
    else:
        # bounded kernel calls so the deadline is polled roughly every few ms
        chunk = max(16, 200_000 // (m + n))
    rows = []
    while counters[_STALL] < depth:
        buf = np.zeros((chunk, 6), dtype=np.int64) if trace else _NO_TRACE
        done = _tabu_steps(inst.Q, inst.QT, state.x, state.y, state.dx, state.dy,
                           tabu.expiry_x, tabu.expiry_y, best_x, best_y, counters,
                           depth, ten_x, ten_y, params.tenure_rand_span, rng, chunk, buf)
        if trace:
            rows.append(buf[:done])
        if deadline is not None and time.monotonic() >= deadline:
            break
    tabu.iteration = int(counters[_IT])
    return TabuResult(
        solution=Solution(best_x, best_y),
        value=int(counters[_BEST]),
        iterations=int(counters[_IT]),
        trace=np.concatenate(rows) if trace else None,
    )
