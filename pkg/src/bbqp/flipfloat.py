"""Flip-float neighborhood and the coordinate ascent method built on it.

A Flip-x-Float-y move flips one bit of x and then replaces y by its best
response.  With ``Sum(x, j) = d_j + sum_i x_i q_ij`` the value of the
floated solution is ``F(x) = c x + sum_j max(0, Sum(x, j))``, and the gain
of flipping ``x_i`` can be read off the Sum array in O(n).  Everything
here has a mirrored y-side twin obtained by exchanging x/y, i/j, c/d, m/n.
"""

from __future__ import annotations

import time
from typing import Optional

import numpy as np
from numba import njit

from .errors import ShapeError, StaleStateError
from .model import BIT_DTYPE, Instance, Solution, as_bits, check_solution, evaluate


class SumState:
    """Column sums ``sum_x`` (length n) and row sums ``sum_y`` (length m).

    Each array remembers the bit vector it was built for; using it against
    a different vector raises :class:`StaleStateError`.
    """

    def __init__(self, m: int, n: int):
        self.sum_x = np.zeros(n, dtype=np.int64)
        self.sum_y = np.zeros(m, dtype=np.int64)
        self.valid_x = False
        self.valid_y = False
        self._x = np.zeros(m, dtype=BIT_DTYPE)
        self._y = np.zeros(n, dtype=BIT_DTYPE)

    def check_x(self, x):
        if not self.valid_x or not np.array_equal(self._x, x):
            raise StaleStateError("sum_x is not valid for this x")

    def check_y(self, y):
        if not self.valid_y or not np.array_equal(self._y, y):
            raise StaleStateError("sum_y is not valid for this y")


def _bits_for(inst, bits, size, what):
    bits = as_bits(bits, what)
    if bits.size != size:
        raise ShapeError(f"{what} has length {bits.size}, expected {size}")
    return bits


def init_sum_x(inst: Instance, x, sums: Optional[SumState] = None) -> SumState:
    x = _bits_for(inst, x, inst.m, "x")
    sums = sums if sums is not None else SumState(inst.m, inst.n)
    sums.sum_x[:] = inst.d + x.astype(np.int64) @ inst.Q
    sums._x[:] = x
    sums.valid_x = True
    return sums


def init_sum_y(inst: Instance, y, sums: Optional[SumState] = None) -> SumState:
    y = _bits_for(inst, y, inst.n, "y")
    sums = sums if sums is not None else SumState(inst.m, inst.n)
    sums.sum_y[:] = inst.c + inst.Q @ y.astype(np.int64)
    sums._y[:] = y
    sums.valid_y = True
    return sums


def f_ystar(inst: Instance, x, sums: SumState) -> int:
    """``F(x) = f(x, y*(x))`` from the column sums."""
    x = _bits_for(inst, x, inst.m, "x")
    sums.check_x(x)
    return int(inst.c @ x.astype(np.int64) + np.maximum(sums.sum_x, 0).sum())


def f_xstar(inst: Instance, y, sums: SumState) -> int:
    y = _bits_for(inst, y, inst.n, "y")
    sums.check_y(y)
    return int(inst.d @ y.astype(np.int64) + np.maximum(sums.sum_y, 0).sum())


@njit(cache=True)
def _float_gain(row, lin, bit, sums):
    step = 1 - 2 * bit
    gain = step * lin
    for j in range(sums.shape[0]):
        ds = step * row[j]
        new = sums[j] + ds
        if ds > 0 and new > 0:
            gain += min(ds, new)
        elif ds < 0 and sums[j] > 0:
            gain -= min(-ds, sums[j])
    return gain


@njit(cache=True)
def _all_float_gains(A, lin, bits, sums, out):
    for i in range(bits.shape[0]):
        out[i] = _float_gain(A[i], lin[i], bits[i], sums)


@njit(cache=True)
def _phase(A, lin, flip, flt, sums, max_moves):
    """First-improvement scan over one side, restarting after every move.

    Floats the other side first.  Returns ``(moves, finished)`` where
    ``finished`` means a full scan found no improving move.
    """
    k = flip.shape[0]
    width = flt.shape[0]
    for j in range(width):
        flt[j] = 1 if sums[j] > 0 else 0
    moves = 0
    while moves < max_moves:
        found = -1
        for i in range(k):
            if _float_gain(A[i], lin[i], flip[i], sums) > 0:
                found = i
                break
        if found < 0:
            return moves, True
        step = 1 - 2 * flip[found]
        flip[found] = 1 - flip[found]
        for j in range(width):
            sums[j] += step * A[found, j]
            flt[j] = 1 if sums[j] > 0 else 0
        moves += 1
    return moves, False


def delta_flip_x_float_y(inst: Instance, x, sums: SumState, i: int) -> int:
    """Gain of flipping ``x_i`` and refloating y, in O(n)."""
    x = _bits_for(inst, x, inst.m, "x")
    sums.check_x(x)
    return int(_float_gain(inst.Q[i], inst.c[i], x[i], sums.sum_x))


def delta_flip_y_float_x(inst: Instance, y, sums: SumState, j: int) -> int:
    y = _bits_for(inst, y, inst.n, "y")
    sums.check_y(y)
    return int(_float_gain(inst.QT[j], inst.d[j], y[j], sums.sum_y))


def flip_x_float_y_gains(inst: Instance, x, sums: SumState) -> np.ndarray:
    """All m Flip-x-Float-y gains."""
    x = _bits_for(inst, x, inst.m, "x")
    sums.check_x(x)
    out = np.empty(inst.m, dtype=np.int64)
    _all_float_gains(inst.Q, inst.c, x, sums.sum_x, out)
    return out


def flip_y_float_x_gains(inst: Instance, y, sums: SumState) -> np.ndarray:
    y = _bits_for(inst, y, inst.n, "y")
    sums.check_y(y)
    out = np.empty(inst.n, dtype=np.int64)
    _all_float_gains(inst.QT, inst.d, y, sums.sum_y, out)
    return out


def update_sums_after_flip(sums: SumState, inst: Instance, i: int, direction: int) -> None:
    """Account for ``x_i`` changing by ``direction`` (+1 for 0->1, -1 for 1->0)."""
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    if not sums.valid_x:
        raise StaleStateError("sum_x is not initialized")
    if sums._x[i] != (0 if direction == 1 else 1):
        raise StaleStateError(f"x_{i} cannot move by {direction}")
    sums.sum_x += direction * inst.Q[i]
    sums._x[i] += direction


def update_sums_after_flip_y(sums: SumState, inst: Instance, j: int, direction: int) -> None:
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    if not sums.valid_y:
        raise StaleStateError("sum_y is not initialized")
    if sums._y[j] != (0 if direction == 1 else 1):
        raise StaleStateError(f"y_{j} cannot move by {direction}")
    sums.sum_y += direction * inst.QT[j]
    sums._y[j] += direction


def run_coordinate(inst: Instance, start: Solution, deadline: Optional[float] = None,
                   trace: bool = False):
    """Flip-float coordinate ascent from ``start``.

    Alternates an x-phase (float y, then accept the first improving
    Flip-x-Float-y move and rescan) and the mirrored y-phase.  Stops once
    a y-phase accepts nothing and its initial refloat of x changes
    nothing, so the result admits no improving move on either side.

    Returns ``(solution, value)``, plus the list of objective values after
    each accepted move when ``trace`` is set.  ``deadline`` is an absolute
    :func:`time.monotonic` timestamp, polled every 64 accepted moves.
    """
    check_solution(inst, start)
    x = start.x.copy()
    y = start.y.copy()
    sum_x = np.empty(inst.n, dtype=np.int64)
    sum_y = np.empty(inst.m, dtype=np.int64)
    if trace:
        budget = 1
    elif deadline is not None:
        budget = 64
    else:
        budget = np.iinfo(np.int64).max
    values = []

    def run_phase(A, lin, flip, flt, sums):
        total = 0
        while True:
            moves, finished = _phase(A, lin, flip, flt, sums, budget)
            total += moves
            if trace and moves:
                values.append(evaluate(inst, Solution(x, y)))
            if finished:
                return total
            if deadline is not None and time.monotonic() >= deadline:
                return None

    while True:
        sum_x[:] = inst.d + x.astype(np.int64) @ inst.Q
        if run_phase(inst.Q, inst.c, x, y, sum_x) is None:
            break
        if deadline is not None and time.monotonic() >= deadline:
            break
        x_before = x.copy()
        sum_y[:] = inst.c + inst.Q @ y.astype(np.int64)
        moves = run_phase(inst.QT, inst.d, y, x, sum_y)
        if moves is None:
            break
        if moves == 0 and np.array_equal(x, x_before):
            break
        if deadline is not None and time.monotonic() >= deadline:
            break

    sol = Solution(x, y)
    value = evaluate(inst, sol)
    if trace:
        return sol, value, values
    return sol, value
