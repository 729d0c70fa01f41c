"""One-flip gain arrays with O(m+n) incremental update.

``dx[i]`` is the objective change from flipping ``x_i`` and ``dy[j]`` the
change from flipping ``y_j``.  Both are kept for every index regardless of
the current bit; the move direction is read from the bit itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from numba import njit

from .model import Instance, Solution, check_solution, evaluate


class Side(Enum):
    X = "x"
    Y = "y"


@dataclass(frozen=True)
class Move:
    side: Side
    index: int


@njit(cache=True)
def flip_x(Q, x, y, dx, dy, i):
    """Flip x_i and update both gain arrays; returns the realized gain."""
    gain = dx[i]
    n = y.shape[0]
    if x[i] == 0:
        for j in range(n):
            if y[j] == 1:
                dy[j] -= Q[i, j]
            else:
                dy[j] += Q[i, j]
    else:
        for j in range(n):
            if y[j] == 1:
                dy[j] += Q[i, j]
            else:
                dy[j] -= Q[i, j]
    dx[i] = -dx[i]
    x[i] = 1 - x[i]
    return gain


@njit(cache=True)
def flip_y(QT, x, y, dx, dy, j):
    """Mirror of :func:`flip_x`; ``QT`` is the transposed matrix."""
    gain = dy[j]
    m = x.shape[0]
    if y[j] == 0:
        for i in range(m):
            if x[i] == 1:
                dx[i] -= QT[j, i]
            else:
                dx[i] += QT[j, i]
    else:
        for i in range(m):
            if x[i] == 1:
                dx[i] += QT[j, i]
            else:
                dx[i] -= QT[j, i]
    dy[j] = -dy[j]
    y[j] = 1 - y[j]
    return gain


def compute_deltas(inst: Instance, x: np.ndarray, y: np.ndarray):
    """Gains from scratch in O(mn)."""
    xs = x.astype(np.int64)
    ys = y.astype(np.int64)
    row = inst.c + inst.Q @ ys
    col = inst.d + xs @ inst.Q
    return (1 - 2 * xs) * row, (1 - 2 * ys) * col


class DeltaState:
    """Current solution, its objective and both gain arrays.

    Owned by a single search; the wrapped instance is shared read-only.
    """

    def __init__(self, inst: Instance, x, y, dx, dy, value: int):
        self.inst = inst
        self.x = x
        self.y = y
        self.dx = dx
        self.dy = dy
        self.value = value

    @property
    def solution(self) -> Solution:
        return Solution(self.x.copy(), self.y.copy())

    def gain(self, mv: Move) -> int:
        return int(self.dx[mv.index] if mv.side is Side.X else self.dy[mv.index])

    def apply(self, mv: Move) -> int:
        """Perform ``mv`` in O(m+n); returns the gain that was realized."""
        if mv.side is Side.X:
            gain = flip_x(self.inst.Q, self.x, self.y, self.dx, self.dy, mv.index)
        else:
            gain = flip_y(self.inst.QT, self.x, self.y, self.dx, self.dy, mv.index)
        self.value += int(gain)
        return int(gain)

    def copy(self) -> "DeltaState":
        return DeltaState(self.inst, self.x.copy(), self.y.copy(),
                          self.dx.copy(), self.dy.copy(), self.value)

    def __eq__(self, other):
        if not isinstance(other, DeltaState):
            return NotImplemented
        return (
            self.value == other.value
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.y, other.y)
            and np.array_equal(self.dx, other.dx)
            and np.array_equal(self.dy, other.dy)
        )

    def dump(self) -> str:
        return (f"value {self.value}\n"
                f"dx {' '.join(map(str, self.dx.tolist()))}\n"
                f"dy {' '.join(map(str, self.dy.tolist()))}\n")


def init_deltas(inst: Instance, sol: Solution) -> DeltaState:
    check_solution(inst, sol)
    x = sol.x.copy()
    y = sol.y.copy()
    dx, dy = compute_deltas(inst, x, y)
    return DeltaState(inst, x, y, dx, dy, evaluate(inst, sol))


def apply_move(state: DeltaState, mv: Move) -> None:
    state.apply(mv)
