"""Problem data, objective evaluation, best responses and the exact oracle.

A BBQP instance maximizes ``f(x, y) = x^T Q y + c x + d y`` over bit
vectors ``x`` (length m) and ``y`` (length n).  All coefficient and
objective arithmetic is exact ``int64``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import OverflowGuardError, ReductionError, ShapeError, TooLargeError

BIT_DTYPE = np.int8
OVERFLOW_LIMIT = 2**62
BRUTE_FORCE_CAP = 30


def _as_int_array(values, ndim, what):
    arr = np.asarray(values)
    if arr.dtype.kind == "b":
        arr = arr.astype(np.int64)
    if arr.dtype.kind not in "iu":
        if arr.dtype.kind == "f" and np.all(np.isfinite(arr)) and np.all(arr == np.round(arr)):
            arr = arr.astype(np.int64)
        else:
            raise ShapeError(f"{what} must hold integers, got dtype {arr.dtype}")
    if arr.ndim != ndim:
        raise ShapeError(f"{what} must be {ndim}-dimensional, got shape {arr.shape}")
    return arr.astype(np.int64)


def magnitude_bound(Q, c, d) -> int:
    """Upper bound on |f(x, y)| over all solutions, as a Python int."""
    m, n = Q.shape
    qmax = int(np.abs(Q).max()) if Q.size else 0
    cmax = int(np.abs(c).max()) if c.size else 0
    dmax = int(np.abs(d).max()) if d.size else 0
    return m * n * qmax + m * cmax + n * dmax


class Instance:
    """Immutable BBQP instance ``P(Q, c, d)``.

    The arrays are copied and flagged read-only, so one instance can be
    shared by any number of concurrent searches.
    """

    __slots__ = ("Q", "QT", "c", "d", "name")

    def __init__(self, Q, c, d, name: Optional[str] = None):
        Q = _as_int_array(Q, 2, "Q")
        c = _as_int_array(c, 1, "c")
        d = _as_int_array(d, 1, "d")
        m, n = Q.shape
        if m < 1 or n < 1:
            raise ShapeError(f"Q must be at least 1x1, got {m}x{n}")
        if c.shape != (m,):
            raise ShapeError(f"c has length {c.size}, expected m={m}")
        if d.shape != (n,):
            raise ShapeError(f"d has length {d.size}, expected n={n}")
        if magnitude_bound(Q, c, d) > OVERFLOW_LIMIT:
            raise OverflowGuardError(
                "coefficients too large: objective magnitude bound exceeds 2^62"
            )
        Q = np.ascontiguousarray(Q)
        QT = np.ascontiguousarray(Q.T)
        for arr in (Q, QT, c, d):
            arr.flags.writeable = False
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "QT", QT)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "name", name)

    def __setattr__(self, key, value):
        raise AttributeError("Instance is immutable")

    def __reduce__(self):
        return (Instance, (self.Q, self.c, self.d, self.name))

    @property
    def m(self) -> int:
        return self.Q.shape[0]

    @property
    def n(self) -> int:
        return self.Q.shape[1]

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            np.array_equal(self.Q, other.Q)
            and np.array_equal(self.c, other.c)
            and np.array_equal(self.d, other.d)
        )

    def __hash__(self):
        return hash((self.Q.tobytes(), self.c.tobytes(), self.d.tobytes()))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Instance{label} {self.m}x{self.n}>"


@dataclass
class Solution:
    """A pair of bit vectors ``x`` (length m) and ``y`` (length n)."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        self.x = as_bits(self.x, "x")
        self.y = as_bits(self.y, "y")

    @property
    def shape(self):
        return self.x.size, self.y.size

    def copy(self) -> "Solution":
        return Solution(self.x.copy(), self.y.copy())

    def __eq__(self, other):
        if not isinstance(other, Solution):
            return NotImplemented
        return np.array_equal(self.x, other.x) and np.array_equal(self.y, other.y)

    def key(self) -> tuple:
        """Lexicographic sort key: x bits then y bits."""
        return tuple(self.x.tolist()) + tuple(self.y.tolist())


def as_bits(values, what="bits") -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ShapeError(f"{what} must be a 1-d bit vector, got shape {arr.shape}")
    if arr.size and not np.all((arr == 0) | (arr == 1)):
        raise ShapeError(f"{what} must contain only 0 and 1")
    return np.array(arr, dtype=BIT_DTYPE)


def check_solution(inst: Instance, sol: Solution) -> None:
    if sol.x.size != inst.m or sol.y.size != inst.n:
        raise ShapeError(
            f"solution is {sol.x.size}x{sol.y.size}, instance is {inst.m}x{inst.n}"
        )


def evaluate(inst: Instance, sol: Solution) -> int:
    """Exact objective ``x^T Q y + c x + d y``."""
    check_solution(inst, sol)
    x = sol.x.astype(np.int64)
    y = sol.y.astype(np.int64)
    return int(x @ inst.Q @ y + inst.c @ x + inst.d @ y)


def best_response_y(inst: Instance, x) -> np.ndarray:
    """Optimal y for fixed x; columns with a zero marginal stay at 0."""
    x = as_bits(x, "x")
    if x.size != inst.m:
        raise ShapeError(f"x has length {x.size}, expected m={inst.m}")
    sums = inst.d + x.astype(np.int64) @ inst.Q
    return (sums > 0).astype(BIT_DTYPE)


def best_response_x(inst: Instance, y) -> np.ndarray:
    """Optimal x for fixed y; rows with a zero marginal stay at 0."""
    y = as_bits(y, "y")
    if y.size != inst.n:
        raise ShapeError(f"y has length {y.size}, expected n={inst.n}")
    sums = inst.c + inst.Q @ y.astype(np.int64)
    return (sums > 0).astype(BIT_DTYPE)


def hamming(a: Solution, b: Solution) -> int:
    """Number of differing bits over the concatenation of x and y."""
    if a.shape != b.shape:
        raise ShapeError(f"cannot compare {a.shape} with {b.shape} solutions")
    return int(np.count_nonzero(a.x != b.x) + np.count_nonzero(a.y != b.y))


def reduction_guard(Qp, cp) -> int:
    """Smallest M for which :func:`reduce_bqp` forces ``x == y`` at optimum."""
    Qp = np.asarray(Qp, dtype=np.int64)
    cp = np.asarray(cp, dtype=np.int64)
    n = cp.size
    qmax = int(np.abs(Qp).max()) if Qp.size else 0
    cmax = int(np.abs(cp).max()) if cp.size else 0
    return 1 + n * qmax + cmax


def reduce_bqp(Qp, cp, M: int, name: Optional[str] = None) -> Instance:
    """Encode ``max x^T Q' x + c' x`` as a BBQP instance.

    Uses the doubled transform ``Q = 2Q' + 4MI``, ``c = d = c' - 2Me`` so
    that every coefficient stays integral.  The BBQP optimum is twice the
    BQP optimum and is attained with ``x == y``.
    """
    Qp = _as_int_array(Qp, 2, "Q'")
    cp = _as_int_array(cp, 1, "c'")
    n = cp.size
    if Qp.shape != (n, n):
        raise ShapeError(f"Q' must be {n}x{n}, got {Qp.shape}")
    guard = reduction_guard(Qp, cp)
    if M < guard:
        raise ReductionError(f"M={M} is below the guard value {guard}")
    Q = 2 * Qp + 4 * M * np.eye(n, dtype=np.int64)
    lin = cp - 2 * M
    return Instance(Q, lin, lin.copy(), name=name)


def bqp_value(Qp, cp, x) -> int:
    x = np.asarray(x, dtype=np.int64)
    Qp = np.asarray(Qp, dtype=np.int64)
    cp = np.asarray(cp, dtype=np.int64)
    return int(x @ Qp @ x + cp @ x)


def all_bit_vectors(k: int) -> np.ndarray:
    """All 2^k bit vectors as rows, in lexicographic order."""
    codes = np.arange(2**k, dtype=np.int64)
    shifts = np.arange(k - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] >> shifts) & 1).astype(BIT_DTYPE)


def _lex_first(rows: np.ndarray) -> np.ndarray:
    # np.lexsort uses the last key as primary
    order = np.lexsort(rows.T[::-1])
    return rows[order[0]]


def brute_force_opt(inst: Instance) -> tuple[Solution, int]:
    """Exact maximizer by enumerating the smaller side.

    Among all optima, returns the lexicographically smallest (x, then y).
    """
    m, n = inst.m, inst.n
    if m + n > BRUTE_FORCE_CAP:
        raise TooLargeError(f"m + n = {m + n} exceeds the brute-force cap {BRUTE_FORCE_CAP}")
    if m <= n:
        xs = all_bit_vectors(m)
        sums = inst.d[None, :] + xs.astype(np.int64) @ inst.Q
        values = xs.astype(np.int64) @ inst.c + np.maximum(sums, 0).sum(axis=1)
        best = int(values.max())
        x = _lex_first(xs[values == best])
        y = best_response_y(inst, x)
    else:
        ys = all_bit_vectors(n)
        sums = inst.c[None, :] + ys.astype(np.int64) @ inst.QT
        values = ys.astype(np.int64) @ inst.d + np.maximum(sums, 0).sum(axis=1)
        best = int(values.max())
        candidates = (sums[values == best] > 0).astype(BIT_DTYPE)
        x = _lex_first(candidates)
        y = best_response_y(inst, x)
    sol = Solution(x, y)
    return sol, evaluate(inst, sol)


def brute_force_bqp(Qp, cp) -> tuple[np.ndarray, int]:
    """Exact BQP optimum by full enumeration (testing oracle)."""
    cp = np.asarray(cp, dtype=np.int64)
    n = cp.size
    if n > BRUTE_FORCE_CAP // 2:
        raise TooLargeError(f"n = {n} too large for BQP enumeration")
    xs = all_bit_vectors(n).astype(np.int64)
    Qp = np.asarray(Qp, dtype=np.int64)
    values = np.einsum("ki,ij,kj->k", xs, Qp, xs) + xs @ cp
    best = int(values.max())
    return xs[values == best][0].astype(BIT_DTYPE), best
