"""Multi-start experiment driver, run statistics and random instances.

Restart ``k`` draws its start solution (and feeds its tabu tenures) from a
generator seeded with ``SeedSequence([master_seed, k])``, so serial and
parallel runs visit the same starts and a restart-budgeted run is fully
reproducible.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import BBQPError
from .flipfloat import run_coordinate
from .hybrid import HybridParams, run_hybrid
from .model import BIT_DTYPE, Instance, Solution
from .tabu import TabuParams, run_tabu

log = logging.getLogger(__name__)

ALGORITHMS = ("tabu", "flipfloat", "hybrid")
REPORT_FIELDS = ("instance", "algo", "best_value", "n_init", "n_hit",
                 "time_to_best_s", "elapsed_s", "seed")
TIMING_FIELDS = ("time_to_best_s", "elapsed_s")


@dataclass(frozen=True)
class Budget:
    """Stopping rule for :func:`multi_start`; at least one bound is required.

    Both bounds are checked between restarts, and the wall-clock deadline
    is also passed down to the running search.
    """

    wall_seconds: Optional[float] = None
    max_restarts: Optional[int] = None

    def __post_init__(self):
        if self.wall_seconds is None and self.max_restarts is None:
            raise BBQPError("budget needs wall_seconds or max_restarts")
        if self.wall_seconds is not None and not self.wall_seconds > 0:
            raise BBQPError("wall_seconds must be positive")
        if self.max_restarts is not None and self.max_restarts < 1:
            raise BBQPError("max_restarts must be positive")


@dataclass
class RunReport:
    instance: str
    algo: str
    best_value: int
    best_solution: Solution
    n_init: int
    n_hit: int
    time_to_best: float
    total_elapsed: float
    seed: int
    # final value of every restart, indexed by restart number
    restart_values: list = field(default_factory=list, repr=False)

    def record(self) -> dict:
        return {
            "instance": self.instance,
            "algo": self.algo,
            "best_value": self.best_value,
            "n_init": self.n_init,
            "n_hit": self.n_hit,
            "time_to_best_s": f"{self.time_to_best:.6f}",
            "elapsed_s": f"{self.total_elapsed:.6f}",
            "seed": self.seed,
        }

    def without_timing(self) -> dict:
        rec = self.record()
        for key in TIMING_FIELDS:
            del rec[key]
        return rec

    def to_tsv(self, header: bool = False) -> str:
        line = "\t".join(str(v) for v in self.record().values())
        if header:
            return "\t".join(REPORT_FIELDS) + "\n" + line
        return line

    def to_block(self) -> str:
        return "\n".join(f"{k}: {v}" for k, v in self.record().items())


def restart_rng(master_seed: int, k: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([master_seed, k]))


def random_solution(m: int, n: int, rng: np.random.Generator) -> Solution:
    """Uniformly random bits on both sides."""
    if m < 1 or n < 1:
        raise BBQPError("m and n must be positive")
    x = rng.integers(0, 2, size=m, dtype=BIT_DTYPE)
    y = rng.integers(0, 2, size=n, dtype=BIT_DTYPE)
    return Solution(x, y)


def generate_random_instance(m: int, n: int, lo: int, hi: int, seed: int,
                             name: Optional[str] = None) -> Instance:
    """Entries of Q, c and d drawn i.i.d. uniform on the integers [lo, hi]."""
    if lo > hi:
        raise BBQPError(f"lo={lo} exceeds hi={hi}")
    if m < 1 or n < 1:
        raise BBQPError("m and n must be positive")
    rng = np.random.default_rng(seed)
    Q = rng.integers(lo, hi, size=(m, n), dtype=np.int64, endpoint=True)
    c = rng.integers(lo, hi, size=m, dtype=np.int64, endpoint=True)
    d = rng.integers(lo, hi, size=n, dtype=np.int64, endpoint=True)
    if name is None:
        name = f"rand{m}x{n}_s{seed}"
    return Instance(Q, c, d, name=name)


def solve_once(inst: Instance, algo: str, start: Solution, params: TabuParams,
               rng: np.random.Generator, deadline: Optional[float] = None):
    """Run one algorithm from ``start``; returns ``(solution, value)``."""
    if algo == "tabu":
        res = run_tabu(inst, start, params, deadline=deadline, rng=rng)
        return res.solution, res.value
    if algo == "flipfloat":
        return run_coordinate(inst, start, deadline=deadline)
    if algo == "hybrid":
        res = run_hybrid(inst, start, HybridParams(params, deadline), rng=rng)
        return res.solution, res.value
    raise BBQPError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")


def _restarts(inst, algo, params, master_seed, first, step, max_restarts, deadline, t0):
    """Run restarts first, first+step, ... until the budget runs out.

    Returns per-restart ``(k, value, elapsed)`` records and this worker's
    best ``(value, k, solution)``.
    """
    records = []
    best = None
    k = first
    while True:
        if max_restarts is not None and k >= max_restarts:
            break
        # the first restart always runs so every report has a result
        if deadline is not None and records and time.monotonic() >= deadline:
            break
        rng = restart_rng(master_seed, k)
        start = random_solution(inst.m, inst.n, rng)
        sol, value = solve_once(inst, algo, start, params, rng, deadline)
        records.append((k, value, time.monotonic() - t0))
        if best is None or value > best[0]:
            best = (value, k, sol)
        k += step
    return records, best


def multi_start(inst: Instance, algo: str, params: Optional[TabuParams] = None,
                budget: Budget = Budget(max_restarts=1), master_seed: int = 0,
                jobs: int = 1) -> RunReport:
    """Repeated random restarts of ``algo`` under ``budget``.

    ``time_to_best`` is the elapsed time at which the best value was last
    reached divided by the number of restarts that reached it.
    """
    if algo not in ALGORITHMS:
        raise BBQPError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")
    params = params if params is not None else TabuParams()
    t0 = time.monotonic()
    deadline = t0 + budget.wall_seconds if budget.wall_seconds is not None else None
    args = (inst, algo, params, master_seed)
    if jobs <= 1:
        parts = [_restarts(*args, 0, 1, budget.max_restarts, deadline, t0)]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_restarts, *args, w, jobs, budget.max_restarts, deadline, t0)
                       for w in range(jobs)]
            parts = [f.result() for f in futures]
    total = time.monotonic() - t0

    records = sorted(r for recs, _ in parts for r in recs)
    bests = [b for _, b in parts if b is not None]
    best_value = max(b[0] for b in bests)
    # lowest restart index wins among equal values, independent of worker layout
    _, _, best_solution = min((b for b in bests if b[0] == best_value), key=lambda b: b[1])
    hits = [r for r in records if r[1] == best_value]
    last_hit = max(r[2] for r in hits)
    report = RunReport(
        instance=inst.name or "instance",
        algo=algo,
        best_value=best_value,
        best_solution=best_solution,
        n_init=len(records),
        n_hit=len(hits),
        time_to_best=last_hit / len(hits),
        total_elapsed=total,
        seed=master_seed,
        restart_values=[r[1] for r in records],
    )
    log.info("%s/%s: best %d, %d/%d hits", report.instance, algo, best_value,
             report.n_hit, report.n_init)
    return report
