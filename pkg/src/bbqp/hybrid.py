"""Tabu search / flip-float coordinate ascent alternation."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .flipfloat import run_coordinate
from .model import Instance, Solution, check_solution
from .tabu import TabuParams, run_tabu


@dataclass(frozen=True)
class HybridParams:
    tabu: TabuParams = field(default_factory=TabuParams)
    deadline: Optional[float] = None


@dataclass
class HybridResult:
    solution: Solution
    value: int
    rounds: int
    # (tabu value, coordinate value) per round
    history: list = field(default_factory=list)

    def __iter__(self):
        return iter((self.solution, self.value))


def run_hybrid(inst: Instance, start: Solution, params: HybridParams = HybridParams(),
               rng: Optional[np.random.Generator] = None) -> HybridResult:
    """Alternate tabu search and the coordinate method from ``start``.

    Each round runs tabu search from the incumbent and then the coordinate
    method from the tabu result; another round follows only if the
    coordinate method strictly improved on what tabu search handed it.
    One generator feeds every tabu phase, so a run is reproducible from
    ``params.tabu.rng_seed`` (or ``rng``).
    """
    check_solution(inst, start)
    if rng is None:
        rng = np.random.default_rng(params.tabu.rng_seed)
    deadline = params.deadline
    incumbent = start.copy()
    best_sol, best_val = None, None
    history = []
    improved = True
    while improved:
        improved = False
        tabu_res = run_tabu(inst, incumbent, params.tabu, deadline=deadline, rng=rng)
        if best_val is None or tabu_res.value > best_val:
            best_sol, best_val = tabu_res.solution, tabu_res.value
        if deadline is not None and time.monotonic() >= deadline:
            history.append((tabu_res.value, None))
            break
        coord_sol, coord_val = run_coordinate(inst, tabu_res.solution, deadline=deadline)
        history.append((tabu_res.value, coord_val))
        if coord_val > best_val:
            best_sol, best_val = coord_sol, coord_val
        if coord_val > tabu_res.value:
            improved = True
            incumbent = coord_sol
        if deadline is not None and time.monotonic() >= deadline:
            break
    return HybridResult(best_sol.copy(), best_val, len(history), history)
