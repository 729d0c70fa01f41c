"""Fitness-distance sampling of tabu search local optima."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, Optional, TextIO

from .errors import FormatError
from .harness import random_solution, restart_rng
from .model import Instance, Solution, check_solution, evaluate, hamming
from .tabu import TabuParams, run_tabu

DEFAULT_SAMPLES = 1000


@dataclass(frozen=True, order=True)
class LandscapeSample:
    distance: int
    gap: int
    sample_value: Optional[int] = None


def sample_landscape(inst: Instance, n_samples: int = DEFAULT_SAMPLES,
                     tabu_params: TabuParams = TabuParams(),
                     reference: Optional[Solution] = None,
                     master_seed: int = 0) -> list[LandscapeSample]:
    """One tabu run per sample from independent random starts.

    Distances and gaps are measured against ``reference`` when given,
    otherwise against the best sampled solution (first one on ties).
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if reference is not None:
        check_solution(inst, reference)
    found = []
    for k in range(n_samples):
        rng = restart_rng(master_seed, k)
        start = random_solution(inst.m, inst.n, rng)
        res = run_tabu(inst, start, tabu_params, rng=rng)
        found.append((res.solution, res.value))
    if reference is None:
        reference, ref_value = max(found, key=lambda item: item[1])
    else:
        ref_value = evaluate(inst, reference)
    return [LandscapeSample(hamming(sol, reference), ref_value - value, value)
            for sol, value in found]


def write_landscape_csv(samples: Iterable[LandscapeSample], sink: TextIO) -> None:
    """Write ``distance,gap`` rows sorted by distance, then gap."""
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(["distance", "gap"])
    for s in sorted(samples, key=lambda s: (s.distance, s.gap)):
        writer.writerow([s.distance, s.gap])


def read_landscape_csv(source: TextIO) -> list[LandscapeSample]:
    reader = csv.reader(source)
    header = next(reader, None)
    if header != ["distance", "gap"]:
        raise FormatError("expected header 'distance,gap'", line=1)
    samples = []
    for lineno, row in enumerate(reader, start=2):
        if len(row) != 2:
            raise FormatError(f"expected 2 fields, found {len(row)}", line=lineno)
        try:
            samples.append(LandscapeSample(int(row[0]), int(row[1])))
        except ValueError:
            raise FormatError("non-integer field", line=lineno)
    return samples

