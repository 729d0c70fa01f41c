"""Heuristics for the bipartite boolean quadratic programming problem.

Maximize ``x^T Q y + c x + d y`` over bit vectors x and y with one-flip
tabu search, flip-float coordinate ascent, or their hybrid.
"""

from .errors import (BBQPError, FormatError, OverflowGuardError, ReductionError,
                     ShapeError, StaleStateError, TooLargeError)
from .fileio import (parse_bqp, parse_instance, parse_solution, read_instance,
                     serialize_bqp, serialize_instance, serialize_solution)
from .flipfloat import SumState, run_coordinate
from .harness import (Budget, RunReport, generate_random_instance, multi_start,
                      random_solution)
from .hybrid import HybridParams, run_hybrid
from .landscape import LandscapeSample, sample_landscape, write_landscape_csv
from .model import (Instance, Solution, best_response_x, best_response_y,
                    brute_force_opt, evaluate, hamming, reduce_bqp)
from .oneflip import DeltaState, Move, Side, apply_move, init_deltas
from .tabu import TabuParams, run_tabu

__version__ = "0.1.0"
