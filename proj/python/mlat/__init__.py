"""Exact pseudorange multilateration.

Satellites are passed as an (m, n) array of positions, pseudoranges as a
length-m sequence. Solutions are (b, x) pairs: clock bias and position.
"""

from ._core import (
    InvalidInput,
    classify,
    cost_surface,
    intersect,
    run_trials,
    sample,
    solve,
)

__all__ = ["InvalidInput", "classify", "cost_surface", "intersect", "run_trials", "sample", "solve"]
