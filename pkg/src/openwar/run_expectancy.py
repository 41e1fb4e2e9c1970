"""Expected-run matrix over the 24 base-out states and per-PA run values.

The matrix entry rho(outs, bases) is the empirical mean of runs scored
from the start of a plate appearance in that state through the end of
its half-inning.  The absorbing 3-out state is worth 0 by definition.
The run value of one plate appearance is

    delta = rho(end state) - rho(start state) + runs scored,

the quantity usually called RE24.
"""

from __future__ import annotations

import io
import warnings
from dataclasses import dataclass, field

from .events import LIVE_STATES

__all__ = ["RunExpectancyMatrix", "RunValue", "estimate_matrix", "run_value"]


@dataclass
class RunExpectancyMatrix:
    rho: dict  # (outs, bases) -> expected runs to end of half-inning
    sample_counts: dict = field(default_factory=dict)

    def value(self, state):
        if state.outs == 3:
            return 0.0
        key = (state.outs, state.bases)
        if key not in self.rho:
            raise KeyError(f"state {key} not covered by the matrix")
        return self.rho[key]

    def to_csv(self):
        out = io.StringIO()
        out.write("outs,bases_mask,rho,n\n")
        for key in LIVE_STATES:
            out.write(f"{key[0]},{key[1]},{self.rho[key]!r},{self.sample_counts[key]}\n")
        return out.getvalue()


@dataclass
class RunValue:
    delta_rho: float
    runs: int

    @property
    def delta(self):
        return self.delta_rho + self.runs


def estimate_matrix(data):
    """Estimate rho(o, b) by a forward scan within each half-inning.

    Runs-to-inning-end for a plate appearance include its own runs.  A
    trailing half-inning that never reaches three outs at the very end of
    the data is dropped with a warning; earlier truncated half-innings
    (walk-offs) are kept as observed.
    """
    groups = data.half_innings()
    if groups and groups[-1][1][-1].end_state.outs != 3:
        warnings.warn("final half-inning is unterminated; dropped from estimation")
        groups = groups[:-1]

    sums = {key: 0.0 for key in LIVE_STATES}
    counts = {key: 0 for key in LIVE_STATES}
    for _, group in groups:
        runs_after = 0
        togo = []
        for pa in reversed(group):
            runs_after += pa.runs_scored
            togo.append(runs_after)
        togo.reverse()
        for pa, r in zip(group, togo):
            key = (pa.start_state.outs, pa.start_state.bases)
            sums[key] += r
            counts[key] += 1

    empty = [key for key in LIVE_STATES if counts[key] == 0]
    if empty:
        raise ValueError(f"states never observed: {empty}")
    rho = {key: sums[key] / counts[key] for key in LIVE_STATES}
    return RunExpectancyMatrix(rho=rho, sample_counts=counts)


def run_value(pa, matrix):
    """RE24 run value of one plate appearance under the given matrix."""
    d_rho = matrix.value(pa.end_state) - matrix.value(pa.start_state)
    return RunValue(delta_rho=d_rho, runs=pa.runs_scored)
