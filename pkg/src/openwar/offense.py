"""Offensive apportionment: splits each plate appearance's run value among
the hitter and the baserunners through a chain of regressions.

1. Park/platoon adjustment of the raw run values (residual: adjusted
   offensive value).
2. Expected-advancement regression on start state + event type (residual:
   the baserunners' collective share).
3. The baserunner share is divided among individual runners, batter
   included, weighted by empirical advancement probabilities.
4. The hitter's remainder is adjusted for fielding position (residual:
   hitting runs above average).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import DesignMatrix, ols_fit

__all__ = [
    "BaserunnerCredit",
    "AdvancementTable",
    "OffenseResult",
    "platoon_advantage",
    "park_platoon_design",
    "fit_park_platoon",
    "fit_baserunner_expectation",
    "advancement_probabilities",
    "apportion_baserunning",
    "fit_position_adjustment",
    "apportion_offense",
]

#: rank assigned to a runner put out on the bases: strictly below holding,
#: so the cumulative advancement probability stays a CDF
OUT_RANK = -1


def platoon_advantage(pa):
    """1 when the batter has the handedness edge. Switch hitters always do."""
    return 1.0 if pa.batter_hand == "S" or pa.batter_hand != pa.pitcher_hand else 0.0


def park_platoon_design(data):
    """Intercept + ballpark indicators + platoon indicator (B_i)."""
    parks = sorted({pa.ballpark_id for pa in data.plate_appearances})
    cols = ["intercept"] + [f"park_{p}" for p in parks] + ["platoon"]
    n = len(data.plate_appearances)
    V = np.zeros((n, len(cols)))
    V[:, 0] = 1.0
    park_ix = {p: 1 + j for j, p in enumerate(parks)}
    for i, pa in enumerate(data.plate_appearances):
        V[i, park_ix[pa.ballpark_id]] = 1.0
        V[i, -1] = platoon_advantage(pa)
    return DesignMatrix(columns=cols, values=V)


def fit_park_platoon(data, deltas):
    """Regress run values on B_i; residuals are the adjusted offensive values."""
    return ols_fit(park_platoon_design(data), deltas)


def _state_event_design(data):
    """Intercept + start-state indicators + event-type indicators (S_i)."""
    states = sorted({(pa.start_state.outs, pa.start_state.bases)
                     for pa in data.plate_appearances})
    events = sorted({pa.event_type for pa in data.plate_appearances})
    cols = (["intercept"]
            + [f"state_{o}_{b}" for o, b in states]
            + [f"event_{e}" for e in events])
    n = len(data.plate_appearances)
    V = np.zeros((n, len(cols)))
    V[:, 0] = 1.0
    state_ix = {s: 1 + j for j, s in enumerate(states)}
    event_ix = {e: 1 + len(states) + j for j, e in enumerate(events)}
    for i, pa in enumerate(data.plate_appearances):
        V[i, state_ix[(pa.start_state.outs, pa.start_state.bases)]] = 1.0
        V[i, event_ix[pa.event_type]] = 1.0
    return DesignMatrix(columns=cols, values=V)


def fit_baserunner_expectation(data, eps_hat):
    """Regress adjusted values on S_i; residuals are the baserunner share,
    positive when the runners beat the expected advancement."""
    return ols_fit(_state_event_design(data), eps_hat)


def _advancement_rank(start_base, dest):
    """Ordered advancement outcome for a runner (or the batter, base 0)."""
    if dest == "O":
        return OUT_RANK
    end = 4 if dest == "H" else int(dest[0])
    return end - start_base


def _runner_outcomes(pa):
    """Yield (player_id, start_base, rank); the batter is base 0."""
    for base, rid, dest in pa.runners():
        yield rid, base, _advancement_rank(base, dest)
    yield pa.batter_id, 0, _advancement_rank(0, pa.batter_dest)


@dataclass
class AdvancementTable:
    """Empirical cumulative advancement probabilities per (event, start base).

    kappa(event, base, rank) = Pr(K <= rank) within the cell; sparse cells
    fall back to pooling over start bases, then over everything.
    """

    cells: dict  # (event, base) -> list of (rank, cum_prob)
    pooled: dict  # event -> list of (rank, cum_prob)
    global_cdf: list

    @staticmethod
    def _cdf(counts):
        total = sum(counts.values())
        cdf, running = [], 0
        for rank in sorted(counts):
            running += counts[rank]
            cdf.append((rank, running / total))
        return cdf

    @staticmethod
    def _lookup(cdf, rank):
        prob = 0.0
        for r, c in cdf:
            if r <= rank:
                prob = c
            else:
                break
        return prob

    def kappa(self, event, base, rank):
        cdf = self.cells.get((event, base)) or self.pooled.get(event) \
            or self.global_cdf
        return self._lookup(cdf, rank)


def advancement_probabilities(data):
    cell_counts = {}
    pooled_counts = {}
    global_counts = {}
    for pa in data.plate_appearances:
        for _, base, rank in _runner_outcomes(pa):
            key = (pa.event_type, base)
            cell_counts.setdefault(key, {})
            cell_counts[key][rank] = cell_counts[key].get(rank, 0) + 1
            pooled_counts.setdefault(pa.event_type, {})
            pooled_counts[pa.event_type][rank] = \
                pooled_counts[pa.event_type].get(rank, 0) + 1
            global_counts[rank] = global_counts.get(rank, 0) + 1
    return AdvancementTable(
        cells={k: AdvancementTable._cdf(v) for k, v in cell_counts.items()},
        pooled={k: AdvancementTable._cdf(v) for k, v in pooled_counts.items()},
        global_cdf=AdvancementTable._cdf(global_counts) if global_counts else [],
    )


@dataclass
class BaserunnerCredit:
    player_id: str
    start_base: int  # 0 for the batter-as-runner
    kappa: float
    raa_br: float


def apportion_baserunning(pa, eta_hat, table):
    """Split the baserunner share among runners in proportion to kappa.

    The batter always appears as a runner from base 0, so every plate
    appearance carries at least one credit line.  A zero kappa total
    (possible only in pathological cells) falls back to an equal split.
    """
    outcomes = list(_runner_outcomes(pa))
    kappas = [table.kappa(pa.event_type, base, rank)
              for _, base, rank in outcomes]
    total = sum(kappas)
    if total <= 0.0:
        weights = [1.0 / len(outcomes)] * len(outcomes)
    else:
        weights = [k / total for k in kappas]
    return [
        BaserunnerCredit(player_id=pid, start_base=base, kappa=k,
                         raa_br=float(w * eta_hat))
        for (pid, base, _), k, w in zip(outcomes, kappas, weights)
    ]


def _position_design(data):
    positions = sorted({pa.batter_position for pa in data.plate_appearances})
    cols = ["intercept"] + [f"pos_{p}" for p in positions]
    n = len(data.plate_appearances)
    V = np.zeros((n, len(cols)))
    V[:, 0] = 1.0
    pos_ix = {p: 1 + j for j, p in enumerate(positions)}
    for i, pa in enumerate(data.plate_appearances):
        V[i, pos_ix[pa.batter_position]] = 1.0
    return DesignMatrix(columns=cols, values=V)


def fit_position_adjustment(data, mu_hat):
    """Regress hitter values on position indicators (H_i); residuals are
    the hitting runs above average."""
    return ols_fit(_position_design(data), mu_hat)


@dataclass
class OffenseResult:
    deltas: np.ndarray
    eps_hat: np.ndarray  # park/platoon-adjusted values
    eta_hat: np.ndarray  # baserunners' collective share
    mu_hat: np.ndarray  # hitter share before position adjustment
    raa_hit: np.ndarray
    park_fit: object
    state_fit: object
    position_fit: object
    advancement: AdvancementTable
    runner_credits: list  # per PA: list of BaserunnerCredit


def apportion_offense(data, deltas):
    """Run the full offensive chain over a season."""
    deltas = np.asarray(deltas, dtype=float)
    park_fit = fit_park_platoon(data, deltas)
    eps_hat = park_fit.residuals
    state_fit = fit_baserunner_expectation(data, eps_hat)
    eta_hat = state_fit.residuals
    mu_hat = eps_hat - eta_hat
    position_fit = fit_position_adjustment(data, mu_hat)
    raa_hit = position_fit.residuals
    table = advancement_probabilities(data)
    credits = [
        apportion_baserunning(pa, eta, table)
        for pa, eta in zip(data.plate_appearances, eta_hat)
    ]
    return OffenseResult(
        deltas=deltas, eps_hat=eps_hat, eta_hat=eta_hat, mu_hat=mu_hat,
        raa_hit=raa_hit, park_fit=park_fit, state_fit=state_fit,
        position_fit=position_fit, advancement=table, runner_credits=credits,
    )
