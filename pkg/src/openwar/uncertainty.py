"""Bootstrap interval estimates for WAR via plate-appearance resampling.

Each replicate redraws the season's plate appearances with replacement,
carrying every credit line of a drawn PA jointly (hitter, runners,
fielders, pitcher), then re-aggregates RAA and re-applies the frozen
replacement rates to the resampled event counts.  Models and the
replacement pool are never refit inside a replicate.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass

import numpy as np

from .numerics import empirical_quantiles, replicate_rng
from .valuation import COMPONENTS

__all__ = ["BootstrapConfig", "WarDistribution", "bootstrap_war", "compare_players"]

DEFAULT_PROBS = (0.0, 0.025, 0.25, 0.5, 0.75, 0.975, 1.0)


@dataclass
class BootstrapConfig:
    replicates: int = 3500
    master_seed: int = 0
    probs: tuple = DEFAULT_PROBS

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")


@dataclass
class WarDistribution:
    players: list  # sorted player ids
    names: dict
    point: np.ndarray  # point-estimate WAR per player
    replicates: np.ndarray  # (replicates, players) WAR matrix
    probs: tuple
    quantiles: np.ndarray  # (players, probs)

    def quantile_csv(self):
        out = io.StringIO()
        labels = ",".join(f"q{100 * p:g}" for p in self.probs)
        out.write(f"player_id,name,{labels}\n")
        for j, pid in enumerate(self.players):
            qs = ",".join(repr(float(q)) for q in self.quantiles[j])
            out.write(f"{pid},{self.names[pid]},{qs}\n")
        return out.getvalue()


@dataclass
class _CreditArrays:
    """Ledger credit lines flattened for fast per-replicate aggregation."""

    pa_index: np.ndarray  # credit row -> PA ordinal
    key: np.ndarray  # credit row -> player * 4 + component
    value: np.ndarray
    n_pas: int
    n_players: int


def _flatten(bundles, players):
    ix = {pid: j for j, pid in enumerate(players)}
    cx = {c: j for j, c in enumerate(COMPONENTS)}
    pa_index, key, value = [], [], []
    for i, bundle in enumerate(bundles):
        for pid, comp, raa in bundle:
            pa_index.append(i)
            key.append(ix[pid] * 4 + cx[comp])
            value.append(raa)
    return _CreditArrays(
        pa_index=np.array(pa_index, dtype=np.intp),
        key=np.array(key, dtype=np.intp),
        value=np.array(value, dtype=float),
        n_pas=len(bundles),
        n_players=len(players),
    )


def _replicate_war(arrays, weights, rates, rpw):
    """Aggregate one resampled season into per-player WAR.

    `weights[i]` is the number of times PA i was drawn; the resampled
    league totals are exactly the weighted sums of the drawn bundles.
    """
    w = weights[arrays.pa_index]
    size = arrays.n_players * 4
    raa = np.bincount(arrays.key, weights=arrays.value * w, minlength=size)
    counts = np.bincount(arrays.key, weights=w, minlength=size)
    raa = raa.reshape(arrays.n_players, 4)
    counts = counts.reshape(arrays.n_players, 4)
    shadow = counts @ rates
    return (raa.sum(axis=1) - shadow) / rpw


def bootstrap_war(ledger, valuations, pool, config, rpw=10.0):
    """Resample the season `config.replicates` times with frozen models.

    Deterministic: each replicate draws from its own stream derived from
    (master_seed, replicate index).
    """
    bundles = ledger.pa_bundles()
    if not bundles:
        raise ValueError("empty ledger")
    players = sorted(valuations)
    arrays = _flatten(bundles, players)
    rates = np.array([pool.rates[c] for c in COMPONENTS])
    point = np.array([valuations[p].war for p in players])

    mat = np.empty((config.replicates, arrays.n_players))
    for rep in range(config.replicates):
        rng = replicate_rng(config.master_seed, rep)
        idx = rng.integers(0, arrays.n_pas, arrays.n_pas)
        weights = np.bincount(idx, minlength=arrays.n_pas).astype(float)
        mat[rep] = _replicate_war(arrays, weights, rates, rpw)

    quantiles = np.vstack([
        empirical_quantiles(mat[:, j], config.probs)
        for j in range(arrays.n_players)])
    names = {p: valuations[p].name for p in players}
    return WarDistribution(players=players, names=names, point=point,
                           replicates=mat, probs=tuple(config.probs),
                           quantiles=quantiles)


def compare_players(dist, player_a, player_b):
    """Fraction of joint replicates where player_a strictly beats player_b."""
    try:
        a = dist.players.index(player_a)
        b = dist.players.index(player_b)
    except ValueError as exc:
        raise KeyError(f"player not in distribution: {exc}") from exc
    return float(np.mean(dist.replicates[:, a] > dist.replicates[:, b]))


def comparison_json(dist, pairs):
    payload = [
        {"player_a": a, "player_b": b,
         "pr_a_exceeds_b": compare_players(dist, a, b)}
        for a, b in pairs
    ]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
