"""openwar: conservation-of-runs player valuation for baseball play-by-play
data, with resampling-based interval estimates."""

__version__ = "0.1.0"

from .events import (
    BALL_IN_PLAY,
    EVENT_TYPES,
    GameState,
    PlateAppearance,
    SeasonDataset,
    aggregate_team_totals,
    parse_season,
    serialize_season,
    validate_dataset,
)
from .pipeline import PipelineResult, SeasonLedger, build_ledger, run_pipeline
from .run_expectancy import RunExpectancyMatrix, estimate_matrix, run_value
from .simulate import generate_synthetic_season
from .uncertainty import BootstrapConfig, bootstrap_war, compare_players
from .valuation import (
    build_replacement_pool,
    pythag_wpct,
    runs_per_win,
    shadow_and_war,
    tabulate_raa,
    value_players,
)

__all__ = [
    "BALL_IN_PLAY",
    "EVENT_TYPES",
    "GameState",
    "PlateAppearance",
    "SeasonDataset",
    "aggregate_team_totals",
    "parse_season",
    "serialize_season",
    "validate_dataset",
    "PipelineResult",
    "SeasonLedger",
    "build_ledger",
    "run_pipeline",
    "RunExpectancyMatrix",
    "estimate_matrix",
    "run_value",
    "generate_synthetic_season",
    "BootstrapConfig",
    "bootstrap_war",
    "compare_players",
    "build_replacement_pool",
    "pythag_wpct",
    "runs_per_win",
    "shadow_and_war",
    "tabulate_raa",
    "value_players",
]
