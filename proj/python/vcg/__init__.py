"""Threshold public-goods contribution game engine."""

from ._vcg import (
    RESULTS_HEADER,
    CapacityError,
    ConfigError,
    ContractError,
    CoverSolution,
    DataError,
    ExperimentConfig,
    PayoffParams,
    RoundOutcome,
    aggregate,
    efficiency_measure,
    evaluate_round,
    gini,
    load_config,
    privacy_measure,
    run_simulation,
    run_to_csv,
    solve_exact,
    solve_fptas,
    success_measure,
    sweep,
    welfare_measure,
)

__all__ = [name for name in dir() if not name.startswith("_")]
