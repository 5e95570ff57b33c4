"""Python bindings for the qcompose simulators and cost models."""

from ._core import (
    QComposeError,
    WeightedGraph,
    classical_avg_cost,
    commute_identity_residual,
    decide_purifier,
    effective_resistance,
    g_eval,
    h_eval,
    h_exit_within,
    hitting_time_exact,
    hitting_time_mc,
    las_vegas_h,
    majority_vote_error,
    majority_vs_purifier_table,
    perturbation_bound,
    purifier_complexity,
    purifier_line,
    purifier_statistic,
    quantum_naive_cost,
    quantum_walk_cost,
    run_composed_dj_h,
    run_dj,
    structured_counterexample,
    total_weight,
    walk_unitarity_defect,
)

__all__ = [name for name in dir() if not name.startswith("_")]
