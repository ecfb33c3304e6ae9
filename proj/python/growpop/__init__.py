"""Opinion dynamics with a growing population.

Thin Python layer over the C++ core: simulation, ensembles, condition sums,
the generalized Dawson integral and envelope bounds.
"""

from ._core import (
    Classification,
    EnvelopeSide,
    Kernel,
    GrowthSchedule,
    OpinionSource,
    RecordGrid,
    SimConfig,
    SimState,
    SourceKind,
    classify_schedule,
    compute_moments,
    condition_sum,
    dawson_F,
    derive_run_seed,
    envelope_bound,
    fit_decay_exponent,
    integrate_interval,
    inject_agent,
    jump_coefficient,
    log_power_times,
    predict_jumps,
    rhs,
    run_ensemble,
    run_simulation,
)

__all__ = [
    "Classification",
    "EnvelopeSide",
    "Kernel",
    "GrowthSchedule",
    "OpinionSource",
    "RecordGrid",
    "SimConfig",
    "SimState",
    "SourceKind",
    "classify_schedule",
    "compute_moments",
    "condition_sum",
    "dawson_F",
    "derive_run_seed",
    "envelope_bound",
    "fit_decay_exponent",
    "integrate_interval",
    "inject_agent",
    "jump_coefficient",
    "log_power_times",
    "predict_jumps",
    "rhs",
    "run_ensemble",
    "run_simulation",
]
