"""Quantum reservoir computing with tunable indirect measurements."""

from ._core import (
    FeatureTable,
    apply_shot_noise,
    backaction_mask,
    capacity,
    evaluate_task,
    gen_memory_series,
    load_santafe,
    run_feedback,
    run_olp,
    run_rsp,
    run_sweep,
    sample_couplings,
    shots_rsp_equivalent,
    sigma_pair,
    sigma_single,
)

__all__ = [
    "FeatureTable",
    "apply_shot_noise",
    "backaction_mask",
    "capacity",
    "evaluate_task",
    "gen_memory_series",
    "load_santafe",
    "run_feedback",
    "run_olp",
    "run_rsp",
    "run_sweep",
    "sample_couplings",
    "shots_rsp_equivalent",
    "sigma_pair",
    "sigma_single",
]
