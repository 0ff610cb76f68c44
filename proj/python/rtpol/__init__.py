"""Retweet network polarization pipeline."""

from ._core import (
    Network,
    StageError,
    adjusted_nmi,
    adjusted_rand_index,
    alignment_matrix,
    brute_force_min_dl,
    camps,
    description_length,
    force_layout,
    infer_blocks,
    membership_scores,
    planted_network,
    power_users,
    run_stage,
    select_model,
    silhouette_score,
    similarity,
    standard_seeds,
)

__all__ = [
    "Network",
    "StageError",
    "adjusted_nmi",
    "adjusted_rand_index",
    "alignment_matrix",
    "brute_force_min_dl",
    "camps",
    "description_length",
    "force_layout",
    "infer_blocks",
    "membership_scores",
    "planted_network",
    "power_users",
    "run_stage",
    "select_model",
    "silhouette_score",
    "similarity",
    "standard_seeds",
]
