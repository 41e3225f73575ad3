"""Pairing-based external validity indices for comparing clusterings.

Stable Matching Based Pairing (SMBP) with exact maximum-weight matching,
greedy Maximum Match Measure and Centroid Ratio baselines, seeded label
generators and a benchmark harness.
"""
__version__ = "0.1.0"

from .contingency import build_contingency
from .datagen import GenConfig, cluster_size_stats, gen_balanced, gen_unbalanced, generate
from .errors import InvalidInput, OracleTooLarge
from .matchers import (
    blocking_pair_exists,
    build_preferences,
    cr_pair,
    mmm_pair,
    mwm_bruteforce,
    mwm_pair,
    smbp_pair,
    stable_match,
)
from .metrics import accuracy, normalized_accuracy, pairing_weight, summarize
from .model import (
    Clustering,
    ContingencyMatrix,
    FeatureDataset,
    Pairing,
    PreferenceTable,
    validate_clustering,
)

__all__ = [
    "Clustering",
    "ContingencyMatrix",
    "FeatureDataset",
    "GenConfig",
    "InvalidInput",
    "OracleTooLarge",
    "Pairing",
    "PreferenceTable",
    "accuracy",
    "blocking_pair_exists",
    "build_contingency",
    "build_preferences",
    "cluster_size_stats",
    "cr_pair",
    "gen_balanced",
    "gen_unbalanced",
    "generate",
    "mmm_pair",
    "mwm_bruteforce",
    "mwm_pair",
    "normalized_accuracy",
    "pairing_weight",
    "smbp_pair",
    "stable_match",
    "summarize",
    "validate_clustering",
]
