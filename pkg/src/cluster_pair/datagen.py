"""Seeded synthetic clusterings.

Balanced: each row picks a community uniformly at random.
Unbalanced: each row draws from a Gaussian with mean ``(K + 1) / 2`` and
standard deviation ``K / 4``, rounds half away from zero, clips to
``[1, K]`` and shifts to 0-based. Gaussians come from Box-Muller on
consecutive pairs of SplitMix64 draws (cosine branch for even rows, sine
branch for odd rows).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import kernels
from .errors import InvalidInput
from .model import Clustering
from .rng import DEFAULT_SEED, as_seed

Mode = Literal["balanced", "unbalanced"]
MAX_COMMUNITIES = (1 << 32) - 1


@dataclass(frozen=True)
class GenConfig:
    n_communities: int
    n_rows: int
    seed: int = DEFAULT_SEED
    mode: Mode = "balanced"

    def __post_init__(self):
        if not 1 <= self.n_communities <= MAX_COMMUNITIES:
            raise InvalidInput(f"n_communities must be in [1, 2**32 - 1], got {self.n_communities}")
        if self.n_rows < 1:
            raise InvalidInput(f"n_rows must be >= 1, got {self.n_rows}")
        if self.mode not in ("balanced", "unbalanced"):
            raise InvalidInput(f"mode must be 'balanced' or 'unbalanced', got {self.mode!r}")
        try:
            as_seed(self.seed)
        except ValueError as exc:
            raise InvalidInput(str(exc)) from None


def gen_balanced(cfg: GenConfig) -> Clustering:
    if cfg.mode != "balanced":
        raise InvalidInput("gen_balanced needs mode='balanced'")
    labels = kernels.uniform_labels(as_seed(cfg.seed), cfg.n_rows, cfg.n_communities)
    return Clustering(labels, cfg.n_communities)


def gen_unbalanced(cfg: GenConfig) -> Clustering:
    if cfg.mode != "unbalanced":
        raise InvalidInput("gen_unbalanced needs mode='unbalanced'")
    labels = kernels.clipped_gaussian_labels(as_seed(cfg.seed), cfg.n_rows, cfg.n_communities)
    return Clustering(labels, cfg.n_communities)


def generate(cfg: GenConfig) -> Clustering:
    return gen_balanced(cfg) if cfg.mode == "balanced" else gen_unbalanced(cfg)


def cluster_size_stats(c: Clustering) -> tuple[float, float]:
    """Mean and population std of the ``k`` cluster sizes (empty clusters count as 0)."""
    sizes = c.sizes().astype(np.float64)
    return float(sizes.mean()), float(sizes.std())
