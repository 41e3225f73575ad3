from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import InvalidInput
from .model import Pairing


def pairing_weight(p: Pairing) -> int:
    """Total shared points over the pairs of ``p``."""
    return int(sum(int(w) for w in p.weights.tolist()))


def accuracy(method_pairing: Pairing, mwm_pairing: Pairing) -> float:
    """Weight of a method's pairing relative to the optimal (MWM) pairing.

    An all-zero matrix scores 1.0.
    """
    got = pairing_weight(method_pairing)
    best = pairing_weight(mwm_pairing)
    if best == 0:
        if got != 0:
            raise InvalidInput("reference pairing has zero weight but the method's does not")
        return 1.0
    if got > best:
        raise InvalidInput(f"method weight {got} exceeds the optimum {best}; pairings differ in matrix")
    return got / best


def normalized_accuracy(smbp_w: int, mmm_w: int) -> tuple[float, float]:
    """Each weight divided by the larger of the two; (1.0, 1.0) when both are zero."""
    top = max(int(smbp_w), int(mmm_w))
    if top == 0:
        return 1.0, 1.0
    return int(smbp_w) / top, int(mmm_w) / top


def summarize(values: Sequence[float]) -> tuple[float, float]:
    """Mean and population standard deviation (divisor n)."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise InvalidInput("cannot summarize an empty sequence")
    mean = math.fsum(arr.tolist()) / arr.size
    var = math.fsum(((arr - mean) ** 2).tolist()) / arr.size
    return mean, math.sqrt(var)
