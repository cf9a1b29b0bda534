"""Small shared helpers: stable ceilings and labelled RNG streams."""

from __future__ import annotations

import math
import zlib

import numpy as np

# Tolerance for float powers that are meant to be exact integers
# (e.g. n**(log(Y)/log(n)) should give back Y, not Y + 1e-13).
_CEIL_EPS = 1e-9


def ceil_int(x: float) -> int:
    """Ceiling that forgives tiny float overshoot above an exact integer."""
    return math.ceil(x - _CEIL_EPS)


def subrng(seed: int, *labels) -> np.random.Generator:
    """Independent generator derived from a base seed and phase labels.

    Each (seed, labels) combination gets its own stream, so adding a new
    sampling phase never perturbs the draws of existing ones.  String
    labels are hashed with crc32; integer labels are used as-is.
    """
    entropy = [int(seed) % (1 << 63)]
    for label in labels:
        if isinstance(label, str):
            entropy.append(zlib.crc32(label.encode("utf-8")))
        else:
            entropy.append(int(label) % (1 << 63))
    return np.random.default_rng(np.random.SeedSequence(entropy))
