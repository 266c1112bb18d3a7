"""Seeded random streams.

A run is driven by one master seed. Independent streams are split from it by a
counter (the trajectory or training-run index) through ``SeedSequence`` spawn
keys and fed to the counter-based Philox bit generator, so stream ``i`` is the
same no matter how many other streams exist or in which order they are consumed.
"""
from __future__ import annotations

import numpy as np


def master_stream(seed: int) -> np.random.Generator:
    """Stream for work that is not split by index (e.g. one training run)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def indexed_stream(seed: int, index: int) -> np.random.Generator:
    """Stream ``index`` split from the master ``seed``."""
    if index < 0:
        raise ValueError(f"stream index must be nonnegative, got {index}")
    sequence = np.random.SeedSequence(seed, spawn_key=(index,))
    return np.random.Generator(np.random.Philox(sequence))
