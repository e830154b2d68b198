"""Seed derivation for reproducible, collision-free parallel runs.

A run is identified by ``(master_seed, horizon_index, seed_index)``. Its seed is the
first 64-bit word of ``SeedSequence(master_seed, spawn_key=(horizon_index, seed_index))``.
``SeedSequence`` hashes entropy and spawn key together, so the mapping is stable
across numpy releases and independent of worker scheduling.
"""

from __future__ import annotations

import numpy as np


def derive_seed(master_seed: int, horizon_index: int, seed_index: int) -> int:
    if master_seed < 0 or horizon_index < 0 or seed_index < 0:
        raise ValueError(
            "seed components must be non-negative, got "
            f"({master_seed}, {horizon_index}, {seed_index})."
        )
    seq = np.random.SeedSequence(master_seed, spawn_key=(horizon_index, seed_index))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def make_rng(seed: int | np.random.Generator | None) -> np.random.Generator:
    """PCG64 generator for ``seed``; an existing generator is returned unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
