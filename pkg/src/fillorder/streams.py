"""Deterministic random stream derivation.

All randomness in the package is drawn from generators keyed by
(seed, purpose, indices...), so every run is reproducible from one seed
and sub-streams are independent of the order in which they get used.
"""

from __future__ import annotations

import numpy as np

# Purpose tags for derived streams.
KEYS = 0          # sketch copy key draws
DECAY = 1         # exponential perturbations
ESTIMATE = 2      # degree-estimation sampling
GENERATE = 3      # instance generation
DEMO = 4          # adversarial-correlation demo
GENERIC = 5


def stream(seed: int, *key: int) -> np.random.Generator:
    """Generator for the sub-stream identified by (seed, *key)."""
    return np.random.default_rng(np.random.SeedSequence((int(seed),) + tuple(int(k) for k in key)))


def copy_keys(seed: int, copy_index: int, n: int) -> np.ndarray:
    """The n uniform [0, 1) keys of sketch copy `copy_index`.

    A pure function of (seed, copy_index): rebuilding a copy on the current
    graph state reproduces exactly the keys it would always have had.
    """
    return stream(seed, KEYS, copy_index).random(n)
