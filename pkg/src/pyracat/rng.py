"""Seeded random generators.

All randomized procedures draw from numpy's PCG64 so that a seed reproduces the
same trial sequence everywhere.  ``PYRACAT_SEED`` supplies the seed when none is
given.
"""
from __future__ import annotations

import os

import numpy as np

DEFAULT_SEED = 0


def resolve_seed(seed: int | None = None) -> int:
    if seed is not None:
        return int(seed)
    env = os.environ.get("PYRACAT_SEED")
    if env is None or not env.strip():
        return DEFAULT_SEED
    return int(env, 0)


def make_rng(seed: int | None = None) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(resolve_seed(seed) & (2**64 - 1)))
