"""Counter-based splittable seeding.

Every random quantity in the package is drawn from a stream derived from a
master seed plus a path of (purpose tag, index) keys, so parallel trials are
reproducible and independent of execution order and worker count.
"""

from __future__ import annotations

import hashlib

import numpy as np

__all__ = ["derive_seed_sequence", "derive_rng", "as_rng"]


def _key_word(key: int | str) -> int:
    """Map a path component to a stable non-negative integer.

    Strings are hashed with SHA-256 (never the process-salted builtin hash),
    so derived streams are identical across runs and machines.
    """
    if isinstance(key, str):
        return int.from_bytes(hashlib.sha256(key.encode("utf-8")).digest()[:8], "little")
    if isinstance(key, (int, np.integer)):
        if key < 0:
            raise ValueError(f"seed path keys must be non-negative, got {key}")
        return int(key)
    raise TypeError(f"seed path keys must be int or str, got {type(key).__name__}")


def derive_seed_sequence(master_seed: int, *path: int | str) -> np.random.SeedSequence:
    """SeedSequence for the stream identified by ``(master_seed, *path)``."""
    if master_seed < 0:
        raise ValueError(f"master seed must be non-negative, got {master_seed}")
    return np.random.SeedSequence(int(master_seed), spawn_key=tuple(_key_word(k) for k in path))


def derive_rng(master_seed: int, *path: int | str) -> np.random.Generator:
    """Independent generator for the stream identified by ``(master_seed, *path)``."""
    return np.random.default_rng(derive_seed_sequence(master_seed, *path))


def as_rng(seed: int | np.random.SeedSequence | np.random.Generator) -> np.random.Generator:
    """Accept a raw seed, a SeedSequence, or an existing Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.default_rng(seed)
    if isinstance(seed, (int, np.integer)):
        if seed < 0:
            raise ValueError(f"seed must be non-negative, got {seed}")
        return np.random.default_rng(int(seed))
    raise TypeError(f"expected int seed, SeedSequence or Generator, got {type(seed).__name__}")
