"""Deterministic RNG streams derived from one master seed.

Philox is counter based, so keying a generator with (master_seed, stream
indices) yields reproducible, independent streams no matter in which
order they are consumed. No global RNG state anywhere.
"""

from __future__ import annotations

import numpy as np


def derive_rng(master_seed: int, *stream: int) -> np.random.Generator:
    seq = np.random.SeedSequence([int(master_seed), *[int(s) for s in stream]])
    return np.random.Generator(np.random.Philox(seq))


def derive_seeds(master_seed: int, stream: int, count: int) -> list[int]:
    """``count`` stable integer sub-seeds for a named stream."""
    rng = derive_rng(master_seed, stream)
    return [int(x) for x in rng.integers(0, 2**63 - 1, size=count)]
