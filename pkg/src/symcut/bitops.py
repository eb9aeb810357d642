"""Small bitmask helpers used by the enumeration kernels.

Spin configurations and vertex subsets are both stored as Python ints
(bit i set = vertex i present / spin +1), so everything here works on
plain integers or on numpy arrays of masks.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


def popcount(x: int) -> int:
    return int(x).bit_count()


def mask_sites(mask: int) -> list[int]:
    """Ascending bit positions set in ``mask``."""
    sites = []
    i = 0
    while mask:
        if mask & 1:
            sites.append(i)
        mask >>= 1
        i += 1
    return sites


def sites_mask(sites: Sequence[int]) -> int:
    mask = 0
    for s in sites:
        mask |= 1 << s
    return mask


def extract_bits(config: int, sites: Sequence[int]) -> int:
    """Repack the bits of ``config`` at ``sites`` (ascending) into low bits."""
    out = 0
    for k, s in enumerate(sites):
        out |= ((config >> s) & 1) << k
    return out


def extract_bits_array(configs: np.ndarray, sites: Sequence[int]) -> np.ndarray:
    """Vectorized :func:`extract_bits` over an int64 array of configurations."""
    out = np.zeros(configs.shape, dtype=np.int64)
    for k, s in enumerate(sites):
        out |= ((configs >> s) & 1) << k
    return out


def popcount_array(masks: np.ndarray) -> np.ndarray:
    return np.bitwise_count(masks)
