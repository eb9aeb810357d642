"""Ground manifold of the antiferromagnetic Ising model on a graph.

The ground configurations are exactly the max-cut assignments, found by
an exhaustive scan over all 2^n spin masks. The scan uses the counting
identity

    cut(s) = sum_v [v in s] * popcount(adjacency[v] & ~s)

which charges every cut edge (u, w), u in s, w not in s, exactly once
(at u). It is tested against the naive per-edge loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import CapExceededError, GroupNotEnumeratedError
from .graphs import Graph
from .perms import PermGroup, apply_perm

SCAN_CAP = 28
_CHUNK = 1 << 20


def energy(graph: Graph, config: int) -> int:
    """Ising energy sum of s_i * s_j over edges, with bit set = spin +1."""
    e = 0
    for u, v in graph.edges:
        su = 1 if (config >> u) & 1 else -1
        sv = 1 if (config >> v) & 1 else -1
        e += su * sv
    return e


def cut_size(graph: Graph, config: int) -> int:
    """Number of edges whose endpoints carry opposite spins."""
    return sum(1 for u, v in graph.edges if ((config >> u) ^ (config >> v)) & 1)


def cut_values(graph: Graph, masks: np.ndarray) -> np.ndarray:
    """Vectorized cut sizes for an array of uint64 spin masks."""
    n = graph.n
    full = np.uint64((1 << n) - 1)
    inv = masks ^ full
    cuts = np.zeros(masks.shape, dtype=np.int32)
    for v in range(n):
        inside = ((masks >> np.uint64(v)) & np.uint64(1)).astype(np.int32)
        crossing = np.bitwise_count(np.uint64(graph.adjacency[v]) & inv).astype(np.int32)
        cuts += inside * crossing
    return cuts


@dataclass(frozen=True)
class GroundManifold:
    """Max-cut value, the optimal configurations, and their symmetry orbits."""

    n: int
    maxcut: int
    ground_energy: int
    configs: np.ndarray          # sorted int64 masks achieving maxcut
    degeneracy: int
    orbits: list[np.ndarray]     # partition of configs into automorphism orbits
    r: int                       # orbit count


@dataclass(frozen=True)
class SparseState:
    """A sparse unit vector over spin-configuration basis labels."""

    n: int
    configs: np.ndarray
    amps: np.ndarray

    def norm(self) -> float:
        return float(np.sqrt((np.abs(self.amps) ** 2).sum()))


@dataclass(frozen=True)
class InvariantBasis:
    """Orthonormal symmetry-invariant states, one uniform vector per orbit."""

    n: int
    states: list[SparseState]


def enumerate_ground_manifold(graph: Graph, grp: PermGroup) -> GroundManifold:
    """Exhaustive max-cut scan plus orbit decomposition under ``grp``.

    The scan is exact and complete; the orbit decomposition only needs the
    group's generators (union-find), so the group never has to be
    enumerated here, but its generating set must be complete.
    """
    n = graph.n
    if n > SCAN_CAP:
        raise CapExceededError("ground scan", f"2^{n} masks")
    if not grp.generators_complete:
        raise GroupNotEnumeratedError("orbit decomposition needs a complete generating set")
    best = -1
    parts: list[np.ndarray] = []
    for start in range(0, 1 << n, _CHUNK):
        stop = min(start + _CHUNK, 1 << n)
        masks = np.arange(start, stop, dtype=np.uint64)
        cuts = cut_values(graph, masks)
        top = int(cuts.max())
        if top > best:
            best = top
            parts = []
        if top == best:
            parts.append(masks[cuts == best].astype(np.int64))
    configs = np.sort(np.concatenate(parts))
    orbits = _orbit_partition(configs, grp)
    return GroundManifold(
        n=n,
        maxcut=best,
        ground_energy=graph.m - 2 * best,
        configs=configs,
        degeneracy=len(configs),
        orbits=orbits,
        r=len(orbits),
    )


def _orbit_partition(configs: np.ndarray, grp: PermGroup) -> list[np.ndarray]:
    index = {int(c): i for i, c in enumerate(configs)}
    parent = list(range(len(configs)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in grp.generators:
        for c, i in index.items():
            j = index[apply_perm(g, c)]  # group maps ground configs to ground configs
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    buckets: dict[int, list[int]] = {}
    for i in range(len(configs)):
        buckets.setdefault(find(i), []).append(int(configs[i]))
    orbits = [np.array(sorted(v), dtype=np.int64) for v in buckets.values()]
    orbits.sort(key=lambda o: int(o[0]))
    return orbits


def build_invariant_basis(man: GroundManifold) -> InvariantBasis:
    """One orthonormal state per orbit, uniform with amplitude 1/sqrt(|orbit|)."""
    if man.degeneracy == 0:
        raise ValueError("empty ground manifold")
    states = [
        SparseState(man.n, orbit, np.full(len(orbit), 1.0 / sqrt(len(orbit))))
        for orbit in man.orbits
    ]
    return InvariantBasis(man.n, states)
