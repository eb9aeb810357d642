"""Upper bounds on the maximum balanced-cut entanglement entropy.

Two bounds are computed and combined:

* the degeneracy bound log(min(2^{floor(n/2)}, d)), from the fact that a
  ground state's coefficient matrix has at most d nonzero entries;
* the commutant bound log(Omega_A), where Omega_A is the maximal rank of
  any matrix commuting with the simultaneous action of the bipartition
  stabilizer on both parts.

Omega_A is found without any character theory: matrices constant on the
diagonal (alpha, beta) orbits of the stabilizer are exactly the
commutant, so a matrix with one independent random value per orbit has
the maximal rank with probability 1. Several seeds must agree.

The Burnside orbit count omega_A is reported alongside Omega_A. No order
between the two is asserted: for stabilizer elements that act
nontrivially on both parts at once (cycle graphs are the simplest case)
Omega_A is strictly larger than omega_A even for abelian stabilizers, so
only log(Omega_A) enters the combined bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError
from .ground import GroundManifold
from .perms import PAIR_ORBIT_CAP, Bipartition, PermGroup, config_action_table, orbit_labels
from .seeding import derive_rng


@dataclass(frozen=True)
class PairOrbitPartition:
    """Diagonal stabilizer orbits of all (A-config, B-config) pairs."""

    a_bits: int
    b_bits: int
    orbit_id: np.ndarray          # flat over alpha * 2^b_bits + beta, ids dense
    orbit_count: int


@dataclass(frozen=True)
class IntertwinerRankEstimate:
    omega_cap: int                # maximal commutant rank Omega_A
    seeds: tuple[int, ...]
    ranks: tuple[int, ...]
    agreed: bool


@dataclass(frozen=True)
class BoundReport:
    degeneracy_bound: float       # nats
    automorphism_bound: float | None
    combined_bound: float
    omega_cap: int | None
    burnside_omega: int | None
    regime: str                   # "degeneracy-limited" | "hilbert-limited"
    method: str
    seeds: tuple[int, ...]
    agreed: bool | None
    abelian: bool | None


def degeneracy_bound(d: int, n: int) -> float:
    """log min(2^{floor(n/2)}, d) in nats."""
    if d < 1:
        raise ValueError("degeneracy must be >= 1")
    return math.log(min(1 << (n // 2), d))


def pair_orbits(grp: PermGroup, bip: Bipartition) -> PairOrbitPartition:
    """Union-find over pairs, merging (a, b) with (g(a), g(b)) per generator."""
    if not grp.generators_complete:
        raise CapExceededError("pair orbits", "incomplete generating set")
    a_sites, b_sites = bip.a_sites, bip.b_sites
    ka, kb = len(a_sites), len(b_sites)
    if (1 << (ka + kb)) > PAIR_ORBIT_CAP:
        raise CapExceededError("pair orbits", f"2^{ka + kb} pairs")
    pair_tables = []
    pairs = np.arange(1 << (ka + kb), dtype=np.int64)
    alpha = pairs >> kb
    beta = pairs & ((1 << kb) - 1)
    for g in grp.generators:
        ta = config_action_table(g, a_sites)
        tb = config_action_table(g, b_sites)
        pair_tables.append((ta[alpha] << kb) | tb[beta])
    labels = orbit_labels(1 << (ka + kb), pair_tables)
    _, orbit_id = np.unique(labels, return_inverse=True)
    return PairOrbitPartition(ka, kb, orbit_id.astype(np.int64), int(orbit_id.max()) + 1)


def generic_intertwiner_rank(po: PairOrbitPartition, seeds,
                             rank_tol: float = 1e-9) -> IntertwinerRankEstimate:
    """Numerical rank of random orbit-constant matrices, one per seed.

    Values are drawn uniform in [0.5, 1.5], bounded away from zero so the
    generic-rank argument stays numerically robust. All seeds must agree;
    disagreement is reported through the ``agreed`` flag.
    """
    seeds = tuple(int(s) for s in seeds)
    if not seeds:
        raise ValueError("need at least one seed")
    ranks = []
    for s in seeds:
        rng = derive_rng(s)
        values = rng.uniform(0.5, 1.5, po.orbit_count)
        mat = values[po.orbit_id].reshape(1 << po.a_bits, 1 << po.b_bits)
        sv = np.linalg.svd(mat, compute_uv=False)
        ranks.append(int((sv > rank_tol * sv[0]).sum()))
    return IntertwinerRankEstimate(max(ranks), seeds, tuple(ranks), len(set(ranks)) == 1)


def assemble_bounds(man: GroundManifold, omega: IntertwinerRankEstimate | None,
                    burnside: int | None, n: int,
                    abelian: bool | None = None) -> BoundReport:
    """Combine the degeneracy and commutant bounds and classify the regime."""
    deg = degeneracy_bound(man.degeneracy, n)
    if omega is not None:
        auto = math.log(omega.omega_cap)
        combined = min(deg, auto)
        method = "generic-intertwiner"
    else:
        auto = None
        combined = deg
        method = "degeneracy-only"
    regime = "degeneracy-limited" if man.degeneracy < (1 << (n // 2)) else "hilbert-limited"
    return BoundReport(
        degeneracy_bound=deg,
        automorphism_bound=auto,
        combined_bound=combined,
        omega_cap=omega.omega_cap if omega is not None else None,
        burnside_omega=burnside,
        regime=regime,
        method=method,
        seeds=omega.seeds if omega is not None else (),
        agreed=omega.agreed if omega is not None else None,
        abelian=abelian,
    )
