"""Coefficient matrices, Schmidt spectra, and entropy maximization.

A state expands as sum_{alpha,beta} M[alpha, beta] |alpha>_A |beta>_B
where alpha and beta are the densely repacked restrictions of a spin
configuration to the two parts. The singular values of M give the
Schmidt spectrum, hence the entanglement entropy.

Entropies are natural-log internally; reports convert to bits where
requested. The convention 0*log(0) = 0 applies throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bitops import extract_bits_array
from .errors import CapExceededError
from .ground import InvariantBasis, SparseState
from .perms import Bipartition
from .seeding import derive_rng

MATRIX_SIDE_CAP = 16          # 2^16 rows is the largest dense side we build
DEFAULT_RANK_TOL = 1e-9

LN2 = math.log(2.0)


def nats_to_bits(x: float) -> float:
    return x / LN2


@dataclass(frozen=True)
class CoefficientMatrix:
    """Dense amplitude matrix with rows = A-configs, cols = B-configs."""

    matrix: np.ndarray
    a_sites: tuple[int, ...]
    b_sites: tuple[int, ...]


@dataclass(frozen=True)
class SchmidtData:
    singular_values: np.ndarray   # descending
    schmidt_coeffs: np.ndarray    # squared singular values
    rank: int                     # count above rank_tol * largest
    entropy: float                # nats


@dataclass(frozen=True)
class ManifoldOptimum:
    """Best entropy found over the unit sphere of orbit-basis coefficients."""

    coeffs: np.ndarray            # complex, unit norm, first entry real >= 0
    entropy: float                # nats
    restarts_used: int
    converged: bool
    exact: bool                   # True when the manifold is one dimensional


@dataclass(frozen=True)
class OptimizerConfig:
    seed: int = 1
    restarts: int = 8
    rank_tol: float = DEFAULT_RANK_TOL
    fd_step: float = 1e-5
    tol: float = 1e-10
    max_iters: int = 500

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


def entropy_of_coeffs(lams: np.ndarray) -> float:
    pos = lams[lams > 0.0]
    return float(-(pos * np.log(pos)).sum())


def coefficient_matrix(state: SparseState, bip: Bipartition) -> CoefficientMatrix:
    """Reshape a sparse state into its 2^|A| x 2^|B| amplitude matrix."""
    a_sites, b_sites = bip.a_sites, bip.b_sites
    if len(a_sites) > MATRIX_SIDE_CAP or len(b_sites) > MATRIX_SIDE_CAP:
        raise CapExceededError("coefficient matrix", f"2^{max(len(a_sites), len(b_sites))} side")
    if state.n != bip.n:
        raise ValueError("state and bipartition disagree on vertex count")
    dtype = np.complex128 if np.iscomplexobj(state.amps) else np.float64
    mat = np.zeros((1 << len(a_sites), 1 << len(b_sites)), dtype=dtype)
    alphas = extract_bits_array(state.configs, a_sites)
    betas = extract_bits_array(state.configs, b_sites)
    np.add.at(mat, (alphas, betas), state.amps)
    return CoefficientMatrix(mat, tuple(a_sites), tuple(b_sites))


def schmidt(cm: CoefficientMatrix, rank_tol: float = DEFAULT_RANK_TOL) -> SchmidtData:
    """Full SVD of the coefficient matrix: spectrum, numerical rank, entropy."""
    try:
        sv = np.linalg.svd(cm.matrix, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(
            f"SVD failed on a {cm.matrix.shape} coefficient matrix "
            f"(norm {np.linalg.norm(cm.matrix):.6g})"
        ) from exc
    lams = sv**2
    rank = int((sv > rank_tol * sv[0]).sum()) if sv.size and sv[0] > 0 else 0
    return SchmidtData(sv, lams, rank, entropy_of_coeffs(lams))


def state_from_coeffs(basis: InvariantBasis, coeffs: np.ndarray) -> SparseState:
    """The manifold state with the given orbit-basis coefficients.

    Basis states occupy disjoint configuration sets, so amplitudes
    concatenate directly.
    """
    configs = np.concatenate([s.configs for s in basis.states])
    amps = np.concatenate([c * s.amps for c, s in zip(coeffs, basis.states)])
    order = np.argsort(configs)
    return SparseState(basis.n, configs[order], amps[order])


class _CompactEvaluator:
    """Entropy of a coefficient combination via the occupied submatrix.

    Ground configurations are few, so only the A-restrictions and
    B-restrictions that actually occur are kept; singular values of the
    compact submatrix equal the nonzero singular values of the full one.
    """

    def __init__(self, basis: InvariantBasis, bip: Bipartition):
        a_sites, b_sites = bip.a_sites, bip.b_sites
        all_configs = np.concatenate([s.configs for s in basis.states])
        rows = np.unique(extract_bits_array(all_configs, a_sites))
        cols = np.unique(extract_bits_array(all_configs, b_sites))
        row_of = {int(v): i for i, v in enumerate(rows)}
        col_of = {int(v): i for i, v in enumerate(cols)}
        self.r = len(basis.states)
        self.stack = np.zeros((self.r, len(rows), len(cols)))
        for k, s in enumerate(basis.states):
            ai = [row_of[int(x)] for x in extract_bits_array(s.configs, a_sites)]
            bi = [col_of[int(x)] for x in extract_bits_array(s.configs, b_sites)]
            np.add.at(self.stack[k], (ai, bi), s.amps.real)
        self.max_entropy = math.log(min(len(rows), len(cols)))

    def entropy(self, x: np.ndarray) -> float:
        """Entropy of the normalized state for real parameters x in R^{2r}."""
        c = x[: self.r] + 1j * x[self.r :]
        w = np.tensordot(c, self.stack, axes=1)
        sv = np.linalg.svd(w, compute_uv=False)
        norm2 = float(np.vdot(c, c).real)
        return entropy_of_coeffs(sv**2 / norm2)


def _fd_gradient(f, x: np.ndarray, h: float) -> np.ndarray:
    grad = np.empty_like(x)
    for i in range(len(x)):
        step = np.zeros_like(x)
        step[i] = h
        grad[i] = (f(x + step) - f(x - step)) / (2.0 * h)
    return grad


def _ascend(f, x0: np.ndarray, cfg: OptimizerConfig) -> tuple[np.ndarray, float, bool]:
    """Projected gradient ascent on the unit sphere.

    The backtracking line search keeps halving past the first improvement
    until the value drops again, taking the peak; accepting the first
    improvement instead makes iterates hop across the maximum with tiny
    gains and fake early convergence.
    """
    x = x0 / np.linalg.norm(x0)
    best = f(x)
    step = 1.0
    for _ in range(cfg.max_iters):
        grad = _fd_gradient(f, x, cfg.fd_step)
        tangent = grad - np.dot(grad, x) * x
        peak_x = None
        peak_val = best
        peak_step = step
        s = step
        while s >= 1e-14:
            cand = x + s * tangent
            cand /= np.linalg.norm(cand)
            val = f(cand)
            if val > peak_val:
                peak_x, peak_val, peak_step = cand, val, s
            elif peak_x is not None:
                break  # values fall off again: peak passed
            s *= 0.5
        if peak_x is None:
            return x, best, True  # no ascent left along the gradient
        gain = peak_val - best
        x, best = peak_x, peak_val
        step = min(peak_step * 2.0, 1.0)
        if gain < cfg.tol:
            return x, best, True
    return x, best, False


def _gauge_fixed(c: np.ndarray) -> np.ndarray:
    """Rotate the global phase so c[0] (or the first sizeable entry) is real >= 0."""
    idx = 0 if abs(c[0]) > 1e-12 else int(np.argmax(np.abs(c)))
    phase = c[idx] / abs(c[idx])
    out = c * np.conj(phase)
    out[idx] = abs(c[idx])  # kill rounding in the pivot's imaginary part
    return out


def maximize_entropy(basis: InvariantBasis, bip: Bipartition,
                     cfg: OptimizerConfig | None = None) -> ManifoldOptimum:
    """Maximum entanglement entropy over unit combinations of the orbit basis.

    A one dimensional manifold needs no optimization and is returned
    exactly. Otherwise projected gradient ascent runs on the unit sphere
    in C^r (real 2r parameters), gradients by central finite differences
    with the configured step, from ``cfg.restarts`` random starts plus
    each basis vector; the best result wins, earliest start on ties.
    The r >= 2 result is a certified lower bound on the true maximum.
    """
    cfg = cfg or OptimizerConfig()
    ev = _CompactEvaluator(basis, bip)
    r = ev.r
    if r == 1:
        sv = np.linalg.svd(ev.stack[0], compute_uv=False)
        ent = entropy_of_coeffs(sv**2)
        return ManifoldOptimum(np.array([1.0 + 0.0j]), ent, 0, True, True)

    best_x = None
    best_val = -1.0
    all_converged = True
    # basis vectors are cheap deterministic candidates and guarantee the
    # optimum is at least the best single orbit state
    for k in range(r):
        e = np.zeros(2 * r)
        e[k] = 1.0
        val = ev.entropy(e)
        if val > best_val:
            best_x, best_val = e, val
    used = 0
    for i in range(cfg.restarts):
        if best_val >= ev.max_entropy - 1e-12:
            break  # cannot do better than log of the compact side
        rng = derive_rng(cfg.seed, 0x5EED, i)
        x0 = rng.standard_normal(2 * r)
        x, val, converged = _ascend(ev.entropy, x0, cfg)
        all_converged = all_converged and converged
        used = i + 1
        if val > best_val:
            best_x, best_val = x, val
    c = _gauge_fixed(best_x[:r] + 1j * best_x[r:])
    c /= np.linalg.norm(c)
    return ManifoldOptimum(c, best_val, used, all_converged, False)
