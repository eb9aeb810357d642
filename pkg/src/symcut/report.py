"""Full analysis pipeline and report serialization (JSON / CSV / text).

The pipeline is deterministic for a fixed master seed: every random
stream (optimizer restarts, rank-probe seeds) is derived from it with a
counter-based key, and all collection orders are canonical. Reports are
byte-identical across runs except for the top-level "timing" section.
"""

from __future__ import annotations

import io
import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .bounds import BoundReport, assemble_bounds, generic_intertwiner_rank, pair_orbits
from .entangle import (
    ManifoldOptimum,
    OptimizerConfig,
    SchmidtData,
    coefficient_matrix,
    maximize_entropy,
    nats_to_bits,
    schmidt,
    state_from_coeffs,
)
from .errors import BoundViolationError, CapExceededError, GroupNotEnumeratedError
from .families import FamilyReference, cn_reference, kn_reference
from .graphs import FamilySpec, Graph
from .ground import GroundManifold, build_invariant_basis, enumerate_ground_manifold
from .perms import (
    Bipartition,
    PermGroup,
    automorphism_group,
    bipartition_stabilizer,
    burnside_orbit_count,
)
from .seeding import derive_seeds

SCHEMA_VERSION = 1

CONFIG_DUMP_LIMIT = 4096      # ground configs listed in JSON only up to this many
SPECTRUM_DUMP_LIMIT = 64      # largest Schmidt coefficients listed, plus remainder mass

_RANK_SEED_STREAM = 0xA11C

BOUND_SLACK = 1e-9


@dataclass
class AnalysisConfig:
    """Knobs for one analysis run; defaults match the CLI."""

    bipartition: tuple[int, ...] | None = None   # explicit part A, else first half
    seed: int = 1
    rank_tol: float = 1e-9
    restarts: int = 8
    max_group: int = 1_000_000
    log_base: str = "nats"
    format: str = "json"
    rank_seeds: int = 5

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.log_base not in ("nats", "bits"):
            raise ValueError("log base must be 'nats' or 'bits'")


@dataclass
class Report:
    """Everything one analysis produced, with unavailability made explicit."""

    graph: Graph
    family: FamilySpec | None
    bip: Bipartition
    cfg: AnalysisConfig
    aut: PermGroup | None = None
    stab: PermGroup | None = None
    manifold: GroundManifold | None = None
    optimum: ManifoldOptimum | None = None
    schmidt_data: SchmidtData | None = None
    bounds: BoundReport | None = None
    reference: FamilyReference | None = None
    unavailable: list[str] = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return not self.unavailable


def resolve_bipartition(graph: Graph, cfg: AnalysisConfig) -> Bipartition:
    if cfg.bipartition is None:
        return Bipartition.first_half(graph.n)
    return Bipartition.from_sites(graph.n, cfg.bipartition)


def analyze_graph(graph: Graph, cfg: AnalysisConfig,
                  family: FamilySpec | None = None) -> Report:
    """Run the full pipeline; caps mark later stages unavailable instead of failing."""
    bip = resolve_bipartition(graph, cfg)
    rep = Report(graph=graph, family=family, bip=bip, cfg=cfg)
    clock = time.perf_counter
    t0 = clock()

    try:
        rep.aut = automorphism_group(graph, cap=cfg.max_group, family=family)
        rep.stab = bipartition_stabilizer(graph, bip, cap=cfg.max_group, family=family)
        rep.timing["groups_s"] = clock() - t0

        t1 = clock()
        rep.manifold = enumerate_ground_manifold(graph, rep.aut)
        rep.timing["ground_s"] = clock() - t1

        t2 = clock()
        basis = build_invariant_basis(rep.manifold)
        opt_cfg = OptimizerConfig(seed=cfg.seed, restarts=cfg.restarts, rank_tol=cfg.rank_tol)
        rep.optimum = maximize_entropy(basis, bip, opt_cfg)
        state = state_from_coeffs(basis, rep.optimum.coeffs)
        rep.schmidt_data = schmidt(coefficient_matrix(state, bip), cfg.rank_tol)
        rep.timing["entropy_s"] = clock() - t2

        t3 = clock()
        po = pair_orbits(rep.stab, bip)
        seeds = derive_seeds(cfg.seed, _RANK_SEED_STREAM, cfg.rank_seeds)
        est = generic_intertwiner_rank(po, seeds, cfg.rank_tol)
        burnside = None
        if rep.stab.enumerated:
            burnside = burnside_orbit_count(rep.stab, bip.a_mask)
        abelian = rep.stab.is_abelian() if rep.stab.generators_complete else None
        rep.bounds = assemble_bounds(rep.manifold, est, burnside, graph.n, abelian)
        rep.timing["bounds_s"] = clock() - t3
    except (CapExceededError, GroupNotEnumeratedError) as exc:
        rep.unavailable.append(str(exc))

    if family is not None and family.kind in ("cycle", "complete"):
        n = graph.n
        if n >= 4 and n % 2 == 0:
            rep.reference = cn_reference(n) if family.kind == "cycle" else kn_reference(n)

    rep.timing["total_s"] = clock() - t0

    if rep.bounds is not None and rep.optimum is not None:
        if rep.optimum.entropy > rep.bounds.combined_bound + BOUND_SLACK:
            raise BoundViolationError(
                f"optimized entropy {rep.optimum.entropy!r} exceeds combined bound "
                f"{rep.bounds.combined_bound!r} on {graph!r}; dump: {json.dumps(report_dict(rep))}"
            )
    if rep.schmidt_data is not None and rep.optimum is not None:
        if abs(rep.schmidt_data.entropy - rep.optimum.entropy) > 1e-8:
            raise RuntimeError(
                "entropy mismatch between optimizer and full-matrix SVD: "
                f"{rep.optimum.entropy!r} vs {rep.schmidt_data.entropy!r}"
            )
    return rep


def _pair(value: float | None) -> dict | None:
    if value is None:
        return None
    return {"nats": float(value), "bits": float(nats_to_bits(value))}


def report_dict(rep: Report) -> dict:
    """JSON-ready dict; key order is fixed so serialization is reproducible."""
    graph = rep.graph
    out: dict = {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "seed": rep.cfg.seed,
        "log_base": rep.cfg.log_base,
        "graph": {
            "n": graph.n,
            "m": graph.m,
            "family": str(rep.family) if rep.family else None,
            "edges": [[u, v] for u, v in graph.edges],
        },
        "bipartition": {"a": rep.bip.a_sites, "b": rep.bip.b_sites},
    }
    if rep.aut is not None:
        out["groups"] = {
            "aut_order": rep.aut.order,
            "aut_order_exact": rep.aut.order_is_exact,
            "aut_generators": [g.to_line() for g in rep.aut.generators],
            "stabilizer_order": rep.stab.order,
            "stabilizer_order_exact": rep.stab.order_is_exact,
            "stabilizer_generators": [g.to_line() for g in rep.stab.generators],
            "stabilizer_enumerated": rep.stab.enumerated,
        }
    if rep.manifold is not None:
        man = rep.manifold
        out["ground"] = {
            "maxcut": man.maxcut,
            "ground_energy": man.ground_energy,
            "degeneracy": man.degeneracy,
            "r": man.r,
            "orbit_sizes": [len(o) for o in man.orbits],
            "configs": [int(c) for c in man.configs] if man.degeneracy <= CONFIG_DUMP_LIMIT else None,
        }
    if rep.schmidt_data is not None:
        sd = rep.schmidt_data
        lams = [float(x) for x in sd.schmidt_coeffs[:SPECTRUM_DUMP_LIMIT]]
        out["schmidt"] = {
            "singular_values": [float(x) for x in sd.singular_values[:SPECTRUM_DUMP_LIMIT]],
            "schmidt_coeffs": lams,
            "remainder_mass": float(sd.schmidt_coeffs[SPECTRUM_DUMP_LIMIT:].sum()),
            "rank": sd.rank,
            "entropy": _pair(sd.entropy),
        }
    if rep.optimum is not None:
        opt = rep.optimum
        out["optimum"] = {
            "entropy": _pair(opt.entropy),
            "coeffs_re": [float(c.real) for c in opt.coeffs],
            "coeffs_im": [float(c.imag) for c in opt.coeffs],
            "restarts_used": opt.restarts_used,
            "converged": opt.converged,
            "kind": "exact" if opt.exact else "heuristic-lower-bound-certified-below-combined-bound",
        }
    if rep.bounds is not None:
        b = rep.bounds
        out["bounds"] = {
            "degeneracy_bound_nats": float(b.degeneracy_bound),
            "automorphism_bound_nats": None if b.automorphism_bound is None else float(b.automorphism_bound),
            "combined_bound_nats": float(b.combined_bound),
            "degeneracy_bound_bits": float(nats_to_bits(b.degeneracy_bound)),
            "automorphism_bound_bits": None if b.automorphism_bound is None else float(nats_to_bits(b.automorphism_bound)),
            "combined_bound_bits": float(nats_to_bits(b.combined_bound)),
            "omega_cap": b.omega_cap,
            "burnside_omega": b.burnside_omega,
            "regime": b.regime,
            "seeds": list(b.seeds),
            "method": b.method,
            "agreed": b.agreed,
            "abelian": b.abelian,
        }
    if rep.reference is not None:
        ref = rep.reference
        out["reference"] = {
            "family": ref.family,
            "n": ref.n,
            "exact_entropy": _pair(ref.exact_entropy),
            "schmidt_spectrum": list(ref.schmidt_spectrum) if ref.schmidt_spectrum else None,
            "omega_a": ref.omega_a,
            "new_bound": _pair(ref.new_bound),
            "asymptotic_entropy": _pair(ref.asymptotic_entropy),
        }
    out["unavailable"] = list(rep.unavailable)
    out["timing"] = {k: float(v) for k, v in rep.timing.items()}
    return out


def report_json(rep: Report) -> str:
    return json.dumps(report_dict(rep), indent=2) + "\n"


def report_text(rep: Report) -> str:
    """Short human-readable summary."""
    d = report_dict(rep)
    lines = [
        f"graph: n={d['graph']['n']} m={d['graph']['m']}"
        + (f" family={d['graph']['family']}" if d["graph"]["family"] else ""),
        f"bipartition A: {d['bipartition']['a']}",
    ]
    if "groups" in d:
        lines.append(
            f"|Aut| = {d['groups']['aut_order']}"
            + ("" if d["groups"]["aut_order_exact"] else " (lower bound)")
            + f", |stabilizer| = {d['groups']['stabilizer_order']}"
        )
    if "ground" in d:
        g = d["ground"]
        lines.append(
            f"maxcut = {g['maxcut']}, E0 = {g['ground_energy']}, "
            f"d = {g['degeneracy']}, r = {g['r']}"
        )
    if "optimum" in d:
        base = rep.cfg.log_base
        lines.append(
            f"max entropy = {d['optimum']['entropy'][base]:.12f} {base} "
            f"({d['optimum']['kind']})"
        )
    if "bounds" in d:
        b = d["bounds"]
        key = "nats" if rep.cfg.log_base == "nats" else "bits"
        suffix = "_nats" if key == "nats" else "_bits"
        auto = b[f"automorphism_bound{suffix}"]
        lines.append(
            f"bounds [{key}]: degeneracy = {b[f'degeneracy_bound{suffix}']:.12f}, "
            f"automorphism = {auto if auto is None else round(auto, 12)}, "
            f"combined = {b[f'combined_bound{suffix}']:.12f} ({b['regime']})"
        )
        lines.append(f"omega_cap = {b['omega_cap']}, burnside_omega = {b['burnside_omega']}")
    if d["unavailable"]:
        lines.append("unavailable: " + "; ".join(d["unavailable"]))
    return "\n".join(lines) + "\n"


SWEEP_COLUMNS = ("n", "d", "r", "omega", "Omega", "deg_bound", "auto_bound",
                 "combined", "exact_S", "asymptotic_S", "error")


def sweep_row(rep: Report) -> dict:
    """One CSV row; bound/entropy columns are in the configured log base."""
    conv = (lambda x: x) if rep.cfg.log_base == "nats" else nats_to_bits
    row = {c: "" for c in SWEEP_COLUMNS}
    row["n"] = rep.graph.n
    if rep.manifold is not None:
        row["d"] = rep.manifold.degeneracy
        row["r"] = rep.manifold.r
    if rep.bounds is not None:
        if rep.bounds.burnside_omega is not None:
            row["omega"] = rep.bounds.burnside_omega
        elif rep.reference is not None:
            row["omega"] = rep.reference.omega_a  # closed form when over the cap
        if rep.bounds.omega_cap is not None:
            row["Omega"] = rep.bounds.omega_cap
        row["deg_bound"] = repr(conv(rep.bounds.degeneracy_bound))
        if rep.bounds.automorphism_bound is not None:
            row["auto_bound"] = repr(conv(rep.bounds.automorphism_bound))
        row["combined"] = repr(conv(rep.bounds.combined_bound))
    if rep.optimum is not None:
        row["exact_S"] = repr(conv(rep.optimum.entropy))
    if rep.reference is not None and rep.reference.asymptotic_entropy is not None:
        row["asymptotic_S"] = repr(conv(rep.reference.asymptotic_entropy))
    if rep.unavailable:
        row["error"] = "; ".join(rep.unavailable)
    return row


def run_sweep(kind: str, sizes, cfg: AnalysisConfig) -> str:
    """Analyze one family across sizes; row-level failures recorded, sweep continues."""
    from .graphs import generate_family

    buf = io.StringIO()
    buf.write(",".join(SWEEP_COLUMNS) + "\n")
    for n in sizes:
        spec = FamilySpec(kind, (n,))
        try:
            rep = analyze_graph(generate_family(spec), cfg, family=spec)
            row = sweep_row(rep)
        except Exception as exc:  # keep sweeping; record what failed
            row = {c: "" for c in SWEEP_COLUMNS}
            row["n"] = n
            row["error"] = str(exc).replace(",", ";")
        buf.write(",".join(str(row[c]) for c in SWEEP_COLUMNS) + "\n")
    return buf.getvalue()
