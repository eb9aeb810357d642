"""symcut: exact balanced-cut entanglement of Ising ground states on graphs.

For any small graph and balanced bipartition the toolkit enumerates the
max-cut ground manifold of the antiferromagnetic Ising model, maximizes
the bipartite entanglement entropy over the symmetry-invariant ground
space, and checks the result against two upper bounds: one from the
ground-state degeneracy and one from the rank cap that the bipartition
preserving automorphisms impose on the coefficient matrix.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    IntertwinerRankEstimate,
    PairOrbitPartition,
    assemble_bounds,
    degeneracy_bound,
    generic_intertwiner_rank,
    pair_orbits,
)
from .entangle import (
    CoefficientMatrix,
    ManifoldOptimum,
    OptimizerConfig,
    SchmidtData,
    coefficient_matrix,
    maximize_entropy,
    schmidt,
    state_from_coeffs,
)
from .errors import (
    BoundViolationError,
    CapExceededError,
    GraphError,
    GroupNotEnumeratedError,
)
from .families import FamilyReference, cn_reference, kn_asymptotic, kn_reference
from .graphs import (
    FamilySpec,
    Graph,
    generate_family,
    parse_edge_list,
    parse_family_spec,
    random_graph,
    serialize_edge_list,
)
from .ground import (
    GroundManifold,
    InvariantBasis,
    SparseState,
    build_invariant_basis,
    energy,
    enumerate_ground_manifold,
)
from .perms import (
    Bipartition,
    PermGroup,
    Permutation,
    apply_perm,
    automorphism_group,
    bipartition_stabilizer,
    burnside_orbit_count,
    cycle_count_on,
    orbits_of_configs,
)
from .report import AnalysisConfig, Report, analyze_graph, report_dict, report_json, run_sweep

__all__ = [
    "AnalysisConfig",
    "Bipartition",
    "BoundReport",
    "BoundViolationError",
    "CapExceededError",
    "CoefficientMatrix",
    "FamilyReference",
    "FamilySpec",
    "Graph",
    "GraphError",
    "GroundManifold",
    "GroupNotEnumeratedError",
    "IntertwinerRankEstimate",
    "InvariantBasis",
    "ManifoldOptimum",
    "OptimizerConfig",
    "PairOrbitPartition",
    "PermGroup",
    "Permutation",
    "Report",
    "SchmidtData",
    "SparseState",
    "analyze_graph",
    "apply_perm",
    "assemble_bounds",
    "automorphism_group",
    "bipartition_stabilizer",
    "build_invariant_basis",
    "burnside_orbit_count",
    "cn_reference",
    "coefficient_matrix",
    "cycle_count_on",
    "degeneracy_bound",
    "energy",
    "enumerate_ground_manifold",
    "generate_family",
    "generic_intertwiner_rank",
    "kn_asymptotic",
    "kn_reference",
    "maximize_entropy",
    "orbits_of_configs",
    "pair_orbits",
    "parse_edge_list",
    "parse_family_spec",
    "random_graph",
    "report_dict",
    "report_json",
    "run_sweep",
    "schmidt",
    "serialize_edge_list",
    "state_from_coeffs",
]
