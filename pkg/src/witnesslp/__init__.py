"""Entanglement-witness families for n x n bipartite systems.

The package maps pure product states to expectation tuples of a cyclic
operator family, certifies supporting hyperplanes of the resulting convex
region, turns them into witness operators, and classifies the associated
mixed-state families.  The seesaw hot loop runs in a compiled extension when
available, with a NumPy fallback selected at import.
"""

from ._backend import COMPILED, backend_name
from .decomp import LocalDecomposition, decompose, one_sided_terms, reconstruct, settings_count
from .opbasis import OperatorBasis, build_basis, max_entangled_ket, permutation_images, shift_operator
from .qmath import (
    DimensionError,
    HermitianOperator,
    ProductState,
    PureState,
    gell_mann_basis,
    identity,
    is_positive_semidefinite,
    min_eigenvalue,
    partial_transpose,
    swap_operator,
    tensor,
)
from .region import (
    BoundaryCheck,
    ConvergenceError,
    Hyperplane,
    MaximizationResult,
    NonMonotoneError,
    PVector,
    certify_plane,
    conjectured_boundary_check,
    coordinate_face,
    fit_hyperplane,
    grid_oracle_max,
    maximize_functional,
    p_vector,
    p_vector_expect,
    refine_boundary,
    tangency_interval,
)
from .states import (
    DetectionReport,
    MixtureState,
    classify,
    horodecki_weights,
    mixture,
    ppt_closed_form,
    ppt_eigen,
    trace_against_family,
    two_parameter_weights,
)
from .witness import (
    AlphaDomain,
    WitnessCertificate,
    WitnessFamily,
    builtin_families,
    certify_witness,
    family_by_label,
    witness_from_plane,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaDomain",
    "BoundaryCheck",
    "COMPILED",
    "ConvergenceError",
    "DetectionReport",
    "DimensionError",
    "HermitianOperator",
    "Hyperplane",
    "LocalDecomposition",
    "MaximizationResult",
    "MixtureState",
    "NonMonotoneError",
    "OperatorBasis",
    "PVector",
    "ProductState",
    "PureState",
    "WitnessCertificate",
    "WitnessFamily",
    "backend_name",
    "build_basis",
    "builtin_families",
    "certify_plane",
    "certify_witness",
    "classify",
    "conjectured_boundary_check",
    "coordinate_face",
    "decompose",
    "family_by_label",
    "fit_hyperplane",
    "gell_mann_basis",
    "grid_oracle_max",
    "horodecki_weights",
    "identity",
    "is_positive_semidefinite",
    "max_entangled_ket",
    "maximize_functional",
    "min_eigenvalue",
    "mixture",
    "one_sided_terms",
    "p_vector",
    "p_vector_expect",
    "partial_transpose",
    "permutation_images",
    "ppt_closed_form",
    "ppt_eigen",
    "reconstruct",
    "refine_boundary",
    "settings_count",
    "shift_operator",
    "swap_operator",
    "tangency_interval",
    "tensor",
    "trace_against_family",
    "two_parameter_weights",
    "witness_from_plane",
]
