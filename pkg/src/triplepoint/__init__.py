"""Local algebra of the non-planar quadruple point and the K3 curve audit."""
from .poly import DegreesWeights, Polynomial, WeightSystem, find_weights, weighted_valuation
from .parser import GRAMMAR, ParseError, parse_polynomial, parse_vars
from .localstd import LocalOrder, ModuleElement, quotient_dimension, standard_basis
from .deform import MapGerm, merle_equivalence, paper_germ, t1_compute, t1_grading
from .versal import (
    SignMode,
    classify_plane_singularity,
    eliminate_to_plane,
    triple_point_stratum,
    versal_family,
)
from .lattice import (
    SurfaceClass,
    blowup_restriction,
    decomposition_check,
    degree_on_E_check,
    enumerate_budgets,
    es_expected_dim,
    proof_ledger,
)

__all__ = [
    "DegreesWeights", "Polynomial", "WeightSystem", "find_weights", "weighted_valuation",
    "GRAMMAR", "ParseError", "parse_polynomial", "parse_vars",
    "LocalOrder", "ModuleElement", "quotient_dimension", "standard_basis",
    "MapGerm", "merle_equivalence", "paper_germ", "t1_compute", "t1_grading",
    "SignMode", "classify_plane_singularity", "eliminate_to_plane", "triple_point_stratum",
    "versal_family",
    "SurfaceClass", "blowup_restriction", "decomposition_check", "degree_on_E_check",
    "enumerate_budgets", "es_expected_dim", "proof_ledger",
]
