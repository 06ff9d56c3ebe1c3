"""Exact computations for toric arrangements: layers, Poincare polynomials,
integer cohomology rings and arithmetic matroid reconstruction."""

from torusos._core import (
    Cohomology,
    MultiplicityOracle,
    ToricArrangement,
    ToricClass,
    TorusosError,
    betti,
    column_sign_equivalent,
    deletion,
    hasse_edges,
    hermite_normal_form,
    invariant_factors,
    layers,
    oracle_from_matrix,
    poincare_polynomial,
    poset_isomorphic,
    reconstruct,
    restriction,
    restriction_is_valid,
    run_cli,
    saturate,
    smith_normal_form,
)

__all__ = [
    "Cohomology",
    "MultiplicityOracle",
    "ToricArrangement",
    "ToricClass",
    "TorusosError",
    "betti",
    "column_sign_equivalent",
    "deletion",
    "hasse_edges",
    "hermite_normal_form",
    "invariant_factors",
    "layers",
    "oracle_from_matrix",
    "poincare_polynomial",
    "poset_isomorphic",
    "reconstruct",
    "restriction",
    "restriction_is_valid",
    "run_cli",
    "saturate",
    "smith_normal_form",
]
