"""Algebras, weighted Rota-Baxter pairs, their representations and constructions."""

from .algebras import (
    AssBimodule,
    AssocAlgebra,
    LieAlgebra,
    LieRep,
    add_vectors,
    scale_vector,
    unit_vector,
    zero_vector,
)
from .build import (
    induced_actions,
    induced_bracket,
    induced_product,
    induced_rep,
    semidirect_bider,
    semidirect_rbassder,
    semidirect_rblieder,
    skew_symmetrize_algebra,
    skew_symmetrize_bimodule,
)
from .pairs import (
    LieBiDerPair,
    RBAssDerPair,
    RBAssDerRep,
    RBLieDerPair,
    RBLieDerRep,
    verify_rbassder_pair,
    verify_rblieder_pair,
)
from .verify import (
    StructureError,
    Verdict,
    check_associativity,
    check_bider,
    check_bider_rep,
    check_bimodule,
    check_commute,
    check_derivation,
    check_jacobi,
    check_lie_rep,
    check_rbassder_rep,
    check_rblieder_rep,
    check_rota_baxter,
    first_failure,
)

__all__ = [
    "AssBimodule",
    "AssocAlgebra",
    "LieAlgebra",
    "LieRep",
    "add_vectors",
    "scale_vector",
    "unit_vector",
    "zero_vector",
    "induced_actions",
    "induced_bracket",
    "induced_product",
    "induced_rep",
    "semidirect_bider",
    "semidirect_rbassder",
    "semidirect_rblieder",
    "skew_symmetrize_algebra",
    "skew_symmetrize_bimodule",
    "LieBiDerPair",
    "RBAssDerPair",
    "RBAssDerRep",
    "RBLieDerPair",
    "RBLieDerRep",
    "verify_rbassder_pair",
    "verify_rblieder_pair",
    "StructureError",
    "Verdict",
    "check_associativity",
    "check_bider",
    "check_bider_rep",
    "check_bimodule",
    "check_commute",
    "check_derivation",
    "check_jacobi",
    "check_lie_rep",
    "check_rbassder_rep",
    "check_rblieder_rep",
    "check_rota_baxter",
    "first_failure",
]
