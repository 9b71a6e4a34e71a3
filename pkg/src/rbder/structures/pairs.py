"""Validated pair types and their representations.

Pairs check every axiom on construction and raise :class:`StructureError`
with the failing verdict.  Representation containers only check shapes,
because their axioms are relative to a pair; constructions that consume a
representation verify it against the pair first.
"""

from __future__ import annotations

from ..linalg import DimensionError, Matrix, Q
from .algebras import AssBimodule, AssocAlgebra, LieAlgebra, LieRep
from .verify import (
    StructureError,
    check_associativity,
    check_bider,
    check_commute,
    check_derivation,
    check_jacobi,
    check_rbassder_rep,
    check_rblieder_rep,
    check_rota_baxter,
    first_failure,
)

__all__ = [
    "LieBiDerPair",
    "RBLieDerPair",
    "RBAssDerPair",
    "RBLieDerRep",
    "RBAssDerRep",
    "verify_rblieder_pair",
    "verify_rbassder_pair",
]


def _square(m, n, what):
    if not isinstance(m, Matrix):
        raise TypeError(f"{what} must be a Matrix, got {type(m).__name__}")
    if m.shape != (n, n):
        raise DimensionError(f"{what} has shape {m.shape}, expected {(n, n)}")


def verify_rblieder_pair(L: LieAlgebra, delta: Matrix, R: Matrix, weight) -> list:
    """Every verdict a weighted Rota-Baxter LieDer pair must pass, in order."""
    return [
        check_jacobi(L),
        check_derivation(L, delta),
        check_rota_baxter(L, R, weight),
        check_commute(R, delta),
    ]


def verify_rbassder_pair(A: AssocAlgebra, delta: Matrix, R: Matrix, weight) -> list:
    return [
        check_associativity(A),
        check_derivation(A, delta),
        check_rota_baxter(A, R, weight),
        check_commute(R, delta),
    ]


class _RBPair:
    __slots__ = ("algebra", "delta", "R", "weight")

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.algebra, self.delta, self.R, self.weight) == (other.algebra, other.delta, other.R, other.weight)

    def __hash__(self):
        return hash((type(self).__name__, self.algebra, self.delta, self.R, self.weight))

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, weight={self.weight})"


class RBLieDerPair(_RBPair):
    """Lie algebra with a derivation ``delta`` and a commuting weighted Rota-Baxter operator ``R``."""

    __slots__ = ()

    def __init__(self, algebra: LieAlgebra, delta: Matrix, R: Matrix, weight=0):
        if not isinstance(algebra, LieAlgebra):
            raise TypeError("algebra must be a LieAlgebra")
        _square(delta, algebra.dim, "delta")
        _square(R, algebra.dim, "R")
        weight = Q(weight)
        bad = first_failure(verify_rblieder_pair(algebra, delta, R, weight))
        if bad is not None:
            raise StructureError(bad)
        self.algebra, self.delta, self.R, self.weight = algebra, delta, R, weight

    def adjoint_rep(self) -> "RBLieDerRep":
        """The pair acting on itself by ``ad`` with ``delta_V = delta`` and ``T = R``."""
        return RBLieDerRep(LieRep.adjoint(self.algebra), self.delta, self.R)


class RBAssDerPair(_RBPair):
    """Associative analogue of :class:`RBLieDerPair`."""

    __slots__ = ()

    def __init__(self, algebra: AssocAlgebra, delta: Matrix, R: Matrix, weight=0):
        if not isinstance(algebra, AssocAlgebra):
            raise TypeError("algebra must be an AssocAlgebra")
        _square(delta, algebra.dim, "delta")
        _square(R, algebra.dim, "R")
        weight = Q(weight)
        bad = first_failure(verify_rbassder_pair(algebra, delta, R, weight))
        if bad is not None:
            raise StructureError(bad)
        self.algebra, self.delta, self.R, self.weight = algebra, delta, R, weight

    def adjoint_rep(self) -> "RBAssDerRep":
        return RBAssDerRep(AssBimodule.regular(self.algebra), self.delta, self.R)


class LieBiDerPair:
    """Lie algebra with two derivations satisfying the BiDer condition."""

    __slots__ = ("algebra", "delta1", "delta2")

    def __init__(self, algebra: LieAlgebra, delta1: Matrix, delta2: Matrix):
        if not isinstance(algebra, LieAlgebra):
            raise TypeError("algebra must be a LieAlgebra")
        _square(delta1, algebra.dim, "delta1")
        _square(delta2, algebra.dim, "delta2")
        v = check_jacobi(algebra)
        if not v:
            raise StructureError(v)
        v = check_bider(algebra, delta1, delta2)
        if not v:
            raise StructureError(v)
        self.algebra, self.delta1, self.delta2 = algebra, delta1, delta2

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def __eq__(self, other):
        if not isinstance(other, LieBiDerPair):
            return NotImplemented
        return (self.algebra, self.delta1, self.delta2) == (other.algebra, other.delta1, other.delta2)

    def __hash__(self):
        return hash((self.algebra, self.delta1, self.delta2))

    def __repr__(self):
        return f"LieBiDerPair(dim={self.dim})"


class RBLieDerRep:
    """Representation data ``(rho, delta_V, T)``; see :func:`check_rblieder_rep`."""

    __slots__ = ("rep", "delta_V", "T")

    def __init__(self, rep: LieRep, delta_V: Matrix, T: Matrix):
        _square(delta_V, rep.space_dim, "delta_V")
        _square(T, rep.space_dim, "T")
        self.rep, self.delta_V, self.T = rep, delta_V, T

    @property
    def space_dim(self) -> int:
        return self.rep.space_dim

    @property
    def rho(self):
        return self.rep.rho

    def validate(self, pair: RBLieDerPair) -> "RBLieDerRep":
        v = check_rblieder_rep(pair, self)
        if not v:
            raise StructureError(v)
        return self

    def __eq__(self, other):
        if not isinstance(other, RBLieDerRep):
            return NotImplemented
        return (self.rep, self.delta_V, self.T) == (other.rep, other.delta_V, other.T)

    def __hash__(self):
        return hash((self.rep, self.delta_V, self.T))

    def __repr__(self):
        return f"RBLieDerRep(space_dim={self.space_dim})"


class RBAssDerRep:
    """Bimodule data ``(l, r, delta_M, T)``; see :func:`check_rbassder_rep`."""

    __slots__ = ("bimod", "delta_M", "T")

    def __init__(self, bimod: AssBimodule, delta_M: Matrix, T: Matrix):
        _square(delta_M, bimod.space_dim, "delta_M")
        _square(T, bimod.space_dim, "T")
        self.bimod, self.delta_M, self.T = bimod, delta_M, T

    @property
    def space_dim(self) -> int:
        return self.bimod.space_dim

    def validate(self, pair: RBAssDerPair) -> "RBAssDerRep":
        v = check_rbassder_rep(pair, self)
        if not v:
            raise StructureError(v)
        return self

    def __eq__(self, other):
        if not isinstance(other, RBAssDerRep):
            return NotImplemented
        return (self.bimod, self.delta_M, self.T) == (other.bimod, other.delta_M, other.T)

    def __hash__(self):
        return hash((self.bimod, self.delta_M, self.T))

    def __repr__(self):
        return f"RBAssDerRep(space_dim={self.space_dim})"
