"""Semidirect products, induced structures and skew-symmetrization.

Every construction validates its inputs and builds its output through the
validating pair constructors, so a returned object always satisfies its axioms.
"""

from __future__ import annotations

from ..linalg import InconsistencyError, Matrix, Q
from .algebras import AssBimodule, AssocAlgebra, LieAlgebra, LieRep, add_vectors, scale_vector, unit_vector
from .pairs import LieBiDerPair, RBAssDerPair, RBAssDerRep, RBLieDerPair, RBLieDerRep
from .verify import StructureError, check_bider_rep

__all__ = [
    "semidirect_bider",
    "semidirect_rblieder",
    "semidirect_rbassder",
    "induced_bracket",
    "induced_product",
    "induced_rep",
    "induced_actions",
    "skew_symmetrize_algebra",
    "skew_symmetrize_bimodule",
]


def _space_names(m: int) -> tuple:
    return tuple(f"v{a + 1}" for a in range(m))


def _semidirect_lie(L: LieAlgebra, rep: LieRep) -> LieAlgebra:
    # [x+a, y+b] = [x,y] + rho(x)b - rho(y)a; basis of V sits after that of L
    n = L.dim
    quads = [(i, j, k, c) for (i, j, k, c) in L.upper_quads()]
    for i in range(n):
        for b, col in enumerate(_columns(rep.rho[i])):
            for a, c in col:
                quads.append((i, n + b, n + a, c))
    return LieAlgebra(n + rep.space_dim, quads, L.names + _space_names(rep.space_dim))


def _columns(m: Matrix):
    return [m.column_items(j) for j in range(m.ncols)]


def semidirect_bider(pair: LieBiDerPair, rep: LieRep, phi1: Matrix, phi2: Matrix) -> LieBiDerPair:
    """The BiDer pair ``(L + V, delta1 + phi1, delta2 + phi2)``.

    Besides the BiDer representation identity, each ``phi_i`` must be
    compatible with ``delta_i`` (``phi_i rho(x) = rho(delta_i x) + rho(x) phi_i``),
    otherwise the block maps are not derivations; the result is validated
    and a :class:`StructureError` names the failure.
    """
    v = check_bider_rep(pair, rep, phi1, phi2)
    if not v:
        raise StructureError(v)
    if rep.space_dim == 0:
        return pair
    big = _semidirect_lie(pair.algebra, rep)
    return LieBiDerPair(big, Matrix.block_diag([pair.delta1, phi1]), Matrix.block_diag([pair.delta2, phi2]))


def semidirect_rblieder(pair: RBLieDerPair, rep: RBLieDerRep) -> RBLieDerPair:
    """``(L + V, delta + delta_V, R + T)`` with the same weight."""
    rep.validate(pair)
    if rep.space_dim == 0:
        return pair
    big = _semidirect_lie(pair.algebra, rep.rep)
    return RBLieDerPair(
        big,
        Matrix.block_diag([pair.delta, rep.delta_V]),
        Matrix.block_diag([pair.R, rep.T]),
        pair.weight,
    )


def semidirect_rbassder(pair: RBAssDerPair, rep: RBAssDerRep) -> RBAssDerPair:
    """``(A + M, delta + delta_M, R + T)`` with product ``(x+m)(y+n) = xy + xn + my``."""
    rep.validate(pair)
    bm = rep.bimod
    if bm.space_dim == 0:
        return pair
    A = pair.algebra
    n = A.dim
    quads = list(A.quads())
    for i in range(n):
        for b, col in enumerate(_columns(bm.left[i])):
            quads.extend((i, n + b, n + a, c) for a, c in col)
        for b, col in enumerate(_columns(bm.right[i])):
            quads.extend((n + b, i, n + a, c) for a, c in col)
    big = AssocAlgebra(n + bm.space_dim, quads, A.names + _space_names(bm.space_dim))
    return RBAssDerPair(
        big,
        Matrix.block_diag([pair.delta, rep.delta_M]),
        Matrix.block_diag([pair.R, rep.T]),
        pair.weight,
    )


def _induced_table(alg, R: Matrix, weight):
    # x *_R y = R(x) y + x R(y) + weight x y on basis vectors
    n = alg.dim
    lam = Q(weight)
    cols = [R.column(i) for i in range(n)]
    return [
        [
            add_vectors(
                alg.mul(cols[i], unit_vector(n, j)),
                alg.mul(unit_vector(n, i), cols[j]),
                scale_vector(lam, alg.table[i][j]),
            )
            for j in range(n)
        ]
        for i in range(n)
    ]


def _check_morphism(alg_R, alg, R: Matrix):
    # R(x *_R y) = R(x) R(y)
    n = alg.dim
    cols = [R.column(i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if R @ alg_R.table[i][j] != alg.mul(cols[i], cols[j]):
                raise InconsistencyError(f"R fails to be a morphism on ({i}, {j})")


def induced_bracket(pair: RBLieDerPair) -> RBLieDerPair:
    """``(L, [.,.]_R, delta, R)`` with ``[x,y]_R = [Rx,y] + [x,Ry] + weight [x,y]``."""
    L = pair.algebra
    LR = LieAlgebra.from_table(_induced_table(L, pair.R, pair.weight), L.names)
    _check_morphism(LR, L, pair.R)
    return RBLieDerPair(LR, pair.delta, pair.R, pair.weight)


def induced_product(pair: RBAssDerPair) -> RBAssDerPair:
    """``(A, mu_R, delta, R)`` with ``mu_R(x,y) = xR(y) + R(x)y + weight xy``."""
    A = pair.algebra
    AR = AssocAlgebra.from_table(_induced_table(A, pair.R, pair.weight), A.names)
    _check_morphism(AR, A, pair.R)
    return RBAssDerPair(AR, pair.delta, pair.R, pair.weight)


def induced_rep(pair: RBLieDerPair, rep: RBLieDerRep) -> RBLieDerRep:
    """Representation of the induced pair by ``rho~(x) = rho(Rx) - T rho(x)``."""
    rep.validate(pair)
    lr, T = rep.rep, rep.T
    rho_t = [lr.act(pair.R.column(i)) - T @ lr.rho[i] for i in range(pair.dim)]
    return RBLieDerRep(LieRep(induced_bracket(pair).algebra, rho_t, lr.space_dim), rep.delta_V, T)


def induced_actions(pair: RBAssDerPair, rep: RBAssDerRep) -> RBAssDerRep:
    """Bimodule over the induced pair by ``l_R(x) = l(Rx) - T l(x)`` and ``r_R(x) = r(Rx) - T r(x)``."""
    rep.validate(pair)
    bm, T = rep.bimod, rep.T
    cols = [pair.R.column(i) for i in range(pair.dim)]
    left = [bm.left_of(cols[i]) - T @ bm.left[i] for i in range(pair.dim)]
    right = [bm.right_of(cols[i]) - T @ bm.right[i] for i in range(pair.dim)]
    return RBAssDerRep(AssBimodule(induced_product(pair).algebra, left, right, bm.space_dim), rep.delta_M, T)


def _commutator_algebra(A: AssocAlgebra) -> LieAlgebra:
    n = A.dim
    quads = []
    for i in range(n):
        for j in range(i + 1, n):
            for k, (a, b) in enumerate(zip(A.table[i][j], A.table[j][i])):
                if a != b:
                    quads.append((i, j, k, a - b))
    return LieAlgebra(n, quads, A.names)


def skew_symmetrize_algebra(pair: RBAssDerPair) -> RBLieDerPair:
    """Commutator bracket ``[x,y]_c = xy - yx`` with the same delta, R and weight."""
    return RBLieDerPair(_commutator_algebra(pair.algebra), pair.delta, pair.R, pair.weight)


def skew_symmetrize_bimodule(rep: RBAssDerRep, pair: RBAssDerPair | None = None) -> RBLieDerRep:
    """Lie representation ``rho(x) = l(x) - r(x)`` of the commutator algebra.

    With ``pair`` given, the input is validated against it and the output
    against the skew-symmetrized pair.
    """
    bm = rep.bimod
    if pair is not None:
        rep.validate(pair)
    rho = [bm.left[i] - bm.right[i] for i in range(bm.algebra.dim)]
    out = RBLieDerRep(LieRep(_commutator_algebra(bm.algebra), rho, bm.space_dim), rep.delta_M, rep.T)
    if pair is not None:
        out.validate(skew_symmetrize_algebra(pair))
    return out
