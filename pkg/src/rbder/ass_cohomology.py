"""Cohomology of weighted Rota-Baxter AssDer pairs and skew-symmetrization.

Hochschild cochains use the standard differential

    d f(x_1..x_{n+1}) = x_1 f(x_2..) + sum_i (-1)^i f(.., x_i x_{i+1}, ..) + (-1)^(n+1) f(..x_n) x_{n+1}

and the combined differential has the same shape as on the Lie side:

    D(f)         = (d f, -del f, -Phi f)                           in degree 1
    D((f, g), h) = (d f, d g + (-1)^n del f, -d_RH h - Phi f)     in degree n >= 2

Skew-symmetrization ``S_n f(x..) = sum_sigma sgn(sigma) f(x_sigma(1)..)``
(no 1/n! factor) maps Hochschild cochains to alternating ones.  Because the
Lie differential here is ``(-1)^(n+1)`` times the textbook one while the
Hochschild differential is standard, ``(S, S, S)`` intertwines the combined
differentials only up to a sign on each output slot; see ``SKEW_SIGN_TABLE``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .cochains import AssCochain, CochainSpace, LieCochain, OperatorBuilder, _CombinedCochain, block_matrix, combined_dim, perm_sign
from .lie_cohomology import CohomologyReport, RBLieDerCochain, _phi_builder
from .linalg import DimensionError, Matrix, quotient_dim, rank
from .structures import AssBimodule, RBAssDerPair, RBAssDerRep, induced_actions

__all__ = [
    "ASS_DEGREE_CAP",
    "SKEW_SIGN_TABLE",
    "AssCochain",
    "RBAssDerCochain",
    "hoch_matrix",
    "r_hoch_matrix",
    "partial_ass_matrix",
    "phi_ass_matrix",
    "assder_matrix",
    "assemble_ass_matrix",
    "skew_matrix",
    "skew_triple_matrix",
    "hoch_diff",
    "r_hoch_diff",
    "partial_ass",
    "phi_ass",
    "assder_diff",
    "big_D_ass",
    "cohomology_ass",
    "cohomology_ass_table",
    "skew_cochain",
    "skew_triple",
    "skew_chain_signs",
    "chain_skew_slot_signs",
]

ASS_DEGREE_CAP = 3

# Signs s with  D_Lie(S c) = s * S(D_Ass c)  holding slot by slot on the
# output (f, g, h) of degree n+1, keyed by the input degree n.  Computed on
# the matrix-algebra corpus entry and asserted exactly by the test suite.
# Degree 1 agrees with a single overall sign; degree 2 does not.
SKEW_SIGN_TABLE = {
    1: (1, 1, 1),
    2: (-1, 1, 1),
}


class RBAssDerCochain(_CombinedCochain):
    """``f`` in degree 1; ``(f, g, h)`` with ``g, h`` one degree lower otherwise."""

    __slots__ = ()
    part_cls = AssCochain


def _space(d, m, n):
    return CochainSpace(d, m, n, alternating=False)


@lru_cache(maxsize=256)
def hoch_matrix(bimod: AssBimodule, n: int) -> Matrix:
    """Matrix of the Hochschild differential ``C^n -> C^{n+1}``."""
    A = bimod.algebra
    d, m = A.dim, bimod.space_dim
    src, tgt = _space(d, m, n), _space(d, m, n + 1)
    b = OperatorBuilder(src, tgt)
    end_sign = (-1) ** (n + 1)
    for pos, I in enumerate(tgt.tuples):
        b.add(pos, I[1:], 1, bimod.left[I[0]])
        for p in range(n):
            # 1-based position i = p+1
            sign = (-1) ** (p + 1)
            for k, c in A.terms(I[p], I[p + 1]):
                b.add(pos, I[:p] + (k,) + I[p + 2:], sign * c)
        b.add(pos, I[:n], end_sign, bimod.right[I[n]])
    return b.matrix()


@lru_cache(maxsize=64)
def _induced_bimod(pair: RBAssDerPair, rep: RBAssDerRep) -> AssBimodule:
    return induced_actions(pair, rep).bimod


def r_hoch_matrix(pair: RBAssDerPair, rep: RBAssDerRep, n: int) -> Matrix:
    """Hochschild differential of the induced product with the induced actions."""
    return hoch_matrix(_induced_bimod(pair, rep), n)


@lru_cache(maxsize=256)
def partial_ass_matrix(delta: Matrix, delta_M: Matrix, n: int) -> Matrix:
    """Matrix of ``del f = sum_i f(.., delta x_i, ..) - delta_M f`` on ``C^n``."""
    if n < 1:
        raise DimensionError("the derivation twist is defined from degree 1")
    d, m = delta.nrows, delta_M.nrows
    sp = _space(d, m, n)
    b = OperatorBuilder(sp, sp)
    cols = [delta.column_items(j) for j in range(d)]
    minus_dM = -delta_M
    for pos, I in enumerate(sp.tuples):
        for p in range(n):
            for k, c in cols[I[p]]:
                b.add(pos, I[:p] + (k,) + I[p + 1:], c)
        b.add(pos, I, 1, minus_dM)
    return b.matrix()


@lru_cache(maxsize=256)
def phi_ass_matrix(pair: RBAssDerPair, rep: RBAssDerRep, n: int) -> Matrix:
    """Matrix of ``Phi^n`` over ordered tuples; the identity in degree 0."""
    return _phi_builder(_space(pair.dim, rep.space_dim, n), pair.R, rep.T, pair.weight)


def assder_matrix(delta: Matrix, delta_M: Matrix, bimod: AssBimodule, n: int) -> Matrix:
    """AssDer differential ``(f, g) -> (d f, d g + (-1)^n del f)`` over ``bimod``.

    In degree 1 the input is ``f`` alone and the image is ``(d f, -del f)``.
    """
    if n < 1:
        raise DimensionError("AssDer cochains start in degree 1")
    d, m = bimod.algebra.dim, bimod.space_dim
    dn = hoch_matrix(bimod, n)
    dl = partial_ass_matrix(delta, delta_M, n)
    if n == 1:
        return Matrix.vstack([dn, -dl])
    return block_matrix(
        [[dn, None], [dl * (-1) ** n, hoch_matrix(bimod, n - 1)]],
        [_space(d, m, n + 1).dim, _space(d, m, n).dim],
        [_space(d, m, n).dim, _space(d, m, n - 1).dim],
    )


def _check_degree(n: int, cap: int):
    if n < 1:
        raise DimensionError("combined cochains start in degree 1")
    if n > cap:
        raise DimensionError(f"degree {n} above the cap {cap}")


def assemble_ass_matrix(pair: RBAssDerPair, rep: RBAssDerRep, n: int, cap: int = ASS_DEGREE_CAP) -> Matrix:
    """Matrix of the combined differential from degree n to n+1 (column order f, g, h)."""
    _check_degree(n, cap)
    return _assemble(pair, rep, n)


@lru_cache(maxsize=256)
def _assemble(pair, rep, n):
    d, m = pair.dim, rep.space_dim
    bm = rep.bimod
    dn = hoch_matrix(bm, n)
    dl = partial_ass_matrix(pair.delta, rep.delta_M, n)
    ph = phi_ass_matrix(pair, rep, n)
    if n == 1:
        return Matrix.vstack([dn, -dl, -ph])
    sizes_in = [_space(d, m, n).dim, _space(d, m, n - 1).dim, _space(d, m, n - 1).dim]
    sizes_out = [_space(d, m, n + 1).dim, sizes_in[0], sizes_in[0]]
    return block_matrix(
        [
            [dn, None, None],
            [dl * (-1) ** n, hoch_matrix(bm, n - 1), None],
            [-ph, None, -r_hoch_matrix(pair, rep, n - 1)],
        ],
        sizes_out,
        sizes_in,
    )


def _apply(mat, c, degree, cls=AssCochain):
    return cls.from_vector(degree, c.dim, c.target_dim, mat @ c.to_vector())


def _fits(c, d, m):
    if (c.dim, c.target_dim) != (d, m):
        raise DimensionError(f"cochain on ({c.dim} -> {c.target_dim}) does not fit ({d} -> {m})")


def hoch_diff(bimod: AssBimodule, f: AssCochain) -> AssCochain:
    _fits(f, bimod.algebra.dim, bimod.space_dim)
    return _apply(hoch_matrix(bimod, f.degree), f, f.degree + 1)


def r_hoch_diff(pair: RBAssDerPair, rep: RBAssDerRep, h: AssCochain) -> AssCochain:
    _fits(h, pair.dim, rep.space_dim)
    return _apply(r_hoch_matrix(pair, rep, h.degree), h, h.degree + 1)


def partial_ass(delta: Matrix, delta_M: Matrix, f: AssCochain) -> AssCochain:
    _fits(f, delta.nrows, delta_M.nrows)
    return _apply(partial_ass_matrix(delta, delta_M, f.degree), f, f.degree)


def phi_ass(pair: RBAssDerPair, rep: RBAssDerRep, f: AssCochain) -> AssCochain:
    _fits(f, pair.dim, rep.space_dim)
    return _apply(phi_ass_matrix(pair, rep, f.degree), f, f.degree)


def assder_diff(delta: Matrix, delta_M: Matrix, bimod: AssBimodule, c) -> tuple:
    """Apply the AssDer differential to ``f`` (degree 1) or ``(f, g)``; returns a pair of cochains."""
    f, g = (c, None) if isinstance(c, AssCochain) else c
    n = f.degree
    d, m = f.dim, f.target_dim
    _fits(f, bimod.algebra.dim, bimod.space_dim)
    if n == 1:
        if g is not None:
            raise DimensionError("degree-1 AssDer cochains carry only f")
        vec = f.to_vector()
    else:
        if g is None or g.degree != n - 1:
            raise DimensionError("degree-n AssDer cochains need g of degree n-1")
        vec = f.to_vector() + g.to_vector()
    out = assder_matrix(delta, delta_M, bimod, n) @ vec
    cut = _space(d, m, n + 1).dim
    return AssCochain.from_vector(n + 1, d, m, out[:cut]), AssCochain.from_vector(n, d, m, out[cut:])


def big_D_ass(pair: RBAssDerPair, rep: RBAssDerRep, c: RBAssDerCochain, cap: int = ASS_DEGREE_CAP) -> RBAssDerCochain:
    if not isinstance(c, RBAssDerCochain):
        raise TypeError("big_D_ass acts on RBAssDerCochain values")
    _fits(c.f, pair.dim, rep.space_dim)
    mat = assemble_ass_matrix(pair, rep, c.degree, cap)
    return RBAssDerCochain.from_vector(c.degree + 1, c.dim, c.target_dim, mat @ c.to_vector())


def cohomology_ass(pair: RBAssDerPair, rep: RBAssDerRep, n: int, cap: int = ASS_DEGREE_CAP) -> CohomologyReport:
    _check_degree(n, cap)
    d, m = pair.dim, rep.space_dim
    total = combined_dim(d, m, n, False)
    z = total - rank(_assemble(pair, rep, n))
    b = rank(_assemble(pair, rep, n - 1)) if n > 1 else 0
    return CohomologyReport(n, total, z, b, quotient_dim(z, b))


def cohomology_ass_table(pair: RBAssDerPair, rep: RBAssDerRep, max_degree: int, cap: int = ASS_DEGREE_CAP) -> list:
    return [cohomology_ass(pair, rep, n, cap) for n in range(1, max_degree + 1)]


@lru_cache(maxsize=64)
def skew_matrix(d: int, m: int, n: int) -> Matrix:
    """Matrix of ``S_n`` from Hochschild to alternating degree-n cochains."""
    src = _space(d, m, n)
    tgt = CochainSpace(d, m, n, alternating=True)
    b = OperatorBuilder(src, tgt)
    perms = [(p, perm_sign(p)) for p in permutations(range(n))]
    for pos, I in enumerate(tgt.tuples):
        for p, s in perms:
            b.add(pos, tuple(I[k] for k in p), s)
    return b.matrix()


def skew_triple_matrix(d: int, m: int, n: int, slot_signs: tuple = (1, 1, 1)) -> Matrix:
    """Matrix of ``(S_n, S_{n-1}, S_{n-1})`` between combined spaces, each slot scaled by a sign."""
    if n < 1:
        raise DimensionError("combined cochains start in degree 1")
    if n == 1:
        return skew_matrix(d, m, 1) * slot_signs[0]
    s_low = skew_matrix(d, m, n - 1)
    return Matrix.block_diag([skew_matrix(d, m, n) * slot_signs[0], s_low * slot_signs[1], s_low * slot_signs[2]])


def skew_cochain(f: AssCochain) -> LieCochain:
    return LieCochain.from_vector(f.degree, f.dim, f.target_dim, skew_matrix(f.dim, f.target_dim, f.degree) @ f.to_vector())


def skew_triple(c: RBAssDerCochain) -> RBLieDerCochain:
    """Componentwise skew-symmetrization of a combined cochain."""
    return RBLieDerCochain(*(skew_cochain(p) for p in c.parts))


def _slot_sizes(d, m, n, alternating):
    def plain(k):
        return CochainSpace(d, m, k, alternating).dim

    return [plain(n)] if n == 1 else [plain(n), plain(n - 1), plain(n - 1)]


def skew_chain_signs(pair: RBAssDerPair, rep: RBAssDerRep, n: int, lie_pair=None, lie_rep=None) -> tuple | None:
    """Per-slot signs relating ``D_Lie (S, S, S)`` and ``(S, S, S) D_Ass`` at input degree n.

    Returns the tuple of signs on the degree-(n+1) output slots, or ``None``
    if some slot is not a signed multiple (which would mean the skew maps
    fail to be chain maps at all).  Slots where both sides vanish get +1.
    """
    from .lie_cohomology import assemble_matrix
    from .structures import skew_symmetrize_algebra, skew_symmetrize_bimodule

    lp = lie_pair or skew_symmetrize_algebra(pair)
    lr = lie_rep or skew_symmetrize_bimodule(rep, pair)
    d, m = pair.dim, rep.space_dim
    lhs = assemble_matrix(lp, lr, n) @ skew_triple_matrix(d, m, n)
    rhs = skew_triple_matrix(d, m, n + 1) @ assemble_ass_matrix(pair, rep, n)
    signs = []
    start = 0
    for size in _slot_sizes(d, m, n + 1, True):
        rows = range(start, start + size)
        a = Matrix([lhs.row(i) for i in rows], lhs.ncols)
        b = Matrix([rhs.row(i) for i in rows], rhs.ncols)
        if a == b:
            signs.append(1)
        elif a == -b:
            signs.append(-1)
        else:
            return None
        start += size
    return tuple(signs)


def chain_skew_slot_signs(n: int) -> tuple:
    """Slot signs ``(a, b, c)`` making ``(a S_n, b S_{n-1}, c S_{n-1})`` an exact chain map.

    With ``a_1 = 1``, ``a_{n+1} = (-1)^(n+1) a_n`` and ``b_n = c_n = a_{n-1}``
    the rescaled skew maps commute with the combined differentials on the nose.
    """
    if n < 1:
        raise DimensionError("combined cochains start in degree 1")
    a = [0, 1]
    for k in range(1, n):
        a.append((-1) ** (k + 1) * a[k])
    if n == 1:
        return (a[1],)
    return (a[n], a[n - 1], a[n - 1])
