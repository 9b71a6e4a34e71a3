"""Cohomology of weighted Rota-Baxter LieDer pairs.

The Chevalley-Eilenberg differential uses the sign convention

    d f(x_1..x_{n+1}) = sum_i (-1)^(i+n) rho(x_i) f(..^x_i..)
                      + sum_{i<j} (-1)^(i+j+n+1) f([x_i,x_j], ..^x_i..^x_j..)

(1-based positions), which is ``(-1)^(n+1)`` times the textbook one.  The
combined differential on ``C^n + C^{n-1} + C^{n-1}`` is

    D(f)         = (d f, -del f, -Phi f)                       in degree 1
    D((f, g), h) = (d f, d g + (-1)^n del f, -d_R h - Phi f)  in degree n >= 2

where ``del`` twists by the derivations, ``Phi`` is the chain map into the
complex of the induced pair and ``d_R`` is the differential of that pair.
Every operator is available both as an assembled matrix (``*_matrix``) and
as a function on cochains.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache
from itertools import combinations

from .cochains import CochainSpace, LieCochain, OperatorBuilder, _CombinedCochain, block_matrix, combined_dim, expand_args
from .linalg import DimensionError, InconsistencyError, Matrix, Q, kernel_basis, quotient_dim, rank
from .structures import LieRep, RBLieDerPair, RBLieDerRep, induced_rep

__all__ = [
    "LIE_DEGREE_CAP",
    "LieCochain",
    "RBLieDerCochain",
    "CohomologyReport",
    "ce_matrix",
    "partial_matrix",
    "phi_matrix",
    "dr_matrix",
    "assemble_matrix",
    "ce_diff",
    "partial_op",
    "phi_map",
    "dr_diff",
    "big_D",
    "cohomology",
    "cohomology_table",
    "h1_characterization",
]

LIE_DEGREE_CAP = 4


class RBLieDerCochain(_CombinedCochain):
    """``f`` in degree 1; ``(f, g, h)`` with ``g, h`` one degree lower otherwise."""

    __slots__ = ()
    part_cls = LieCochain


@dataclass(frozen=True)
class CohomologyReport:
    degree: int
    dim_cochains: int
    dim_cocycles: int
    dim_coboundaries: int
    dim_H: int

    def as_dict(self) -> dict:
        return asdict(self)


def _space(d, m, n):
    return CochainSpace(d, m, n, alternating=True)


@lru_cache(maxsize=256)
def ce_matrix(rep: LieRep, n: int) -> Matrix:
    """Matrix of the Chevalley-Eilenberg differential ``C^n -> C^{n+1}``."""
    L = rep.algebra
    d, m = L.dim, rep.space_dim
    src, tgt = _space(d, m, n), _space(d, m, n + 1)
    b = OperatorBuilder(src, tgt)
    for pos, I in enumerate(tgt.tuples):
        for p in range(n + 1):
            # 1-based position i = p+1, sign (-1)^(i+n)
            b.add(pos, I[:p] + I[p + 1:], (-1) ** (p + 1 + n), rep.rho[I[p]])
        for p, q in combinations(range(n + 1), 2):
            sign = (-1) ** (p + q + n + 1)
            rest = I[:p] + I[p + 1:q] + I[q + 1:]
            for k, c in L.terms(I[p], I[q]):
                b.add(pos, (k,) + rest, sign * c)
    return b.matrix()


@lru_cache(maxsize=256)
def partial_matrix(delta: Matrix, delta_V: Matrix, n: int) -> Matrix:
    """Matrix of ``del f = sum_i f(.., delta x_i, ..) - delta_V f`` on ``C^n``."""
    if n < 1:
        raise DimensionError("the derivation twist is defined from degree 1")
    d, m = delta.nrows, delta_V.nrows
    sp = _space(d, m, n)
    b = OperatorBuilder(sp, sp)
    cols = [delta.column_items(j) for j in range(d)]
    minus_dV = -delta_V
    for pos, I in enumerate(sp.tuples):
        for p in range(n):
            for k, c in cols[I[p]]:
                b.add(pos, I[:p] + (k,) + I[p + 1:], c)
        b.add(pos, I, 1, minus_dV)
    return b.matrix()


def _phi_builder(space_cls_space, R: Matrix, T: Matrix, weight) -> Matrix:
    sp = space_cls_space
    n = sp.n
    lam = Q(weight)
    b = OperatorBuilder(sp, sp)
    if n == 0:
        for pos in range(len(sp.tuples)):
            b.add(pos, (), 1)
        return b.matrix()
    Rcols = [R.column_items(j) for j in range(R.ncols)]
    minus_T = -T
    for pos, I in enumerate(sp.tuples):
        units = [[(i, 1)] for i in I]
        for k in range(n + 1):
            for S in combinations(range(n), k):
                args = [Rcols[I[p]] if p in S else units[p] for p in range(n)]
                if k == n:
                    for J, c in expand_args(args):
                        b.add(pos, J, c)
                else:
                    coef = lam ** (n - k - 1)
                    if not coef:
                        continue
                    for J, c in expand_args(args):
                        b.add(pos, J, coef * c, minus_T)
    return b.matrix()


@lru_cache(maxsize=256)
def phi_matrix(pair: RBLieDerPair, rep: RBLieDerRep, n: int) -> Matrix:
    """Matrix of ``Phi^n``; the identity in degree 0.

    ``Phi(f)(x..) = f(Rx_1..Rx_n) - sum_{k<n} lambda^(n-k-1) sum_{|S|=k} T f(R at positions S)``.
    """
    return _phi_builder(_space(pair.dim, rep.space_dim, n), pair.R, rep.T, pair.weight)


@lru_cache(maxsize=64)
def _induced(pair: RBLieDerPair, rep: RBLieDerRep) -> LieRep:
    return induced_rep(pair, rep).rep


def dr_matrix(pair: RBLieDerPair, rep: RBLieDerRep, n: int) -> Matrix:
    """Differential of the induced bracket with coefficients in ``rho~``."""
    return ce_matrix(_induced(pair, rep), n)


def _check_degree(n: int, cap: int):
    if n < 1:
        raise DimensionError("combined cochains start in degree 1")
    if n > cap:
        raise DimensionError(f"degree {n} above the cap {cap}")


def assemble_matrix(pair: RBLieDerPair, rep: RBLieDerRep, n: int, cap: int = LIE_DEGREE_CAP) -> Matrix:
    """Matrix of the combined differential from degree n to n+1.

    Columns follow the order (f, g, h), tuples lexicographic, target
    coordinate innermost; rows the same in degree n+1.
    """
    _check_degree(n, cap)
    return _assemble(pair, rep, n)


@lru_cache(maxsize=256)
def _assemble(pair, rep, n):
    d, m = pair.dim, rep.space_dim
    lr = rep.rep
    dn = ce_matrix(lr, n)
    dl = partial_matrix(pair.delta, rep.delta_V, n)
    ph = phi_matrix(pair, rep, n)
    if n == 1:
        return Matrix.vstack([dn, -dl, -ph])
    sizes_in = [_space(d, m, n).dim, _space(d, m, n - 1).dim, _space(d, m, n - 1).dim]
    sizes_out = [_space(d, m, n + 1).dim, sizes_in[0], sizes_in[0]]
    sign = (-1) ** n
    return block_matrix(
        [
            [dn, None, None],
            [dl * sign, ce_matrix(lr, n - 1), None],
            [-ph, None, -dr_matrix(pair, rep, n - 1)],
        ],
        sizes_out,
        sizes_in,
    )


def _apply(mat: Matrix, c: LieCochain, degree: int) -> LieCochain:
    return LieCochain.from_vector(degree, c.dim, c.target_dim, mat @ c.to_vector())


def _fits(c, d, m):
    if (c.dim, c.target_dim) != (d, m):
        raise DimensionError(f"cochain on ({c.dim} -> {c.target_dim}) does not fit ({d} -> {m})")


def ce_diff(rep: LieRep, f: LieCochain) -> LieCochain:
    _fits(f, rep.algebra.dim, rep.space_dim)
    return _apply(ce_matrix(rep, f.degree), f, f.degree + 1)


def partial_op(delta: Matrix, delta_V: Matrix, f: LieCochain) -> LieCochain:
    _fits(f, delta.nrows, delta_V.nrows)
    return _apply(partial_matrix(delta, delta_V, f.degree), f, f.degree)


def phi_map(pair: RBLieDerPair, rep: RBLieDerRep, f: LieCochain) -> LieCochain:
    _fits(f, pair.dim, rep.space_dim)
    return _apply(phi_matrix(pair, rep, f.degree), f, f.degree)


def dr_diff(pair: RBLieDerPair, rep: RBLieDerRep, h: LieCochain) -> LieCochain:
    _fits(h, pair.dim, rep.space_dim)
    return _apply(dr_matrix(pair, rep, h.degree), h, h.degree + 1)


def big_D(pair: RBLieDerPair, rep: RBLieDerRep, c: RBLieDerCochain, cap: int = LIE_DEGREE_CAP) -> RBLieDerCochain:
    if not isinstance(c, RBLieDerCochain):
        raise TypeError("big_D acts on RBLieDerCochain values")
    _fits(c.f, pair.dim, rep.space_dim)
    mat = assemble_matrix(pair, rep, c.degree, cap)
    return RBLieDerCochain.from_vector(c.degree + 1, c.dim, c.target_dim, mat @ c.to_vector())


def cohomology(pair: RBLieDerPair, rep: RBLieDerRep, n: int, cap: int = LIE_DEGREE_CAP) -> CohomologyReport:
    """Dimensions of cochains, cocycles, coboundaries and cohomology in degree n."""
    _check_degree(n, cap)
    d, m = pair.dim, rep.space_dim
    total = combined_dim(d, m, n, True)
    z = total - rank(_assemble(pair, rep, n))
    b = rank(_assemble(pair, rep, n - 1)) if n > 1 else 0
    return CohomologyReport(n, total, z, b, quotient_dim(z, b))


def cohomology_table(pair: RBLieDerPair, rep: RBLieDerRep, max_degree: int, cap: int = LIE_DEGREE_CAP) -> list:
    return [cohomology(pair, rep, n, cap) for n in range(1, max_degree + 1)]


def _intertwiner_rows(A: Matrix, B: Matrix, d: int, m: int) -> Matrix:
    """Rows expressing ``f A - B f = 0`` for an unknown ``f: K^d -> K^m``.

    The unknown is laid out like a degree-1 cochain: entry ``f[a, j]`` at
    position ``j*m + a``.
    """
    entries = {}
    for j in range(d):
        for a in range(m):
            row = j * m + a
            for k, c in A.column_items(j):
                entries[(row, k * m + a)] = entries.get((row, k * m + a), 0) + c
            for b, c in B.row_items(a):
                entries[(row, j * m + b)] = entries.get((row, j * m + b), 0) - c
    return Matrix.from_entries(d * m, d * m, entries)


def h1_characterization(pair: RBLieDerPair, rep: RBLieDerRep) -> list[Matrix]:
    """Basis of ``{f : d f = 0, f delta = delta_V f, f R = T f}`` as linear maps.

    Its size is checked against the degree-1 cohomology computed from the
    combined differential; a mismatch raises :class:`InconsistencyError`.
    """
    d, m = pair.dim, rep.space_dim
    system = Matrix.vstack(
        [
            ce_matrix(rep.rep, 1),
            _intertwiner_rows(pair.delta, rep.delta_V, d, m),
            _intertwiner_rows(pair.R, rep.T, d, m),
        ]
    )
    basis = [LieCochain.from_vector(1, d, m, v).as_map() for v in kernel_basis(system)]
    expected = cohomology(pair, rep, 1).dim_H
    if len(basis) != expected:
        raise InconsistencyError(f"intertwiner description gives {len(basis)}, combined complex gives {expected}")
    return basis
