"""Truncated formal deformations of weighted Rota-Baxter LieDer and AssDer pairs.

A deformation of order N stores the correction terms ``gamma_1..gamma_N``
(brackets or products as degree-2 cochains with values in the algebra),
``delta_1..delta_N`` and ``R_1..R_N``; the order-0 terms are the base pair.

Equivalences ``phi_t = id + phi_1 t + ...`` act by conjugation

    gamma'(x, y) = phi^-1 gamma(phi x, phi y),   delta' = phi^-1 delta phi,   R' = phi^-1 R phi

so ``phi_t`` is a morphism from the conjugated deformation to the original.
At first order the infinitesimals then differ by the degree-1 combined
differential: ``inf(conjugated) - inf(original) = D(phi_1)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from types import SimpleNamespace
from typing import Sequence

from .ass_cohomology import RBAssDerCochain, assemble_ass_matrix
from .cochains import AssCochain, LieCochain
from .lie_cohomology import RBLieDerCochain, assemble_matrix
from .linalg import DimensionError, InconsistencyError, Matrix, kernel_basis, solve
from .structures import RBAssDerPair, RBLieDerPair, Verdict
from .structures.algebras import add_vectors, scale_vector, unit_vector

__all__ = [
    "DeformationError",
    "FormalDeformationLie",
    "FormalDeformationAss",
    "EquivalenceData",
    "OrderReport",
    "ProbeResult",
    "check_order",
    "check_order_ass",
    "infinitesimal",
    "order_term",
    "is_two_cocycle",
    "apply_equivalence",
    "check_equivalence",
    "cohomologous_test",
    "rigidity_probe",
    "sample_order1_deformation",
]

_ZERO = Fraction(0)


class DeformationError(ValueError):
    """Deformation data that does not satisfy a stated precondition."""


_LIE = SimpleNamespace(
    name="lie", pair=RBLieDerPair, cochain=LieCochain, combined=RBLieDerCochain, assemble=assemble_matrix, alternating=True
)
_ASS = SimpleNamespace(
    name="assoc", pair=RBAssDerPair, cochain=AssCochain, combined=RBAssDerCochain, assemble=assemble_ass_matrix, alternating=False
)


def _flavor_of(pair):
    if isinstance(pair, RBLieDerPair):
        return _LIE
    if isinstance(pair, RBAssDerPair):
        return _ASS
    raise TypeError(f"not a weighted Rota-Baxter pair: {type(pair).__name__}")


class _FormalDeformation:
    flavor = _LIE
    __slots__ = ("base", "order", "gammas", "deltas", "Rs")

    def __init__(self, base, gammas: Sequence = (), deltas: Sequence = (), Rs: Sequence = (), order: int = 2):
        if not isinstance(base, self.flavor.pair):
            raise TypeError(f"base must be a {self.flavor.pair.__name__}")
        if order < 0:
            raise DeformationError("negative truncation order")
        n = base.dim
        for name, seq in (("gammas", gammas), ("deltas", deltas), ("Rs", Rs)):
            if len(seq) > order:
                raise DeformationError(f"{len(seq)} {name} for truncation order {order}")
        cc = self.flavor.cochain
        gs = []
        for g in gammas:
            if not isinstance(g, cc) or (g.degree, g.dim, g.target_dim) != (2, n, n):
                raise DimensionError(f"gamma terms must be degree-2 {cc.__name__} values on dimension {n}")
            gs.append(g)
        gs += [cc.zero(2, n, n)] * (order - len(gs))
        mats = []
        for seq in (deltas, Rs):
            ms = []
            for m in seq:
                if m.shape != (n, n):
                    raise DimensionError(f"map of shape {m.shape} on a dimension-{n} algebra")
                ms.append(m)
            ms += [Matrix.zeros(n, n)] * (order - len(ms))
            mats.append(tuple(ms))
        self.base, self.order = base, order
        self.gammas, self.deltas, self.Rs = tuple(gs), mats[0], mats[1]

    @classmethod
    def trivial(cls, base, order: int = 2):
        return cls(base, order=order)

    @property
    def dim(self) -> int:
        return self.base.dim

    def gamma(self, i: int):
        return self.flavor.cochain.from_algebra(self.base.algebra) if i == 0 else self.gammas[i - 1]

    def delta(self, i: int) -> Matrix:
        return self.base.delta if i == 0 else self.deltas[i - 1]

    def R(self, i: int) -> Matrix:
        return self.base.R if i == 0 else self.Rs[i - 1]

    def is_trivial(self) -> bool:
        return all(g.is_zero() for g in self.gammas) and all(m.is_zero() for m in self.deltas + self.Rs)

    def truncate(self, order: int):
        return type(self)(self.base, self.gammas[:order], self.deltas[:order], self.Rs[:order], order)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.base, self.order, self.gammas, self.deltas, self.Rs) == (
            other.base,
            other.order,
            other.gammas,
            other.deltas,
            other.Rs,
        )

    def __hash__(self):
        return hash((type(self).__name__, self.base, self.order, self.gammas, self.deltas, self.Rs))

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, order={self.order})"


class FormalDeformationLie(_FormalDeformation):
    """Deformation ``(gamma_t, delta_t, R_t)`` of an :class:`RBLieDerPair`."""

    __slots__ = ()
    flavor = _LIE


class FormalDeformationAss(_FormalDeformation):
    """Deformation ``(mu_t, delta_t, R_t)`` of an :class:`RBAssDerPair`; ``mus`` aliases ``gammas``."""

    __slots__ = ()
    flavor = _ASS

    def __init__(self, base, mus: Sequence = (), deltas: Sequence = (), Rs: Sequence = (), order: int = 2):
        super().__init__(base, mus, deltas, Rs, order)

    @property
    def mus(self):
        return self.gammas

    def truncate(self, order: int):
        return type(self)(self.base, self.gammas[:order], self.deltas[:order], self.Rs[:order], order)


def _deformation_cls(pair):
    return FormalDeformationLie if isinstance(pair, RBLieDerPair) else FormalDeformationAss


@dataclass(frozen=True)
class EquivalenceData:
    """Formal map ``phi_t = id + sum_i phis[i-1] t^i``."""

    phis: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "phis", tuple(self.phis))
        shapes = {p.shape for p in self.phis}
        if len(shapes) > 1 or any(r != c for r, c in shapes):
            raise DimensionError("equivalence terms must be square maps of one size")

    @classmethod
    def identity(cls, dim: int, order: int) -> "EquivalenceData":
        return cls(tuple(Matrix.zeros(dim, dim) for _ in range(order)))

    @classmethod
    def single(cls, phi: Matrix, k: int, order: int) -> "EquivalenceData":
        """``id + phi t^k`` truncated at ``order``."""
        n = phi.nrows
        return cls(tuple(phi if i == k else Matrix.zeros(n, n) for i in range(1, order + 1)))

    def term(self, i: int, dim: int) -> Matrix:
        if i == 0:
            return Matrix.identity(dim)
        if i <= len(self.phis):
            return self.phis[i - 1]
        return Matrix.zeros(dim, dim)

    def inverse_terms(self, dim: int, order: int) -> list:
        """Terms ``psi_0..psi_order`` of the inverse series."""
        psi = [Matrix.identity(dim)]
        for n in range(1, order + 1):
            acc = Matrix.zeros(dim, dim)
            for k in range(1, n + 1):
                acc = acc + self.term(k, dim) @ psi[n - k]
            psi.append(-acc)
        return psi

    def compose(self, other: "EquivalenceData", dim: int, order: int) -> "EquivalenceData":
        """The series ``self o other`` truncated at ``order``."""
        out = []
        for n in range(1, order + 1):
            acc = Matrix.zeros(dim, dim)
            for i in range(n + 1):
                acc = acc + self.term(i, dim) @ other.term(n - i, dim)
            out.append(acc)
        return EquivalenceData(tuple(out))

    def is_identity(self) -> bool:
        return all(p.is_zero() for p in self.phis)


@dataclass(frozen=True)
class OrderReport:
    order: int
    clean: bool
    failures: tuple = ()
    commutes: bool = True
    commute_residual: object = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return self.clean


class _Series:
    """Order-limited evaluation helpers over a deformation."""

    def __init__(self, dfm: _FormalDeformation):
        self.dfm = dfm
        self.n = dfm.dim
        self._g = [dfm.gamma(i) for i in range(dfm.order + 1)]

    def g(self, i, u, v):
        if i == 0:
            return self.dfm.base.algebra.mul(u, v)
        return self._g[i](u, v)

    def e(self, i):
        return unit_vector(self.n, i)


def _pairs(dfm, n):
    if dfm.flavor.alternating:
        return combinations(range(n), 2)
    return product(range(n), repeat=2)


def _triples(dfm, n):
    if dfm.flavor.alternating:
        return combinations(range(n), 3)
    return product(range(n), repeat=3)


def _compositions(n, parts):
    """All ordered tuples of ``parts`` nonnegative ints summing to ``n``."""
    if parts == 1:
        yield (n,)
        return
    for a in range(n + 1):
        for rest in _compositions(n - a, parts - 1):
            yield (a,) + rest


def _order_failures(dfm, n):
    s = _Series(dfm)
    dim = dfm.dim
    lam = dfm.base.weight
    fails = []
    # algebra identity: Jacobi (cyclic) or associativity
    for i, j, k in _triples(dfm, dim):
        x, y, z = s.e(i), s.e(j), s.e(k)
        res = [_ZERO] * dim
        for a, b in _compositions(n, 2):
            if dfm.flavor.alternating:
                terms = (s.g(a, x, s.g(b, y, z)), s.g(a, y, s.g(b, z, x)), s.g(a, z, s.g(b, x, y)))
            else:
                terms = (s.g(a, s.g(b, x, y), z), scale_vector(-1, s.g(a, x, s.g(b, y, z))))
            res = add_vectors(res, *terms)
        if any(res):
            fails.append(Verdict(f"order_{n}", False, "jacobi" if dfm.flavor.alternating else "associativity", (i, j, k), tuple(res)))
            break
    # derivation
    for i, j in _pairs(dfm, dim):
        x, y = s.e(i), s.e(j)
        res = [_ZERO] * dim
        for a, b in _compositions(n, 2):
            da = dfm.delta(a)
            res = add_vectors(
                res,
                da @ s.g(b, x, y),
                scale_vector(-1, s.g(b, da @ x, y)),
                scale_vector(-1, s.g(b, x, da @ y)),
            )
        if any(res):
            fails.append(Verdict(f"order_{n}", False, "derivation", (i, j), tuple(res)))
            break
    # Rota-Baxter: coefficient of t^n in gamma(Rx, Ry) - R(gamma(Rx, y) + gamma(x, Ry) + lam gamma(x, y))
    for i, j in _pairs(dfm, dim):
        x, y = s.e(i), s.e(j)
        res = [_ZERO] * dim
        for a, b, c in _compositions(n, 3):
            Ra = dfm.R(a)
            res = add_vectors(
                res,
                s.g(a, dfm.R(b) @ x, dfm.R(c) @ y),
                scale_vector(-1, Ra @ add_vectors(s.g(b, dfm.R(c) @ x, y), s.g(b, x, dfm.R(c) @ y))),
            )
        for a, b in _compositions(n, 2):
            res = add_vectors(res, scale_vector(-lam, dfm.R(a) @ s.g(b, x, y)))
        if any(res):
            fails.append(Verdict(f"order_{n}", False, "rota_baxter", (i, j), tuple(res)))
            break
    return fails


def _commute_residual(dfm, n) -> Matrix:
    acc = Matrix.zeros(dfm.dim, dfm.dim)
    for a, b in _compositions(n, 2):
        acc = acc + dfm.R(a) @ dfm.delta(b) - dfm.delta(a) @ dfm.R(b)
    return acc


def check_order(dfm: _FormalDeformation, n: int) -> OrderReport:
    """Residuals of the order-n deformation equations on all basis tuples.

    ``clean`` covers the algebra identity, the derivation rule and the
    Rota-Baxter identity; the commutation of ``R_t`` with ``delta_t`` is
    reported separately in ``commutes``.
    """
    if not 0 <= n <= dfm.order:
        raise DeformationError(f"order {n} outside 0..{dfm.order}")
    fails = _order_failures(dfm, n)
    comm = _commute_residual(dfm, n)
    return OrderReport(n, not fails, tuple(fails), comm.is_zero(), None if comm.is_zero() else comm)


def check_order_ass(dfm: FormalDeformationAss, n: int) -> OrderReport:
    if not isinstance(dfm, FormalDeformationAss):
        raise TypeError("check_order_ass needs a FormalDeformationAss")
    return check_order(dfm, n)


def order_term(dfm: _FormalDeformation, k: int):
    """``(gamma_k, delta_k, R_k)`` packaged as a degree-2 combined cochain."""
    if not 1 <= k <= dfm.order:
        raise DeformationError(f"order {k} outside 1..{dfm.order}")
    cc = dfm.flavor.cochain
    return dfm.flavor.combined(dfm.gammas[k - 1], cc.from_map(dfm.deltas[k - 1]), cc.from_map(dfm.Rs[k - 1]))


def infinitesimal(dfm: _FormalDeformation):
    """The linear term as a degree-2 combined cochain over the adjoint representation."""
    if dfm.order < 1:
        raise DeformationError("an order-0 deformation has no linear term")
    for n in (0, 1):
        rep = check_order(dfm, n)
        if not rep.clean:
            raise DeformationError(f"deformation not clean at order {n}: {rep.failures[0].describe()}")
    return order_term(dfm, 1)


def _adjoint_D(pair, n):
    return _flavor_of(pair).assemble(pair, pair.adjoint_rep(), n)


def is_two_cocycle(pair, c) -> Verdict:
    """Whether the combined differential over the adjoint representation kills ``c``."""
    fl = _flavor_of(pair)
    if not isinstance(c, fl.combined) or c.degree != 2:
        raise TypeError(f"expected a degree-2 {fl.combined.__name__}")
    out = fl.combined.from_vector(3, pair.dim, pair.dim, _adjoint_D(pair, 2) @ c.to_vector())
    for slot, part in zip("fgh", out.parts):
        if not part.is_zero():
            t = min(part.values)
            return Verdict("two_cocycle", False, f"slot {slot}", t, part.values[t])
    return Verdict("two_cocycle", True)


def _as_equivalence(eq, dim, order) -> EquivalenceData:
    if isinstance(eq, EquivalenceData):
        return eq
    return EquivalenceData(tuple(eq))


def apply_equivalence(dfm: _FormalDeformation, eq) -> _FormalDeformation:
    """Conjugate by ``phi_t``: ``gamma' = phi^-1 gamma(phi., phi.)``, ``delta' = phi^-1 delta phi``, ``R' = phi^-1 R phi``."""
    N, n = dfm.order, dfm.dim
    eq = _as_equivalence(eq, n, N)
    if eq.phis and eq.phis[0].shape != (n, n):
        raise DimensionError("equivalence acts on a different dimension")
    phi = [eq.term(i, n) for i in range(N + 1)]
    psi = eq.inverse_terms(n, N)
    s = _Series(dfm)
    # phi_k applied to basis vectors, computed once
    phi_cols = [[p.column(j) for j in range(n)] for p in phi]
    gammas, deltas, Rs = [], [], []
    cc = dfm.flavor.cochain
    tuples = list(_pairs(dfm, n))
    for order in range(1, N + 1):
        vals = {}
        for i, j in tuples:
            acc = [_ZERO] * n
            for a, b, c, e in _compositions(order, 4):
                if not psi[a].nnz() or not phi[c].nnz() or not phi[e].nnz():
                    continue
                acc = add_vectors(acc, psi[a] @ s.g(b, phi_cols[c][i], phi_cols[e][j]))
            if any(acc):
                vals[(i, j)] = tuple(acc)
        gammas.append(cc(2, n, n, vals))
        dacc = Matrix.zeros(n, n)
        racc = Matrix.zeros(n, n)
        for a, b, c in _compositions(order, 3):
            dacc = dacc + psi[a] @ dfm.delta(b) @ phi[c]
            racc = racc + psi[a] @ dfm.R(b) @ phi[c]
        deltas.append(dacc)
        Rs.append(racc)
    return type(dfm)(dfm.base, gammas, deltas, Rs, N)


def check_equivalence(defA: _FormalDeformation, defB: _FormalDeformation, eq, n: int) -> Verdict:
    """Order-n identities saying ``phi_t`` is a morphism from ``defB`` to ``defA``.

    ``sum phi_i gammaB_j(x,y) = sum gammaA_i(phi_j x, phi_k y)``,
    ``sum phi_i deltaB_j = sum deltaA_i phi_j`` and the same for ``R``.
    """
    if type(defA) is not type(defB) or defA.base != defB.base:
        raise DeformationError("deformations of different pairs")
    if not 0 <= n <= min(defA.order, defB.order):
        raise DeformationError(f"order {n} out of range")
    dim = defA.dim
    eq = _as_equivalence(eq, dim, n)
    phi = [eq.term(i, dim) for i in range(n + 1)]
    sA, sB = _Series(defA), _Series(defB)
    for i, j in _pairs(defA, dim):
        x, y = unit_vector(dim, i), unit_vector(dim, j)
        res = [_ZERO] * dim
        for a, b in _compositions(n, 2):
            res = add_vectors(res, phi[a] @ sB.g(b, x, y))
        for a, b, c in _compositions(n, 3):
            res = add_vectors(res, scale_vector(-1, sA.g(a, phi[b] @ x, phi[c] @ y)))
        if any(res):
            return Verdict("equivalence", False, "bracket", (i, j), tuple(res))
    for name, getA, getB in (("delta", defA.delta, defB.delta), ("R", defA.R, defB.R)):
        acc = Matrix.zeros(dim, dim)
        for a, b in _compositions(n, 2):
            acc = acc + phi[a] @ getB(b) - getA(a) @ phi[b]
        if not acc.is_zero():
            return Verdict("equivalence", False, name, (), acc)
    return Verdict("equivalence", True)


def cohomologous_test(defA: _FormalDeformation, defB: _FormalDeformation) -> Matrix | None:
    """Some ``phi_1`` with ``inf(defB) - inf(defA) = D(phi_1)``, or ``None``."""
    if type(defA) is not type(defB) or defA.base != defB.base:
        raise DeformationError("deformations of different pairs")
    diff = infinitesimal(defB) - infinitesimal(defA)
    x = solve(_adjoint_D(defA.base, 1), diff.to_vector())
    if x is None:
        return None
    return defA.flavor.cochain.from_vector(1, defA.dim, defA.dim, x).as_map()


@dataclass
class ProbeResult:
    """Outcome of :func:`rigidity_probe`.

    ``equivalence`` conjugates the input deformation to ``final``; on an
    obstruction ``obstruction_order`` and ``obstruction`` name the first
    order whose term is a cocycle outside the coboundaries.
    """

    success: bool
    steps: list
    equivalence: EquivalenceData
    final: object
    obstruction_order: int | None = None
    obstruction: object = None


def rigidity_probe(pair, dfm: _FormalDeformation) -> ProbeResult:
    """Clear the deformation order by order with conjugations ``id + phi_k t^k``.

    At each order k the lower terms are already zero, so the order-k term is
    a 2-cocycle; if it equals ``D(x)`` for some ``x`` the conjugation by
    ``id - x t^k`` removes it.  Stops at the first term that is not a
    coboundary.
    """
    if dfm.base != pair:
        raise DeformationError("deformation is over a different pair")
    for n in range(dfm.order + 1):
        rep = check_order(dfm, n)
        if not rep.clean:
            raise DeformationError(f"deformation not clean at order {n}")
    dim, N = dfm.dim, dfm.order
    D1 = _adjoint_D(pair, 1)
    total = EquivalenceData.identity(dim, N)
    current = dfm
    steps = []
    for k in range(1, N + 1):
        c = order_term(current, k)
        if c.is_zero():
            continue
        if not is_two_cocycle(pair, c):
            raise InconsistencyError(f"order-{k} term is not a cocycle although lower orders vanish")
        x = solve(D1, c.to_vector())
        if x is None:
            return ProbeResult(False, steps, total, current, k, c)
        phi = current.flavor.cochain.from_vector(1, dim, dim, x).as_map()
        step = EquivalenceData.single(-phi, k, N)
        current = apply_equivalence(current, step)
        total = total.compose(step, dim, N)
        steps.append((k, -phi))
    return ProbeResult(current.is_trivial(), steps, total, current)


def sample_order1_deformation(pair, rng: random.Random, order: int = 2, coeffs: Sequence[int] = (-2, -1, 0, 1, 2)):
    """A deformation whose linear term is a random 2-cocycle and higher terms vanish.

    The cocycle is a random integer combination of a basis of the kernel of
    the degree-2 combined differential, so the result is clean through order 1.
    """
    fl = _flavor_of(pair)
    dim = pair.dim
    basis = kernel_basis(_adjoint_D(pair, 2))
    vec = [_ZERO] * len(basis[0]) if basis else None
    if not basis:
        return _deformation_cls(pair).trivial(pair, order)
    for b in basis:
        c = rng.choice(coeffs)
        if c:
            vec = [u + c * w for u, w in zip(vec, b)]
    cochain = fl.combined.from_vector(2, dim, dim, vec)
    return _deformation_cls(pair)(
        pair, [cochain.f], [cochain.g.as_map()], [cochain.h.as_map()], order
    )
