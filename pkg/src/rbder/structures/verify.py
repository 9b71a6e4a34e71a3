"""Axiom verifiers.

Each verifier returns a :class:`Verdict`; a failing verdict carries the
first violating basis tuple and the nonzero residual there, so failures can
be diagnosed without re-running anything.  Verdicts are truthy exactly when
the check passed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from ..linalg import DimensionError, InconsistencyError, Matrix, Q
from .algebras import AssBimodule, AssocAlgebra, LieAlgebra, LieRep, add_vectors, scale_vector, unit_vector

__all__ = [
    "Verdict",
    "StructureError",
    "check_jacobi",
    "check_associativity",
    "check_derivation",
    "check_rota_baxter",
    "check_commute",
    "check_lie_rep",
    "check_bimodule",
    "check_bider",
    "check_bider_rep",
    "check_rblieder_rep",
    "check_rbassder_rep",
    "first_failure",
]


@dataclass(frozen=True)
class Verdict:
    check: str
    ok: bool
    axiom: str = ""
    witness: tuple = ()
    residual: object = None
    note: str = field(default="", compare=False)

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return f"{self.check}: ok"
        what = f" [{self.axiom}]" if self.axiom else ""
        return f"{self.check}{what}: FAILED at {self.witness}, residual {_fmt_residual(self.residual)}"


def _fmt_residual(r) -> str:
    if r is None:
        return "-"
    if isinstance(r, Matrix):
        return repr(r)
    return "(" + ", ".join(str(x) for x in r) + ")"


class StructureError(ValueError):
    """Raised when data fails an axiom it is required to satisfy."""

    def __init__(self, verdict: Verdict):
        super().__init__(verdict.describe())
        self.verdict = verdict


def first_failure(verdicts) -> Verdict | None:
    for v in verdicts:
        if not v:
            return v
    return None


def _ok(name):
    return Verdict(name, True)


def _fail(name, axiom, witness, residual):
    return Verdict(name, False, axiom, tuple(witness), residual)


def _square(m: Matrix, n: int, what: str):
    if m.shape != (n, n):
        raise DimensionError(f"{what} has shape {m.shape}, expected {(n, n)}")


def check_jacobi(L: LieAlgebra) -> Verdict:
    """Cyclic sum ``[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`` on every ``i<j<k``."""
    n = L.dim
    for i, j, k in combinations(range(n), 3):
        res = add_vectors(
            L.mul(unit_vector(n, i), L.table[j][k]),
            L.mul(unit_vector(n, j), L.table[k][i]),
            L.mul(unit_vector(n, k), L.table[i][j]),
        )
        if any(res):
            return _fail("jacobi", "jacobi", (i, j, k), res)
    return _ok("jacobi")


def check_associativity(A: AssocAlgebra) -> Verdict:
    n = A.dim
    for i, j, k in product(range(n), repeat=3):
        lhs = A.mul(A.table[i][j], unit_vector(n, k))
        rhs = A.mul(unit_vector(n, i), A.table[j][k])
        res = tuple(a - b for a, b in zip(lhs, rhs))
        if any(res):
            return _fail("associativity", "associativity", (i, j, k), res)
    return _ok("associativity")


def _pairs(alg):
    n = alg.dim
    if isinstance(alg, LieAlgebra):
        return combinations(range(n), 2)
    return product(range(n), repeat=2)


def check_derivation(alg, d: Matrix) -> Verdict:
    """Leibniz rule ``d(xy) = d(x)y + x d(y)`` on basis pairs."""
    n = alg.dim
    _square(d, n, "derivation")
    cols = [d.column(i) for i in range(n)]
    for i, j in _pairs(alg):
        lhs = d @ alg.table[i][j]
        rhs = add_vectors(alg.mul(cols[i], unit_vector(n, j)), alg.mul(unit_vector(n, i), cols[j]))
        res = tuple(a - b for a, b in zip(lhs, rhs))
        if any(res):
            return _fail("derivation", "leibniz", (i, j), res)
    return _ok("derivation")


def check_rota_baxter(alg, R: Matrix, weight) -> Verdict:
    """``R(x)R(y) = R(R(x)y + xR(y) + weight*xy)`` on basis pairs."""
    n = alg.dim
    _square(R, n, "Rota-Baxter operator")
    lam = Q(weight)
    cols = [R.column(i) for i in range(n)]
    for i, j in _pairs(alg):
        ei, ej = unit_vector(n, i), unit_vector(n, j)
        lhs = alg.mul(cols[i], cols[j])
        inner = add_vectors(alg.mul(cols[i], ej), alg.mul(ei, cols[j]), scale_vector(lam, alg.table[i][j]))
        rhs = R @ inner
        res = tuple(a - b for a, b in zip(lhs, rhs))
        if any(res):
            return _fail("rota_baxter", "rota_baxter", (i, j), res)
    return _ok("rota_baxter")


def check_commute(f: Matrix, g: Matrix) -> Verdict:
    if f.nrows != f.ncols or f.shape != g.shape:
        raise DimensionError(f"cannot compare {f.shape} and {g.shape} as commuting operators")
    res = f @ g - g @ f
    if res.is_zero():
        return _ok("commute")
    i, j = next((i, j) for i in range(res.nrows) for j, _ in res.row_items(i))
    return _fail("commute", "commute", (i, j), res)


def _mat_witness(name, axiom, idx, res: Matrix):
    if res.is_zero():
        return None
    return _fail(name, axiom, idx, res)


def check_lie_rep(rep: LieRep) -> Verdict:
    """``rho([x,y]) = rho(x)rho(y) - rho(y)rho(x)`` on basis pairs."""
    L, rho = rep.algebra, rep.rho
    for i, j in combinations(range(L.dim), 2):
        res = rep.act(L.table[i][j]) - (rho[i] @ rho[j] - rho[j] @ rho[i])
        bad = _mat_witness("lie_rep", "rep_law", (i, j), res)
        if bad is not None:
            return bad
    return _ok("lie_rep")


def check_bimodule(bimod: AssBimodule) -> Verdict:
    A, l, r = bimod.algebra, bimod.left, bimod.right
    for i, j in product(range(A.dim), repeat=2):
        checks = (
            ("left_module", bimod.left_of(A.table[i][j]) - l[i] @ l[j]),
            ("middle", r[j] @ l[i] - l[i] @ r[j]),
            ("right_module", r[j] @ r[i] - bimod.right_of(A.table[i][j])),
        )
        for axiom, res in checks:
            bad = _mat_witness("bimodule", axiom, (i, j), res)
            if bad is not None:
                return bad
    return _ok("bimodule")


def _composite_is_derivation(L, d1, d2) -> bool:
    return bool(check_derivation(L, d1 @ d2))


def _bider_parts(pair, delta1, delta2):
    # accepts a LieBiDerPair, or raw (algebra, delta1, delta2) for data that
    # is not (yet) known to form a pair
    if delta1 is None and delta2 is None:
        return pair.algebra, pair.delta1, pair.delta2
    if delta1 is None or delta2 is None:
        raise TypeError("pass either a pair or an algebra with both maps")
    return pair, delta1, delta2


def check_bider(pair, delta1: Matrix | None = None, delta2: Matrix | None = None) -> Verdict:
    """``[d1 x, d2 y] = [d1 y, d2 x]`` for derivations d1, d2.

    Call as ``check_bider(pair)`` or ``check_bider(algebra, d1, d2)``.
    A non-derivation raises :class:`StructureError`.  The condition is
    equivalent to ``d1 d2`` being a derivation; both are evaluated and a
    disagreement raises :class:`InconsistencyError`.
    """
    L, delta1, delta2 = _bider_parts(pair, delta1, delta2)
    for name, d in (("delta1", delta1), ("delta2", delta2)):
        v = check_derivation(L, d)
        if not v:
            raise StructureError(Verdict("bider", False, f"{name} not a derivation", v.witness, v.residual))
    n = L.dim
    c1 = [delta1.column(i) for i in range(n)]
    c2 = [delta2.column(i) for i in range(n)]
    verdict = _ok("bider")
    for i, j in combinations(range(n), 2):
        res = tuple(a - b for a, b in zip(L.mul(c1[i], c2[j]), L.mul(c1[j], c2[i])))
        if any(res):
            verdict = _fail("bider", "bider_condition", (i, j), res)
            break
    if bool(verdict) != _composite_is_derivation(L, delta1, delta2):
        raise InconsistencyError("BiDer condition and derivation property of the composite disagree")
    return verdict


def check_bider_rep(pair, rep: LieRep, phi1: Matrix, phi2: Matrix) -> Verdict:
    """Rep law plus ``rho(d1 x) phi2 = -rho(d2 x) phi1`` for every basis x.

    ``pair`` is anything with ``algebra, delta1, delta2`` attributes.
    """
    L, delta1, delta2 = pair.algebra, pair.delta1, pair.delta2
    if rep.algebra.dim != L.dim:
        raise DimensionError("representation is over an algebra of different dimension")
    m = rep.space_dim
    _square(phi1, m, "phi1")
    _square(phi2, m, "phi2")
    base = check_lie_rep(rep)
    if not base:
        return Verdict("bider_rep", False, base.axiom, base.witness, base.residual)
    for i in range(L.dim):
        res = rep.act(delta1.column(i)) @ phi2 + rep.act(delta2.column(i)) @ phi1
        bad = _mat_witness("bider_rep", "bider_rep", (i,), res)
        if bad is not None:
            return bad
    return _ok("bider_rep")


def check_rblieder_rep(pair, rep) -> Verdict:
    """The four representation axioms of a weighted Rota-Baxter LieDer pair.

    ``pair`` needs ``algebra, delta, R, weight``; ``rep`` needs
    ``rep, delta_V, T``.  The failing axiom is reported as rep0..rep3.
    """
    L, delta, R, lam = pair.algebra, pair.delta, pair.R, Q(pair.weight)
    lr, dV, T = rep.rep, rep.delta_V, rep.T
    m = lr.space_dim
    if lr.algebra.dim != L.dim:
        raise DimensionError("representation is over an algebra of different dimension")
    _square(dV, m, "delta_V")
    _square(T, m, "T")
    rho = lr.rho
    name = "rblieder_rep"
    for i, j in combinations(range(L.dim), 2):
        res = lr.act(L.table[i][j]) - (rho[i] @ rho[j] - rho[j] @ rho[i])
        bad = _mat_witness(name, "rep0", (i, j), res)
        if bad is not None:
            return bad
    for i in range(L.dim):
        res = dV @ rho[i] - lr.act(delta.column(i)) - rho[i] @ dV
        bad = _mat_witness(name, "rep1", (i,), res)
        if bad is not None:
            return bad
    for i in range(L.dim):
        rRx = lr.act(R.column(i))
        res = rRx @ T - T @ (rRx + rho[i] @ T + rho[i] * lam)
        bad = _mat_witness(name, "rep2", (i,), res)
        if bad is not None:
            return bad
    bad = _mat_witness(name, "rep3", (), T @ dV - dV @ T)
    return bad if bad is not None else _ok(name)


def check_rbassder_rep(pair, rep) -> Verdict:
    """Bimodule axioms plus the five weighted Rota-Baxter AssDer module axioms.

    The right-action Rota-Baxter axiom is ``T(m)R(x) = T(T(m)x + mR(x) + weight*mx)``.
    """
    A, delta, R, lam = pair.algebra, pair.delta, pair.R, Q(pair.weight)
    bm, dM, T = rep.bimod, rep.delta_M, rep.T
    m = bm.space_dim
    if bm.algebra.dim != A.dim:
        raise DimensionError("bimodule is over an algebra of different dimension")
    _square(dM, m, "delta_M")
    _square(T, m, "T")
    name = "rbassder_rep"
    base = check_bimodule(bm)
    if not base:
        return Verdict(name, False, base.axiom, base.witness, base.residual)
    l, r = bm.left, bm.right
    for i in range(A.dim):
        dx = delta.column(i)
        Rx = R.column(i)
        lR, rR = bm.left_of(Rx), bm.right_of(Rx)
        checks = (
            ("assder1", dM @ l[i] - bm.left_of(dx) - l[i] @ dM),
            ("assder2", dM @ r[i] - r[i] @ dM - bm.right_of(dx)),
            ("rb_left", lR @ T - T @ (lR + l[i] @ T + l[i] * lam)),
            ("rb_right", rR @ T - T @ (r[i] @ T + rR + r[i] * lam)),
        )
        for axiom, res in checks:
            bad = _mat_witness(name, axiom, (i,), res)
            if bad is not None:
                return bad
    bad = _mat_witness(name, "assder5", (), dM @ T - T @ dM)
    return bad if bad is not None else _ok(name)
