import sys
from functools import lru_cache
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from rbder.linalg import Matrix  # noqa: E402
from rbder.structures import (  # noqa: E402
    AssBimodule,
    AssocAlgebra,
    LieAlgebra,
    LieRep,
    RBAssDerPair,
    RBAssDerRep,
    RBLieDerPair,
    RBLieDerRep,
)


def zeros(n):
    return [[0] * n for _ in range(n)]


def diag(*xs):
    return [[xs[i] if i == j else 0 for j in range(len(xs))] for i in range(len(xs))]


B2 = [(0, 1, 1, 1)]
SL2 = [(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)]  # basis h, e, f
M2 = [(2 * i + j, 2 * j + l, 2 * i + l, 1) for i in range(2) for j in range(2) for l in range(2)]
UNITS = [[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 1]]]

# raw data: (dim, quads, delta, R, weight, rep) with rep None for adjoint
LIE_RAW = {
    "b2_neg_identity": (2, B2, diag(0, 1), diag(-1, -1), 1, None),
    "b2_rb_diag": (2, B2, diag(0, 1), diag(0, -1), 1, None),
    "b2_zero": (2, B2, zeros(2), zeros(2), 0, None),
    "sl2_zero": (3, SL2, zeros(3), zeros(3), 0, None),
    "abelian2_zero": (2, [], zeros(2), zeros(2), 0, None),
    # one-dimensional module: rho(e1) = 1, rho(e2) = 0, delta_V = 2, T = -1
    "b2_rb_diag_character": (2, B2, diag(0, 1), diag(0, -1), 1, dict(acts=[[[1]], [[0]]], delta_V=[[2]], T=[[-1]])),
}

ASS_RAW = {
    "m2_adjoint": (4, M2, diag(0, 1, -1, 0), diag(-1, -1, 0, -1), 1, None),
    "m2_natural": (
        4,
        M2,
        diag(0, 1, -1, 0),
        diag(-1, -1, 0, -1),
        1,
        dict(left=UNITS, right=[zeros(2)] * 4, delta_V=[[1, 0], [0, 0]], T=[[-1, 0], [0, -1]]),
    ),
    "dim2_neg_identity": (2, [(0, 0, 0, 1), (0, 1, 1, 1)], zeros(2), diag(-1, -1), 1, None),
    "idempotent1_zero": (1, [(0, 0, 0, 1)], zeros(1), zeros(1), 0, None),
}

# the acceptance corpus for the differential checks
LIE_CORE = ("b2_neg_identity", "sl2_zero", "abelian2_zero")


@lru_cache(maxsize=None)
def lie_case(name):
    d, quads, delta, R, lam, rep = LIE_RAW[name]
    pair = RBLieDerPair(LieAlgebra(d, quads), Matrix(delta), Matrix(R), lam)
    if rep is None:
        lrep = pair.adjoint_rep()
    else:
        m = len(rep["delta_V"])
        lrep = RBLieDerRep(LieRep(pair.algebra, [Matrix(a) for a in rep["acts"]], m), Matrix(rep["delta_V"]), Matrix(rep["T"]))
    return pair, lrep


@lru_cache(maxsize=None)
def lie_oracle(name):
    d, quads, delta, R, lam, rep = LIE_RAW[name]
    T = oracles.table_from_quads(d, quads, True)
    if rep is None:
        acts = [[[T[i][b][a] for b in range(d)] for a in range(d)] for i in range(d)]
        m, dV, Top = d, oracles.mat(delta), oracles.mat(R)
    else:
        acts = [oracles.mat(a) for a in rep["acts"]]
        m, dV, Top = len(rep["delta_V"]), oracles.mat(rep["delta_V"]), oracles.mat(rep["T"])
    return oracles.Complex(True, T, oracles.mat(delta), oracles.mat(R), lam, m, dV, Top, acts=acts)


@lru_cache(maxsize=None)
def ass_case(name):
    d, quads, delta, R, lam, rep = ASS_RAW[name]
    pair = RBAssDerPair(AssocAlgebra(d, quads), Matrix(delta), Matrix(R), lam)
    if rep is None:
        arep = pair.adjoint_rep()
    else:
        m = len(rep["delta_V"])
        bm = AssBimodule(pair.algebra, [Matrix(a) for a in rep["left"]], [Matrix(a) for a in rep["right"]], m)
        arep = RBAssDerRep(bm, Matrix(rep["delta_V"]), Matrix(rep["T"]))
    return pair, arep


@lru_cache(maxsize=None)
def ass_oracle(name):
    d, quads, delta, R, lam, rep = ASS_RAW[name]
    T = oracles.table_from_quads(d, quads, False)
    if rep is None:
        left = [[[T[i][b][a] for b in range(d)] for a in range(d)] for i in range(d)]
        right = [[[T[b][i][a] for b in range(d)] for a in range(d)] for i in range(d)]
        m, dV, Top = d, oracles.mat(delta), oracles.mat(R)
    else:
        left = [oracles.mat(a) for a in rep["left"]]
        right = [oracles.mat(a) for a in rep["right"]]
        m, dV, Top = len(rep["delta_V"]), oracles.mat(rep["delta_V"]), oracles.mat(rep["T"])
    return oracles.Complex(False, T, oracles.mat(delta), oracles.mat(R), lam, m, dV, Top, left=left, right=right)


def to_sympy(M: Matrix):
    import sympy

    return sympy.Matrix(M.nrows, M.ncols, lambda i, j: sympy.Rational(M[i, j].numerator, M[i, j].denominator))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
