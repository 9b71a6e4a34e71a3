import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import ass_case, lie_case
from rbder import corpus
from rbder.cochains import AssCochain, LieCochain
from rbder.deformation import (
    DeformationError,
    EquivalenceData,
    FormalDeformationAss,
    FormalDeformationLie,
    apply_equivalence,
    check_equivalence,
    check_order,
    check_order_ass,
    cohomologous_test,
    infinitesimal,
    is_two_cocycle,
    order_term,
    rigidity_probe,
    sample_order1_deformation,
)
from rbder.ass_cohomology import RBAssDerCochain, assemble_ass_matrix
from rbder.lie_cohomology import RBLieDerCochain, assemble_matrix
from rbder.linalg import DimensionError, Matrix, kernel_basis
from rbder.structures import LieAlgebra, RBLieDerPair

t = oracles.t

LIE_BASES = ["b2_rb_diag", "b2_neg_identity", "b2_zero", "sl2_zero"]
ASS_BASES = ["dim2_neg_identity", "idempotent1_zero", "m2_adjoint"]


def base(name):
    return (lie_case(name) if name in LIE_BASES else ass_case(name))[0]


def cls_for(pair):
    return FormalDeformationLie if isinstance(pair, RBLieDerPair) else FormalDeformationAss


def D1(pair):
    asm = assemble_matrix if isinstance(pair, RBLieDerPair) else assemble_ass_matrix
    return asm(pair, pair.adjoint_rep(), 1)


def small_maps(d, count):
    entry = st.integers(-2, 2)
    row = st.lists(entry, min_size=d, max_size=d)
    return st.lists(st.lists(row, min_size=d, max_size=d).map(Matrix), min_size=count, max_size=count)


# ---- sympy series oracle -------------------------------------------------------


def series_of(dfm):
    d = dfm.dim
    tables = [[[list(dfm.gamma(i).at((a, b))) for b in range(d)] for a in range(d)] for i in range(dfm.order + 1)]
    PT = oracles.poly_table(tables)
    D = oracles.poly_matrix([dfm.delta(i).tolist() for i in range(dfm.order + 1)])
    R = oracles.poly_matrix([dfm.R(i).tolist() for i in range(dfm.order + 1)])
    return PT, D, R


def coeff_vec(expr, n):
    return tuple(oracles.series_coefficient(x, n) for x in expr)


def oracle_residuals(dfm, n, alternating):
    """Order-n coefficients of every deformation equation, as a dict keyed by (identity, tuple)."""
    PT, D, R = series_of(dfm)
    d, lam = dfm.dim, sympy.Rational(dfm.base.weight.numerator, dfm.base.weight.denominator)
    e = [sympy.Matrix([int(i == k) for k in range(d)]) for i in range(d)]

    def br(u, v):
        return oracles.poly_bilinear(PT, u, v)

    out = {}
    for i in range(d):
        for j in range(d):
            for k in range(d):
                x, y, z = e[i], e[j], e[k]
                if alternating:
                    expr = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
                else:
                    expr = br(br(x, y), z) - br(x, br(y, z))
                out[("identity", (i, j, k))] = coeff_vec(expr, n)
            x, y = e[i], e[j]
            out[("derivation", (i, j))] = coeff_vec(D * br(x, y) - br(D * x, y) - br(x, D * y), n)
            rb = br(R * x, R * y) - R * (br(R * x, y) + br(x, R * y) + lam * br(x, y))
            out[("rota_baxter", (i, j))] = coeff_vec(rb, n)
    comm = (R * D - D * R).applyfunc(lambda c: oracles.series_coefficient(c, n))
    return out, comm


def assert_matches_oracle(dfm, n):
    alternating = isinstance(dfm, FormalDeformationLie)
    res, comm = oracle_residuals(dfm, n, alternating)
    report = check_order(dfm, n)
    assert report.clean == all(not any(v) for v in res.values())
    assert report.commutes == comm.is_zero_matrix
    names = {"jacobi": "identity", "associativity": "identity", "derivation": "derivation", "rota_baxter": "rota_baxter"}
    for f in report.failures:
        assert tuple(f.residual) == res[(names[f.axiom], f.witness)]


def oracle_conjugate(dfm, phis):
    """phi_t^-1 gamma_t(phi_t x, phi_t y) etc. truncated, via sympy series inversion."""
    d, N = dfm.dim, dfm.order
    PT, D, R = series_of(dfm)
    P = oracles.poly_matrix([Matrix.identity(d).tolist()] + [p.tolist() for p in phis])
    Pinv = P.inv().applyfunc(lambda c: sympy.series(c, t, 0, N + 1).removeO())
    gam = {}
    for i in range(d):
        for j in range(d):
            x, y = P[:, i], P[:, j]
            gam[(i, j)] = Pinv * oracles.poly_bilinear(PT, x, y)
    deltas = Pinv * D * P
    Rs = Pinv * R * P
    return gam, deltas, Rs


# ---- data types ----------------------------------------------------------------


class TestDataTypes:
    def test_zero_padding(self):
        pair = base("b2_rb_diag")
        dfm = FormalDeformationLie(pair, order=3)
        assert dfm.is_trivial() and len(dfm.gammas) == 3 and dfm.R(0) == pair.R and dfm.delta(2).is_zero()

    def test_too_many_terms(self):
        pair = base("b2_rb_diag")
        with pytest.raises(DeformationError):
            FormalDeformationLie(pair, deltas=[Matrix.zeros(2, 2)] * 3, order=2)

    def test_shape_checks(self):
        pair = base("b2_rb_diag")
        with pytest.raises(DimensionError):
            FormalDeformationLie(pair, Rs=[Matrix.zeros(3, 3)])
        with pytest.raises(DimensionError):
            FormalDeformationLie(pair, gammas=[AssCochain.zero(2, 2, 2)])
        with pytest.raises(TypeError):
            FormalDeformationAss(pair)

    def test_ass_alias(self):
        pair = base("dim2_neg_identity")
        mu = AssCochain(2, 2, 2, {(0, 0): (1, 0)})
        dfm = FormalDeformationAss(pair, [mu], order=1)
        assert dfm.mus == (mu,) and dfm.truncate(0).order == 0

    @given(small_maps(2, 2))
    def test_inverse_series(self, phis):
        eq = EquivalenceData(tuple(phis))
        psi = EquivalenceData(tuple(eq.inverse_terms(2, 2)[1:]))
        assert eq.compose(psi, 2, 2).is_identity() and psi.compose(eq, 2, 2).is_identity()

    def test_single(self):
        phi = Matrix([[0, 1], [0, 0]])
        eq = EquivalenceData.single(phi, 2, 3)
        assert eq.term(1, 2).is_zero() and eq.term(2, 2) == phi and eq.term(5, 2).is_zero()
        assert EquivalenceData.identity(2, 3).is_identity()

    def test_mixed_shapes(self):
        with pytest.raises(DimensionError):
            EquivalenceData((Matrix.zeros(2, 2), Matrix.zeros(3, 3)))


# ---- check_order ---------------------------------------------------------------


class TestCheckOrder:
    @pytest.mark.parametrize("name", LIE_BASES + ASS_BASES)
    def test_trivial_clean(self, name):
        pair = base(name)
        dfm = cls_for(pair).trivial(pair, 2)
        for n in range(3):
            assert check_order(dfm, n)

    def test_out_of_range(self):
        dfm = FormalDeformationLie.trivial(base("b2_rb_diag"), 1)
        with pytest.raises(DeformationError):
            check_order(dfm, 2)
        with pytest.raises(DeformationError):
            check_order(dfm, -1)

    def test_ass_entry_point(self):
        pair = base("m2_adjoint")
        assert check_order_ass(FormalDeformationAss.trivial(pair, 1), 1)
        with pytest.raises(TypeError):
            check_order_ass(FormalDeformationLie.trivial(base("b2_zero"), 1), 1)

    def test_coboundary_bracket_on_b2(self):
        # gamma_1 = d(phi) with delta_1 = R_1 = 0 over delta = R = 0, weight 0
        pair = base("b2_zero")
        phi = Matrix([[1, 2], [-1, 3]])
        dphi = RBLieDerCochain.from_vector(2, 2, 2, D1(pair) @ LieCochain.from_map(phi).to_vector()).f
        dfm = FormalDeformationLie(pair, [dphi], order=1)
        assert check_order(dfm, 1)
        assert_matches_oracle(dfm, 1)

    @pytest.mark.parametrize("name", ["b2_rb_diag", "m2_adjoint"])
    def test_oracle_on_corrupted_terms(self, name):
        pair = base(name)
        d = pair.dim
        rng = random.Random(7)
        cc = LieCochain if name in LIE_BASES else AssCochain
        for _ in range(5):
            size = cc.zero(2, d, d).space.dim
            g = cc.from_vector(2, d, d, [rng.choice([0, 0, 1, -1]) for _ in range(size)])
            m1 = Matrix([[rng.choice([0, 0, 1]) for _ in range(d)] for _ in range(d)])
            m2 = Matrix([[rng.choice([0, 0, -1]) for _ in range(d)] for _ in range(d)])
            dfm = cls_for(pair)(pair, [g, g * 2], [m1, m2], [m2, m1], order=2)
            for n in range(3):
                assert_matches_oracle(dfm, n)

    def test_lambda_term_counted_once(self):
        # R_t = -id is a Rota-Baxter operator of weight 1 for every bracket gamma_t;
        # a triple-sum lambda term would leave a residual at order 1
        pair = base("b2_neg_identity")
        g = LieCochain(2, 2, 2, {(0, 1): (1, 0)})
        dfm = FormalDeformationLie(pair, [g], order=1)
        rb = [f for f in check_order(dfm, 1).failures if f.axiom == "rota_baxter"]
        assert not rb

    def test_commute_reported_separately(self):
        pair = base("b2_rb_diag")
        dfm = FormalDeformationLie(pair, deltas=[Matrix.zeros(2, 2)], Rs=[Matrix([[0, 0], [1, 0]])], order=1)
        rep = check_order(dfm, 1)
        assert not rep.commutes and rep.commute_residual is not None
        assert_matches_oracle(dfm, 1)


# ---- randomized coboundary-generated deformations ------------------------------


@pytest.mark.parametrize("name", LIE_BASES + ASS_BASES)
@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_conjugated_trivial_properties(name, data):
    pair = base(name)
    d = pair.dim
    phis = data.draw(small_maps(d, 2))
    eq = EquivalenceData(tuple(phis))
    triv = cls_for(pair).trivial(pair, 2)
    dfm = apply_equivalence(triv, eq)
    for n in range(3):
        rep = check_order(dfm, n)
        assert rep.clean and rep.commutes
    # the infinitesimal is a cocycle, equal to D(phi_1)
    inf = infinitesimal(dfm)
    assert is_two_cocycle(pair, inf)
    assert inf.to_vector() == D1(pair) @ type(inf.f).from_map(phis[0]).to_vector()
    for n in range(3):
        assert check_equivalence(triv, dfm, eq, n)
    phi1 = cohomologous_test(triv, dfm)
    assert phi1 is not None
    assert D1(pair) @ type(inf.f).from_map(phi1).to_vector() == inf.to_vector()
    probe = rigidity_probe(pair, dfm)
    assert probe.success and probe.final.is_trivial()
    assert apply_equivalence(dfm, probe.equivalence).is_trivial()


@pytest.mark.parametrize("name", ["b2_rb_diag", "sl2_zero", "dim2_neg_identity"])
@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10**6), data=st.data())
def test_sampled_cocycle_deformations(name, seed, data):
    pair = base(name)
    dfm = sample_order1_deformation(pair, random.Random(seed), order=2)
    assert check_order(dfm, 0) and check_order(dfm, 1)
    assert is_two_cocycle(pair, infinitesimal(dfm))
    # equivalence preserves order-1 cleanliness and the class of the linear term
    phis = data.draw(small_maps(pair.dim, 1))
    other = apply_equivalence(dfm, EquivalenceData(tuple(phis)))
    assert check_order(other, 1)
    assert check_equivalence(dfm, other, EquivalenceData(tuple(phis)), 1)
    assert cohomologous_test(dfm, other) is not None


@pytest.mark.parametrize("name", ["b2_rb_diag", "dim2_neg_identity"])
def test_conjugation_matches_series_oracle(name):
    pair = base(name)
    rng = random.Random(3)
    d = pair.dim
    cc = LieCochain if name in LIE_BASES else AssCochain
    size = cc.zero(2, d, d).space.dim
    g = cc.from_vector(2, d, d, [rng.randint(-1, 1) for _ in range(size)])
    dfm = cls_for(pair)(pair, [g], [Matrix([[1, 0], [0, 0]])], [Matrix([[0, 1], [0, 0]])], order=2)
    phis = [Matrix([[1, 1], [0, 2]]), Matrix([[0, -1], [1, 0]])]
    out = apply_equivalence(dfm, EquivalenceData(tuple(phis)))
    gam, deltas, Rs = oracle_conjugate(dfm, phis)
    for k in range(1, 3):
        for (i, j), v in gam.items():
            assert out.gamma(k).at((i, j)) == coeff_vec(v, k)
        assert out.delta(k).tolist() == [[oracles.series_coefficient(deltas[a, b], k) for b in range(d)] for a in range(d)]
        assert out.R(k).tolist() == [[oracles.series_coefficient(Rs[a, b], k) for b in range(d)] for a in range(d)]
    assert apply_equivalence(dfm, EquivalenceData.identity(d, 2)) == dfm


# ---- equivalence sign and the cohomologous test ---------------------------------


class TestEquivalenceSign:
    def _coboundary_deformation(self, pair, phi):
        c = type(order_term(cls_for(pair).trivial(pair, 1), 1)).from_vector(
            2, pair.dim, pair.dim, D1(pair) @ (LieCochain if isinstance(pair, RBLieDerPair) else AssCochain).from_map(phi).to_vector()
        )
        return cls_for(pair)(pair, [c.f], [c.g.as_map()], [c.h.as_map()], order=1)

    @pytest.mark.parametrize("name", ["b2_rb_diag", "sl2_zero", "m2_adjoint"])
    def test_minus_clears_plus_doubles(self, name):
        pair = base(name)
        d = pair.dim
        phi = Matrix([[(i + 2 * j) % 3 - 1 for j in range(d)] for i in range(d)])
        dfm = self._coboundary_deformation(pair, phi)
        cleared = apply_equivalence(dfm, EquivalenceData((-phi,)))
        assert cleared.is_trivial()
        doubled = apply_equivalence(dfm, EquivalenceData((phi,)))
        assert order_term(doubled, 1) == order_term(dfm, 1) * 2

    def test_identity_equivalence(self):
        pair = base("b2_rb_diag")
        dfm = self._coboundary_deformation(pair, Matrix([[1, 0], [2, 0]]))
        assert check_equivalence(dfm, dfm, EquivalenceData.identity(2, 1), 1)
        assert cohomologous_test(dfm, dfm).is_zero()

    def test_mismatch_witness(self):
        pair = base("b2_zero")
        a = FormalDeformationLie.trivial(pair, 1)
        b = FormalDeformationLie(pair, Rs=[Matrix([[1, 0], [0, 0]])], order=1)
        v = check_equivalence(a, b, EquivalenceData.identity(2, 1), 1)
        assert not v and v.axiom == "R"

    def test_different_pairs(self):
        with pytest.raises(DeformationError):
            cohomologous_test(FormalDeformationLie.trivial(base("b2_zero")), FormalDeformationLie.trivial(base("b2_rb_diag")))


# ---- cocycles, obstruction -----------------------------------------------------


class TestCocyclesAndObstruction:
    def test_zero_is_cocycle(self):
        assert is_two_cocycle(base("b2_rb_diag"), RBLieDerCochain.zero(2, 2, 2))
        assert is_two_cocycle(base("m2_adjoint"), RBAssDerCochain.zero(2, 4, 4))

    def test_non_cocycle_on_b2(self):
        pair = base("b2_rb_diag")
        D2 = assemble_matrix(pair, pair.adjoint_rep(), 2)
        k = next(k for k in range(D2.ncols) if any(D2.column(k)))
        vec = [int(i == k) for i in range(D2.ncols)]
        v = is_two_cocycle(pair, RBLieDerCochain.from_vector(2, 2, 2, vec))
        assert not v and v.axiom.startswith("slot")

    def test_wrong_type(self):
        with pytest.raises(TypeError):
            is_two_cocycle(base("b2_rb_diag"), RBAssDerCochain.zero(2, 2, 2))

    def test_obstructed_corpus_entry(self):
        doc = corpus.load("deform_b2_obstructed")
        pair = doc.pair()
        dfm = doc.formal_deformation(pair)
        assert check_order(dfm, 1)
        probe = rigidity_probe(pair, dfm)
        assert not probe.success and probe.obstruction_order == 1
        assert probe.obstruction == infinitesimal(dfm)
        # not cohomologous to the trivial deformation
        assert cohomologous_test(FormalDeformationLie.trivial(pair, 1), dfm) is None

    def test_non_coboundary_cocycle_not_cohomologous(self):
        pair = base("b2_rb_diag")
        D1m, D2 = D1(pair), assemble_matrix(pair, pair.adjoint_rep(), 2)
        from rbder.linalg import solve

        z = next(v for v in kernel_basis(D2) if solve(D1m, v) is None)
        c = RBLieDerCochain.from_vector(2, 2, 2, z)
        dfm = FormalDeformationLie(pair, [c.f], [c.g.as_map()], [c.h.as_map()], order=1)
        assert cohomologous_test(FormalDeformationLie.trivial(pair, 1), dfm) is None

    def test_infinitesimal_requires_clean(self):
        pair = base("b2_rb_diag")
        dfm = FormalDeformationLie(pair, deltas=[Matrix.identity(2)], order=1)
        with pytest.raises(DeformationError):
            infinitesimal(dfm)
        with pytest.raises(DeformationError):
            rigidity_probe(pair, dfm)

    def test_trivial_probe(self):
        pair = base("sl2_zero")
        probe = rigidity_probe(pair, FormalDeformationLie.trivial(pair, 2))
        assert probe.success and not probe.steps and probe.equivalence.is_identity()

    def test_probe_corpus_coboundary(self):
        doc = corpus.load("deform_b2_coboundary")
        pair = doc.pair()
        probe = rigidity_probe(pair, doc.formal_deformation(pair))
        assert probe.success and [k for k, _ in probe.steps] == [1, 2]

    def test_m2_corpus_equivalence_block(self):
        doc = corpus.load("deform_m2_coboundary")
        pair = doc.pair()
        dfm = doc.formal_deformation(pair)
        triv = FormalDeformationAss.trivial(pair, dfm.order)
        eq = doc.equivalence_data()
        # the stored equivalence conjugates the entry back to the trivial deformation
        assert apply_equivalence(dfm, eq) == triv
        for n in range(dfm.order + 1):
            assert check_equivalence(dfm, triv, eq, n)

    def test_zero_structure_any_cocycle(self):
        ab = LieAlgebra(1)
        pair = RBLieDerPair(ab, Matrix.zeros(1, 1), Matrix.zeros(1, 1), 0)
        dfm = sample_order1_deformation(pair, random.Random(0))
        assert check_order(dfm, 1)
