from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import ASS_RAW, LIE_RAW, M2, SL2, ass_case, diag, lie_case, zeros
from rbder.linalg import DimensionError, Matrix
from rbder.structures import (
    AssBimodule,
    AssocAlgebra,
    LieAlgebra,
    LieBiDerPair,
    LieRep,
    RBAssDerPair,
    RBAssDerRep,
    RBLieDerPair,
    RBLieDerRep,
    StructureError,
    check_associativity,
    check_bider,
    check_bider_rep,
    check_commute,
    check_derivation,
    check_jacobi,
    check_lie_rep,
    check_rbassder_rep,
    check_rblieder_rep,
    check_rota_baxter,
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

b2 = LieAlgebra(2, [(0, 1, 1, 1)])
sl2 = LieAlgebra(3, SL2, ["h", "e", "f"])
m2 = AssocAlgebra(4, M2, ["E11", "E12", "E21", "E22"])
F = Fraction


def neg_lam_id(n, lam):
    return Matrix.scalar(n, -lam)


class TestJacobi:
    def test_b2(self):
        assert check_jacobi(b2)

    @given(st.lists(st.integers(-3, 3), min_size=2, max_size=2))
    def test_dim2_vacuous(self, cs):
        assert check_jacobi(LieAlgebra(2, [(0, 1, 0, cs[0]), (0, 1, 1, cs[1])]))

    def test_failure_witness(self):
        bad = LieAlgebra(3, [(0, 1, 2, 1), (0, 2, 2, 1), (1, 2, 1, 1)])
        v = check_jacobi(bad)
        assert not v and v.witness == (0, 1, 2)
        # oracle: cyclic sum expanded directly
        T = oracles.table_from_quads(3, [(0, 1, 2, 1), (0, 2, 2, 1), (1, 2, 1, 1)], True)
        e = [oracles.unit(3, i) for i in range(3)]
        cyc = oracles.add(
            oracles.bilinear(T, e[0], oracles.bilinear(T, e[1], e[2])),
            oracles.bilinear(T, e[1], oracles.bilinear(T, e[2], e[0])),
            oracles.bilinear(T, e[2], oracles.bilinear(T, e[0], e[1])),
        )
        assert list(v.residual) == cyc == [0, F(-1), F(1)]

    def test_sl2(self):
        assert check_jacobi(sl2)


class TestAssociativity:
    def test_idempotent(self):
        assert check_associativity(AssocAlgebra(1, [(0, 0, 0, 1)]))

    def test_matrix_units(self):
        assert check_associativity(m2)

    def test_failure(self):
        # e1e1 = e2, e2e1 = e1: (e1e1)e1 = e1 while e1(e1e1) = 0
        v = check_associativity(AssocAlgebra(2, [(0, 0, 1, 1), (1, 0, 0, 1)]))
        assert not v and v.witness == (0, 0, 0)
        assert v.residual == (1, 0)


class TestDerivation:
    def test_worked_matrix(self):
        assert check_derivation(b2, Matrix(diag(0, 1)))

    def test_zero(self):
        assert check_derivation(sl2, Matrix.zeros(3, 3))

    def test_identity_is_not(self):
        v = check_derivation(b2, Matrix.identity(2))
        assert not v and v.witness == (0, 1)

    def test_inner(self):
        for i in range(3):
            assert check_derivation(sl2, sl2.ad(i))
        assert check_derivation(m2, m2.left(1) - m2.right(1))

    def test_shape(self):
        with pytest.raises(DimensionError):
            check_derivation(b2, Matrix.identity(3))


class TestRotaBaxter:
    @pytest.mark.parametrize("lam", [0, 1, F(-3, 2)])
    def test_zero(self, lam):
        assert check_rota_baxter(sl2, Matrix.zeros(3, 3), lam)

    @pytest.mark.parametrize("lam", [0, 1, F(5, 2)])
    def test_minus_lambda_identity(self, lam):
        assert check_rota_baxter(sl2, neg_lam_id(3, lam), lam)
        assert check_rota_baxter(m2, neg_lam_id(4, lam), lam)

    @pytest.mark.parametrize("b", [F(x, 2) for x in range(-6, 7)])
    def test_b2_diagonal_family(self, b):
        # direct expansion on (e1, e2): LHS 0, RHS b(b+1) e2
        assert bool(check_rota_baxter(b2, Matrix([[0, 0], [0, b]]), 1)) == (b * (b + 1) == 0)


class TestCommute:
    def test_diagonal(self):
        assert check_commute(Matrix(diag(0, 1)), Matrix(diag(0, -1)))

    def test_identity(self):
        assert check_commute(Matrix([[1, 2], [3, 4]]), Matrix.identity(2))

    def test_failure(self):
        v = check_commute(Matrix([[0, 1], [0, 0]]), Matrix([[0, 0], [1, 0]]))
        assert not v and v.residual == Matrix([[1, 0], [0, -1]])


class TestBiDer:
    @pytest.mark.parametrize("abcd", [(1, 2, 3, 4), (1, 2, 2, 4), (0, 5, -1, F(1, 3)), (2, 0, 0, 7)])
    def test_b2_family_regardless_of_ad_bc(self, abcd):
        a, b, c, d = abcd
        d1, d2 = Matrix([[0, 0], [a, b]]), Matrix([[0, 0], [c, d]])
        assert check_bider(b2, d1, d2)
        pair = LieBiDerPair(b2, d1, d2)
        assert check_bider_rep(pair, LieRep.adjoint(b2), d1, d2)

    def test_zero(self):
        z = Matrix.zeros(3, 3)
        assert check_bider(sl2, z, z)

    def test_sl2_inner_both_characterizations(self):
        # oracle: [d1 x, d2 y] - [d1 y, d2 x] expanded directly, and d1 d2 tested as a derivation
        T = oracles.table_from_quads(3, SL2, True)
        d1, d2 = sl2.ad(1), sl2.ad(2)
        D1, D2 = d1.tolist(), d2.tolist()
        direct = all(
            oracles.bilinear(T, oracles.col(D1, i), oracles.col(D2, j)) == oracles.bilinear(T, oracles.col(D1, j), oracles.col(D2, i))
            for i in range(3)
            for j in range(3)
        )
        v = check_bider(sl2, d1, d2)
        assert bool(v) == direct == bool(check_derivation(sl2, d1 @ d2))
        assert not direct

    def test_non_derivation_raises(self):
        with pytest.raises(StructureError):
            check_bider(b2, Matrix.identity(2), Matrix.zeros(2, 2))

    def test_phi_zero(self):
        pair = LieBiDerPair(b2, Matrix([[0, 0], [1, 2]]), Matrix([[0, 0], [3, 4]]))
        z = Matrix.zeros(2, 2)
        assert check_bider_rep(pair, LieRep.adjoint(b2), z, z)


class TestRepresentations:
    @pytest.mark.parametrize("name", sorted(LIE_RAW))
    def test_lie_corpus_reps(self, name):
        pair, rep = lie_case(name)
        assert check_rblieder_rep(pair, rep)

    @pytest.mark.parametrize("name", sorted(ASS_RAW))
    def test_ass_corpus_reps(self, name):
        pair, rep = ass_case(name)
        assert check_rbassder_rep(pair, rep)

    def test_zero_rep(self):
        pair, _ = lie_case("b2_rb_diag")
        rep = RBLieDerRep(LieRep.zero(b2, 3), Matrix.zeros(3, 3), Matrix.zeros(3, 3))
        assert check_rblieder_rep(pair, rep)
        apair, _ = ass_case("m2_adjoint")
        arep = RBAssDerRep(AssBimodule.zero(m2, 2), Matrix.zeros(2, 2), Matrix.zeros(2, 2))
        assert check_rbassder_rep(apair, arep)

    def test_idempotent_minus_lambda(self):
        A = AssocAlgebra(1, [(0, 0, 0, 1)])
        pair = RBAssDerPair(A, Matrix.zeros(1, 1), Matrix([[-1]]), 1)
        rep = RBAssDerRep(AssBimodule.regular(A), Matrix.zeros(1, 1), Matrix([[-1]]))
        assert check_rbassder_rep(pair, rep)

    def test_failed_axiom_named(self):
        pair, _ = lie_case("b2_rb_diag")
        rep = RBLieDerRep(LieRep(b2, [Matrix([[1]]), Matrix([[0]])], 1), Matrix([[0]]), Matrix([[1]]))
        v = check_rblieder_rep(pair, rep)
        assert not v and v.axiom == "rep2" and v.witness == (0,)

    @pytest.mark.parametrize("mu", [2, F(-1, 3)])
    @pytest.mark.parametrize("name", sorted(LIE_RAW))
    def test_scaling_example(self, name, mu):
        pair, rep = lie_case(name)
        scaled_pair = RBLieDerPair(pair.algebra, pair.delta, pair.R * mu, pair.weight * mu)
        assert check_rblieder_rep(scaled_pair, RBLieDerRep(rep.rep, rep.delta_V, rep.T * mu))

    @pytest.mark.parametrize("name", sorted(LIE_RAW))
    def test_complement_example(self, name):
        pair, rep = lie_case(name)
        lam = pair.weight
        cpair = RBLieDerPair(pair.algebra, pair.delta, Matrix.scalar(pair.dim, -lam) - pair.R, lam)
        crep = RBLieDerRep(rep.rep, rep.delta_V, Matrix.scalar(rep.space_dim, -lam) - rep.T)
        assert check_rblieder_rep(cpair, crep)

    def test_bimodule_fourth_axiom_right_action(self):
        # right-only bimodule over K e1 (e1e1 = e1): m e1 = m, R = T = -id, weight 1
        A = AssocAlgebra(1, [(0, 0, 0, 1)])
        pair = RBAssDerPair(A, Matrix.zeros(1, 1), Matrix([[-1]]), 1)
        good = RBAssDerRep(AssBimodule(A, [Matrix([[0]])], [Matrix([[1]])], 1), Matrix([[0]]), Matrix([[-1]]))
        assert check_rbassder_rep(pair, good)
        # T = 1 breaks only the right Rota-Baxter axiom: -1 vs T(T m e1 + m R e1 + m e1) = 1
        bad = RBAssDerRep(AssBimodule(A, [Matrix([[0]])], [Matrix([[1]])], 1), Matrix([[0]]), Matrix([[1]]))
        v = check_rbassder_rep(pair, bad)
        assert not v and v.axiom == "rb_right"


class TestPairs:
    def test_eager_validation(self):
        with pytest.raises(StructureError) as exc:
            RBLieDerPair(b2, Matrix(diag(0, 1)), Matrix([[0, 0], [0, 5]]), 1)
        assert exc.value.verdict.check == "rota_baxter"
        with pytest.raises(StructureError):
            RBLieDerPair(b2, Matrix.identity(2), Matrix.zeros(2, 2), 0)
        with pytest.raises(StructureError):
            RBLieDerPair(b2, Matrix(diag(0, 1)), Matrix([[0, 1], [0, 0]]), 0)

    def test_shapes(self):
        with pytest.raises(DimensionError):
            RBLieDerPair(b2, Matrix.zeros(3, 3), Matrix.zeros(2, 2), 0)

    def test_worked_b2_pairs(self):
        for b in (0, -1):
            RBLieDerPair(b2, Matrix(diag(0, 1)), Matrix([[0, 0], [0, b]]), 1)


def _closure_lie(pair, rep):
    big = semidirect_rblieder(pair, rep)
    assert big.dim == pair.dim + rep.space_dim
    assert check_jacobi(big.algebra) and check_derivation(big.algebra, big.delta)
    assert check_rota_baxter(big.algebra, big.R, big.weight) and check_commute(big.R, big.delta)


class TestConstructions:
    @pytest.mark.parametrize("name", sorted(LIE_RAW))
    def test_semidirect_rblieder(self, name):
        _closure_lie(*lie_case(name))

    def test_semidirect_trivial_space(self):
        pair, _ = lie_case("b2_rb_diag")
        rep = RBLieDerRep(LieRep.zero(b2, 0), Matrix.zeros(0, 0), Matrix.zeros(0, 0))
        assert semidirect_rblieder(pair, rep) == pair

    def test_semidirect_minus_lambda_T(self):
        pair, _ = lie_case("b2_neg_identity")
        rep = RBLieDerRep(LieRep.zero(b2, 2), Matrix.zeros(2, 2), Matrix.scalar(2, -1))
        _closure_lie(pair, rep)

    @pytest.mark.parametrize("name", sorted(ASS_RAW))
    def test_semidirect_rbassder(self, name):
        pair, rep = ass_case(name)
        big = semidirect_rbassder(pair, rep)
        assert check_associativity(big.algebra) and check_rota_baxter(big.algebra, big.R, big.weight)

    def test_semidirect_rejects_bad_rep(self):
        pair, _ = lie_case("b2_rb_diag")
        rep = RBLieDerRep(LieRep(b2, [Matrix([[1]]), Matrix([[0]])], 1), Matrix([[0]]), Matrix([[1]]))
        with pytest.raises(StructureError):
            semidirect_rblieder(pair, rep)

    def test_semidirect_bider(self):
        d1, d2 = Matrix([[0, 0], [1, 2]]), Matrix([[0, 0], [3, 4]])
        pair = LieBiDerPair(b2, d1, d2)
        big = semidirect_bider(pair, LieRep.adjoint(b2), d1, d2)
        assert big.dim == 4 and check_jacobi(big.algebra) and check_bider(big)
        assert semidirect_bider(pair, LieRep.zero(b2, 0), Matrix.zeros(0, 0), Matrix.zeros(0, 0)) == pair

    def test_semidirect_bider_abelian(self):
        ab = LieAlgebra(2)
        z2 = Matrix.zeros(2, 2)
        rep = LieRep(ab, [Matrix([[1, 0], [0, 0]]), Matrix([[0, 0], [0, 1]])], 2)
        big = semidirect_bider(LieBiDerPair(ab, z2, z2), rep, z2, z2)
        assert check_bider(big) and check_jacobi(big.algebra)

    @pytest.mark.parametrize("name", sorted(LIE_RAW))
    def test_induced_bracket(self, name):
        pair, _ = lie_case(name)
        ind = induced_bracket(pair)
        d = pair.dim
        T = oracles.table_from_quads(d, LIE_RAW[name][1], True)
        expected = oracles.induced_table(T, pair.R.tolist(), pair.weight)
        assert [[list(v) for v in row] for row in ind.algebra.table] == expected
        for i in range(d):
            for j in range(d):
                assert pair.R @ ind.algebra.table[i][j] == pair.algebra.mul(pair.R.column(i), pair.R.column(j))

    def test_induced_bracket_special_cases(self):
        z = induced_bracket(RBLieDerPair(sl2, Matrix.zeros(3, 3), Matrix.zeros(3, 3), 0))
        assert z.algebra.is_zero()
        lam = F(3)
        scaled = induced_bracket(RBLieDerPair(sl2, Matrix.zeros(3, 3), neg_lam_id(3, lam), lam))
        assert all(scaled.algebra.table[i][j] == tuple(-lam * x for x in sl2.table[i][j]) for i in range(3) for j in range(3))

    @pytest.mark.parametrize("name", sorted(ASS_RAW))
    def test_induced_product(self, name):
        pair, _ = ass_case(name)
        ind = induced_product(pair)
        assert check_associativity(ind.algebra)
        for i in range(pair.dim):
            for j in range(pair.dim):
                assert pair.R @ ind.algebra.table[i][j] == pair.algebra.mul(pair.R.column(i), pair.R.column(j))

    @pytest.mark.parametrize("name", sorted(LIE_RAW))
    def test_induced_rep_theorem(self, name):
        pair, rep = lie_case(name)
        out = induced_rep(pair, rep)
        assert check_rblieder_rep(induced_bracket(pair), out)
        acts = [a.tolist() for a in rep.rep.rho]
        assert [a.tolist() for a in out.rep.rho] == oracles.induced_acts(acts, pair.R.tolist(), rep.T.tolist())

    def test_induced_rep_zero(self):
        pair = RBLieDerPair(b2, Matrix(diag(0, 1)), Matrix.zeros(2, 2), 0)
        rep = RBLieDerRep(LieRep.adjoint(b2), Matrix(diag(0, 1)), Matrix.zeros(2, 2))
        assert all(r.is_zero() for r in induced_rep(pair, rep).rep.rho)

    @pytest.mark.parametrize("name", sorted(ASS_RAW))
    def test_induced_actions(self, name):
        pair, rep = ass_case(name)
        out = induced_actions(pair, rep)
        assert check_rbassder_rep(induced_product(pair), out)

    def test_skew_commutative(self):
        A = AssocAlgebra(2, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)])
        pair = RBAssDerPair(A, Matrix.zeros(2, 2), Matrix.zeros(2, 2), 0)
        assert skew_symmetrize_algebra(pair).algebra.is_zero()

    def test_skew_gl2(self):
        pair, _ = ass_case("m2_adjoint")
        gl2 = skew_symmetrize_algebra(pair).algebra
        # commutators of matrix units: [E_ij, E_kl] = d_jk E_il - d_li E_kj
        idx = {(i, j): 2 * i + j for i in range(2) for j in range(2)}
        for (i, j), a in idx.items():
            for (k, l), b in idx.items():
                expected = [F(0)] * 4
                if j == k:
                    expected[idx[(i, l)]] += 1
                if l == i:
                    expected[idx[(k, j)]] -= 1
                assert list(gl2.table[a][b]) == expected

    def test_skew_dim2_is_b2(self):
        pair, _ = ass_case("dim2_neg_identity")
        assert skew_symmetrize_algebra(pair).algebra == b2

    @pytest.mark.parametrize("name", sorted(ASS_RAW))
    def test_skew_bimodule(self, name):
        pair, rep = ass_case(name)
        lrep = skew_symmetrize_bimodule(rep, pair)
        assert check_rblieder_rep(skew_symmetrize_algebra(pair), lrep)
        assert check_lie_rep(lrep.rep)

    def test_skew_adjoint_is_adjoint(self):
        pair, rep = ass_case("m2_adjoint")
        lrep = skew_symmetrize_bimodule(rep, pair)
        assert lrep.rep.rho == LieRep.adjoint(skew_symmetrize_algebra(pair).algebra).rho

    def test_skew_zero_actions(self):
        pair, _ = ass_case("m2_adjoint")
        rep = RBAssDerRep(AssBimodule.zero(m2, 2), Matrix.zeros(2, 2), Matrix.zeros(2, 2))
        assert all(r.is_zero() for r in skew_symmetrize_bimodule(rep, pair).rep.rho)


@settings(max_examples=40, deadline=None)
@given(st.integers(-2, 2), st.integers(-2, 2), st.sampled_from([0, 1, -1, F(1, 2)]))
def test_induced_bracket_random_pairs(p, q, lam):
    """Any valid b2 pair with R in a small family gives a valid induced pair."""
    R = Matrix([[p, 0], [q, -lam - p]]) if p else Matrix([[0, 0], [q, -lam]])
    try:
        pair = RBLieDerPair(b2, Matrix.zeros(2, 2), R, lam)
    except StructureError:
        return
    ind = induced_bracket(pair)
    assert check_jacobi(ind.algebra)
    assert check_rblieder_rep(ind, RBLieDerRep(LieRep.adjoint(ind.algebra), ind.delta, ind.R))


def test_corpus_sizes():
    assert len(LIE_RAW) >= 4 and len(ASS_RAW) >= 4
    assert zeros(2) == [[0, 0], [0, 0]]
