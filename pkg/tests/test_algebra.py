import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rlr_of
from oracles import brute_derivations, commutator_table, matrix_pth_power, witt_operators
from rlr import registry
from rlr.algebra import (
    AlgebraPresentation,
    LiePresentation,
    RLRAlgebra,
    check_commutative_associative,
    check_lr_representation,
    check_restricted_derivation,
    check_restricted_lie,
    check_restricted_module,
    check_rlr,
    compute_derivations,
    compute_jacobson_si,
    extend_pmap,
    is_derivation,
    pth_power_derivation,
)
from rlr.report import all_vectors


def two_dim(p, xy, pm=None):
    br = np.zeros((2, 2, 2), dtype=np.int64)
    br[0, 1] = np.asarray(xy) % p
    br[1, 0] = -np.asarray(xy) % p
    return LiePresentation(p, 2, br, None if pm is None else np.asarray(pm))


def der_set(A):
    return {tuple(tuple(r) for r in v.reshape(A.dim, A.dim).tolist()) for v in compute_derivations(A).elements()}


# -- commutative associative ---------------------------------------------------


def test_a4_passes():
    assert check_commutative_associative(registry.algebra_A("A4")).passed


def test_zero_algebra_passes():
    assert check_commutative_associative(AlgebraPresentation(2, 3, np.zeros((3, 3, 3), dtype=np.int64))).passed


def test_noncommutative_fails_at_1_2():
    m = np.zeros((2, 2, 2), dtype=np.int64)
    m[0, 1] = [1, 0]
    rep = check_commutative_associative(AlgebraPresentation(2, 2, m))
    assert rep.check("A commutative").passed is False
    assert rep.check("A commutative").witness == [1, 2]


# -- derivations ---------------------------------------------------------------


@pytest.mark.parametrize("name", list(registry._A_TABLE))
def test_derivations_match_brute_force(name):
    A = registry.algebra_A(name)
    assert der_set(A) == brute_derivations(A.mult.tolist(), 2)


def test_derivation_examples():
    E12 = ((0, 1), (0, 0))  # e1 (x) e2*
    E21 = ((0, 0), (1, 0))  # e2 (x) e1*
    E22 = ((0, 0), (0, 1))
    zero = ((0, 0), (0, 0))
    plus = lambda M, N: tuple(tuple((a + b) % 2 for a, b in zip(r, s)) for r, s in zip(M, N))
    assert der_set(registry.algebra_A("A4")) == {zero, E12, E22, plus(E12, E22)}
    assert der_set(registry.algebra_A("A3")) == {zero}
    assert der_set(registry.algebra_A("A5")) == {zero}
    assert der_set(registry.algebra_A("A1")) == {zero, E22}
    assert E21 in der_set(registry.algebra_A("A2"))


@pytest.mark.parametrize("name", list(registry._A_TABLE))
def test_der_closed_under_bracket_and_square(name):
    A = registry.algebra_A(name)
    basis = compute_derivations(A).vectors.reshape(-1, 2, 2)
    for D in basis:
        assert is_derivation(A, pth_power_derivation(A, D))[0]
        for E in basis:
            assert is_derivation(A, (D @ E - E @ D) % 2)[0]


def test_pth_power_derivation_examples():
    A4 = registry.algebra_A("A4")
    assert not pth_power_derivation(A4, np.zeros((2, 2), dtype=np.int64)).any()
    E22 = np.array([[0, 0], [0, 1]])
    assert np.array_equal(pth_power_derivation(A4, E22), E22)
    A1 = registry.algebra_A("A1")
    for D in compute_derivations(A1).elements():
        assert is_derivation(A1, pth_power_derivation(A1, D.reshape(2, 2)))[0]


# -- restricted Lie algebras -----------------------------------------------------


@pytest.mark.parametrize("p", [5, 7])
def test_witt_passes(p):
    rep = check_restricted_lie(registry.witt(p))
    assert rep.passed, rep.failures()
    # p^(2 dim) exceeds the default budget: pairs are probed, and the report says so
    assert "partial" in rep.check("(x+y)^[p] = x^[p] + y^[p] + sum s_i(x,y)").note


@pytest.mark.parametrize("p", [3, 5])
def test_witt_matches_operator_realization(p):
    W = registry.witt(p)
    mats = witt_operators(p)
    assert commutator_table(mats, p) == [[tuple(v) for v in row] for row in W.bracket.tolist()]
    for i in range(p):
        e = tuple(int(k == i) for k in range(p))
        assert matrix_pth_power(mats, e, p) == tuple(W.pmap_on_basis[i].tolist())


def test_abelian_zero_pmap_passes():
    L = LiePresentation(3, 2, None, np.zeros((2, 2), dtype=np.int64))
    assert check_restricted_lie(L).passed


def test_bad_pmap_fails_ad_condition():
    L = two_dim(2, (0, 1), [[0, 0], [0, 0]])
    rep = check_restricted_lie(L)
    assert rep.check("ad(e_i^[p]) = (ad e_i)^p on basis").passed is False
    assert rep.check("ad(e_i^[p]) = (ad e_i)^p on basis").witness == [1]


# -- s_i and p-map extension -----------------------------------------------------


def test_si_abelian_vanish():
    L = LiePresentation(5, 3, None, None)
    for s in compute_jacobson_si(L, [1, 2, 3], [4, 0, 1]):
        assert not s.any()


def test_si_char2_is_bracket():
    W = registry.witt(5)
    L2 = two_dim(2, (1, 1))
    for x in all_vectors(2, 2):
        for y in all_vectors(2, 2):
            (s1,) = compute_jacobson_si(L2, x, y)
            assert np.array_equal(s1, L2.br(x, y))
    assert len(compute_jacobson_si(W, W.basis(0), W.basis(1))) == 4


def test_si_p3_example():
    L = two_dim(3, (0, 1))
    s1, s2 = compute_jacobson_si(L, [1, 0], [0, 1])
    assert not s1.any()
    assert s2.tolist() == [0, 1]


def test_extend_pmap_examples():
    L = extend_pmap(LiePresentation(3, 2, None, None), np.zeros((2, 2)))
    assert all(not L.pth_power(x).any() for x in all_vectors(3, 2))
    L = extend_pmap(two_dim(2, (0, 1)), [[1, 0], [0, 0]])
    assert L.pth_power([1, 1]).tolist() == [1, 1]
    assert check_restricted_lie(L).passed
    W = registry.witt(5)
    images = np.zeros((5, 5), dtype=np.int64)
    images[1, 1] = 1
    assert np.array_equal(extend_pmap(W.with_pmap(None), images).pmap_on_basis, W.pmap_on_basis)


def test_extend_pmap_rejects_bad_images():
    with pytest.raises(ValueError, match="index 1"):
        extend_pmap(two_dim(2, (0, 1)), [[0, 0], [0, 0]])


@pytest.mark.parametrize("p", [3, 5])
def test_pmap_agrees_with_operator_power(p):
    W = registry.witt(p)
    mats = witt_operators(p)
    rng = np.random.default_rng(p)
    for _ in range(30):
        x = rng.integers(0, p, size=p)
        assert tuple(W.pth_power(x).tolist()) == matrix_pth_power(mats, tuple(x.tolist()), p)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=2, max_size=2), st.permutations([0, 1]))
def test_pmap_independent_of_expansion_order(x, order):
    L = registry.get("toy3_solv_A1").L
    assert np.array_equal(L.pth_power(x), L.pth_power(x, order=order))


def test_pmap_order_independent_witt_exhaustive_small():
    W = registry.witt(3)
    for x in all_vectors(3, 3):
        assert np.array_equal(W.pth_power(x), W.pth_power(x, order=[2, 0, 1]))


# -- modules and derivations of L --------------------------------------------------


def test_adjoint_module_restricted():
    for L in (registry.witt(5), rlr_of("rigid_A4").L, registry.get("toy3_solv_A1").L):
        ad = np.array([L.ad(L.basis(i)) for i in range(L.dim)])
        assert check_restricted_module(L, ad).passed


def test_inner_derivations_restricted():
    L = registry.witt(3)
    for i in range(L.dim):
        assert check_restricted_derivation(L, L.ad(L.basis(i))).passed


def test_non_derivation_detected():
    L = rlr_of("rigid_A4").L
    rep = check_restricted_derivation(L, np.array([[1, 0], [0, 0]]))
    assert not rep.passed


# -- restricted Lie-Rinehart algebras -----------------------------------------------


@pytest.mark.parametrize("name", registry.CHAR2_RLR + registry.CHAR3_TOYS + ["toy3_trunc"])
def test_builtin_rlr_pass(name):
    rep = check_rlr(rlr_of(name))
    assert rep.passed, rep.failures()


@pytest.mark.parametrize("lam", [(1, 0), (1, 1), (0, 1)])
def test_lab1_family_passes(lam):
    assert check_rlr(registry.Lab1_A4(*lam).rlr()).passed


def test_rigid_with_bad_anchor_fails_a_linearity():
    R = rlr_of("rigid_A4")
    anchor = R.anchor.copy()
    anchor[1] = [[0, 0], [0, 1]]
    bad = RLRAlgebra(R.A, R.L, R.act, anchor)
    rep = check_rlr(bad)
    assert rep.check("anchor is A-linear: rho(a x) = a rho(x)").passed is False


@pytest.mark.parametrize("name", registry.CHAR2_RLR + registry.CHAR3_TOYS)
def test_anchor_lands_in_der(name):
    R = rlr_of(name)
    for D in R.anchor:
        assert R.der.contains(D)


def test_lr_representation_anchor_on_A():
    R = rlr_of("rigid_A4")
    MA = np.array([R.A.left(R.A.basis(a)) for a in range(2)])
    rep = check_lr_representation(R, MA, R.anchor)
    assert rep.passed, rep.failures()
