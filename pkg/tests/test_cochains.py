import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rlr_of
from rlr import registry
from rlr.cochains import (
    CharacteristicError,
    Cochain,
    CochainSpace,
    LRComplex,
    LRValidationError,
    MorphismCochain,
    MorphismComplex,
    adjoint_module,
    d_ce,
    d_res,
    delta1_at,
    eval_omega,
)
from rlr.cohomology import certify_complexes, lr_cochain
from rlr.report import all_vectors

CHAR2 = ["rigid_A4", "Lab0_A4", "Lab1_A4", "DerA4"]


def der_coords(R, mats):
    return np.array([R.der.coords(m) for m in mats], dtype=np.int64).reshape(len(mats), R.der.dim)


# -- eval_omega ------------------------------------------------------------------


def test_eval_omega_zero_and_scaling():
    L = registry.witt(3)
    space = CochainSpace(adjoint_module(L), 2)
    c = space.random(np.random.default_rng(1))
    assert not eval_omega(c, np.zeros(3, dtype=np.int64), (), 3).any()
    for i in range(3):
        e = L.basis(i)
        assert np.array_equal(eval_omega(c, 2 * e, (), 3), 4 * c.omega[i] % 3)


def test_eval_omega_lab0_example():
    c = Cochain(2, registry.MU["mu1"], registry.OMEGA["omega4"])
    assert eval_omega(c, [1, 1]).tolist() == [1, 1]


@pytest.mark.parametrize("n", [2, 3])
def test_polarization_and_association(n):
    R = rlr_of("rigid_A4")
    space = CochainSpace(adjoint_module(R.L), n)
    rng = np.random.default_rng(n)
    for _ in range(10):
        c = space.random(rng)
        Z = [np.array([1, 1])] * (n - 2)
        for x in all_vectors(2, 2):
            for y in all_vectors(2, 2):
                lhs = eval_omega(c, (x + y) % 2, Z)
                phi = np.einsum("i,j,ij...->...", x, y, c.phi)
                if n == 3:
                    phi = np.einsum("k,k...->...", Z[0], phi)
                assert np.array_equal(lhs, (eval_omega(c, x, Z) + eval_omega(c, y, Z) + phi) % 2)


def test_eval_omega_arity():
    c = Cochain(2, registry.MU["mu1"], registry.OMEGA["omega4"])
    with pytest.raises(ValueError):
        eval_omega(c, [1, 0], [[1, 0]])


# -- d_CE and the restricted differential -------------------------------------------


def test_d1_identity_is_bracket():
    L = rlr_of("rigid_A4").L
    mod = adjoint_module(L)
    assert np.array_equal(d_ce(mod, np.eye(2, dtype=np.int64), 1), L.bracket)


def test_d_abelian_trivial_vanishes():
    L = rlr_of("Lab0_A4").L
    mod = adjoint_module(L)
    for n in (1, 2):
        space = CochainSpace(mod, n)
        for k in range(space.dim):
            assert d_res(mod, space.unit(k)).is_zero()


def test_delta1_identity_is_pmap():
    L = rlr_of("rigid_A4").L
    mod = adjoint_module(L)
    ident = Cochain(1, np.eye(2, dtype=np.int64))
    for x in all_vectors(2, 2):
        assert np.array_equal(delta1_at(mod, ident, x), L.pth_power(x))


def test_delta2_of_lab0_cocycle_vanishes():
    L = rlr_of("Lab0_A4").L
    out = d_res(adjoint_module(L), Cochain(2, registry.MU["mu1"], registry.OMEGA["omega4"]))
    assert out.is_zero()


def test_restricted_differential_needs_char2():
    L = registry.get("toy3_solv_A1").L
    mod = adjoint_module(L)
    with pytest.raises(CharacteristicError):
        delta1_at(mod, Cochain(1, np.eye(2, dtype=np.int64)), [1, 0])


@pytest.mark.parametrize("n", [1, 2])
def test_dd_zero_random_rigid(n):
    L = rlr_of("rigid_A4").L
    mod = adjoint_module(L)
    space = CochainSpace(mod, n)
    rng = np.random.default_rng(7)
    for _ in range(50):
        c = space.random(rng)
        assert not d_ce(mod, d_ce(mod, c.phi, n), n + 1).any()
        assert d_res(mod, d_res(mod, c)).is_zero()


# -- morphism complex -------------------------------------------------------------------


def test_alpha_beta_zero():
    R = rlr_of("rigid_A4")
    mc = MorphismComplex(R)
    z = mc.zero(2)
    assert mc.alpha_beta(z.first, z.second, z.third).is_zero()


def test_alpha_of_bracket_against_anchor():
    R = rlr_of("rigid_A4")
    mc = MorphismComplex(R)
    first = Cochain(2, R.L.bracket, R.L.pmap_on_basis)
    s1, s2, s3 = mc.spaces(2)
    rho = Cochain(1, R.rho_coords.T.copy())
    # rho o [.,.] is the CE differential of rho itself
    out = mc.alpha_beta(first, s2.zero(), rho)
    assert not out.phi.any()


def test_alpha_beta_lab0_theta1():
    R = rlr_of("Lab0_A4")
    mc = MorphismComplex(R)
    _, s2, _ = mc.spaces(2)
    theta = Cochain(1, der_coords(R, registry.THETA["theta1"]))
    out = mc.alpha_beta(Cochain(2, registry.MU["mu1"], registry.OMEGA["omega4"]), s2.zero(), theta)
    assert out.is_zero()


def test_d1_third_component_formula():
    R = rlr_of("rigid_A4")
    mc = MorphismComplex(R)
    rng = np.random.default_rng(3)
    for _ in range(20):
        m = mc.from_vector(1, rng.integers(0, 2, mc.dim(1)))
        m = MorphismCochain(1, m.first, mc.spaces(1)[1].zero(), m.third)
        out = mc.differential(m).third
        d = R.der.to_matrix(m.third.phi)
        for i in range(2):
            x = R.L.basis(i)
            expect = (R.rho(m.first.phi[i]) + R.rho(x) @ d - d @ R.rho(x)) % 2
            assert np.array_equal(R.der.to_matrix(out.phi[i]), expect)


@pytest.mark.parametrize("name", ["rigid_A4", "DerA4"])
def test_morphism_dd_zero_random(name):
    mc = MorphismComplex(rlr_of(name))
    rng = np.random.default_rng(11)
    for n in (1, 2):
        for _ in range(50):
            m = mc.from_vector(n, rng.integers(0, 2, mc.dim(n)))
            assert not mc.to_vector(mc.differential(mc.differential(m))).any()


# -- Lie-Rinehart sub-complex --------------------------------------------------------------


@pytest.mark.parametrize("name", CHAR2)
def test_violations_match_pointwise_residuals(name):
    lr = LRComplex(rlr_of(name))
    rng = np.random.default_rng(5)
    for n in (1, 2, 3):
        for _ in range(30):
            c = lr.from_vector(n, rng.integers(0, 2, lr.dim(n)))
            pointwise = [k for k, v in lr.constraint_residuals(c).items() if v.any()]
            assert lr.violations(c) == pointwise


def test_embed_project_roundtrip():
    R = rlr_of("Lab0_A4")
    lr = LRComplex(R)
    c = lr_cochain(lr, registry.named_triple("mu1", "omega4", "theta1"))
    m = lr.embed(c)
    assert not m.second.phi.any()
    assert np.array_equal(m.first.phi, registry.MU["mu1"]) and np.array_equal(m.first.omega, registry.OMEGA["omega4"])
    assert lr.project(m) == c


def test_project_rejects_middle_component():
    R = rlr_of("rigid_A4")
    lr = LRComplex(R)
    m = lr.embed(lr.zero(2))
    _, s2, _ = lr.mc.spaces(2)
    bad = MorphismCochain(2, m.first, s2.unit(0), m.third)
    with pytest.raises(LRValidationError):
        lr.project(bad)


def test_project_rejects_constraint_violation():
    R = rlr_of("Lab0_A4")
    lr = LRComplex(R)
    c = lr_cochain(lr, registry.named_triple("mu1", "0", "0"))
    with pytest.raises(LRValidationError, match="mu\\(x, ay\\)"):
        lr.project(lr.embed(c))


def test_lab0_first_differential_vanishes():
    lr = LRComplex(rlr_of("Lab0_A4"))
    for v in lr.lr_space(1).vectors:
        assert not lr.to_vector(lr.differential(lr.from_vector(1, v))).any()


@pytest.mark.parametrize("name", CHAR2)
def test_differential_commutes_with_embedding(name):
    lr = LRComplex(rlr_of(name))
    rng = np.random.default_rng(5)
    for n in (1, 2, 3):
        for _ in range(10):
            c = lr.random(n, rng)
            assert lr.embed(lr.differential(c)) == lr.mc.differential(lr.embed(c))


@pytest.mark.parametrize("name", CHAR2)
def test_sum_preserves_constraints(name):
    lr = LRComplex(rlr_of(name))
    rng = np.random.default_rng(9)
    for n in (1, 2, 3):
        for _ in range(10):
            u, v = lr.lr_space(n).random_element(rng), lr.lr_space(n).random_element(rng)
            assert not lr.violations(lr.from_vector(n, (u + v) % 2))


def test_lr_dd_zero_rigid_random():
    lr = LRComplex(rlr_of("rigid_A4"))
    rng = np.random.default_rng(13)
    for _ in range(50):
        c = lr.random(1, rng)
        assert not lr.to_vector(lr.differential(lr.differential(c))).any()


@pytest.mark.parametrize("name", CHAR2)
def test_certify_degree_3(name):
    rep = certify_complexes(rlr_of(name), 3)
    assert rep.passed, rep.failures()


def test_certify_degree_4_rigid():
    rep = certify_complexes(rlr_of("rigid_A4"), 4)
    assert rep.passed, rep.failures()
    assert rep.values["C4_LR_dim"] >= 0


def test_gamma_rule_switch():
    R = rlr_of("Lab0_A4")
    strict, loose = LRComplex(R), LRComplex(R, gamma_first_slot="none")
    assert loose.lr_space(4).dim >= strict.lr_space(4).dim
    with pytest.raises(ValueError):
        LRComplex(R, gamma_first_slot="other")


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=6, max_size=6))
def test_degree2_chart_roundtrip(bits):
    lr = LRComplex(rlr_of("DerA4"))
    v = np.array(bits[: lr.dim(2)], dtype=np.int64)
    v = np.resize(v, lr.dim(2))
    assert np.array_equal(lr.to_vector(lr.from_vector(2, v)), v)
