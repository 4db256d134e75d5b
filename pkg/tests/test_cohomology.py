import numpy as np
import pytest

from conftest import plain, rlr_of
from oracles import brute_z2_lr
from rlr import registry
from rlr.cochains import Cochain, CochainSpace, LRComplex, LRValidationError, adjoint_module
from rlr.cohomology import (
    PCochain2,
    candidate_residual,
    candidate_space,
    cochain_data,
    compute_Z2_B2_H2,
    lr_cochain,
    p_coboundary,
    p_cochain_from_lr,
    theta_solutions,
    verify_p_cocycle,
    verify_trivial_p_cocycle,
)
from rlr.deformation import TruncatedDeformation, extend
from rlr.fileformat import CandidateData

CHAR2 = ["rigid_A4", "Lab0_A4", "Lab1_A4", "DerA4"]
SKIPPED = "ind^2(mu, omega) = 0"


def as_tuple(lr, v):
    d = cochain_data(lr, lr.from_vector(2, v))
    mats = lambda a: tuple(tuple(tuple(r) for r in m) for m in a.tolist())
    return tuple(d.mu[0, 1].tolist()), tuple(tuple(r) for r in d.omega.tolist()), mats(d.theta)


@pytest.mark.parametrize("name", CHAR2)
def test_solver_matches_brute_force(name):
    R = rlr_of(name)
    lr = LRComplex(R)
    res = compute_Z2_B2_H2(R)
    assert {as_tuple(lr, v) for v in res.z_basis.elements()} == brute_z2_lr(plain(R))


@pytest.mark.parametrize(
    "name, z_res, z_lr, b_lr",
    [("rigid_A4", 2, 2, 2), ("Lab0_A4", 6, 4, 0), ("Lab1_A4", 4, 2, 2), ("DerA4", 2, 2, 2)],
)
def test_dimensions(name, z_res, z_lr, b_lr):
    res = compute_Z2_B2_H2(rlr_of(name))
    v = res.values()
    assert (v["Z2_res_dim"], v["Z2_LR_dim"], v["B2_LR_dim"]) == (z_res, z_lr, b_lr)
    assert v["H2_LR_dim"] == z_lr - b_lr
    # the two readings of B^2_LR agree on the built-in examples
    assert v["B2_LR_full_image_dim"] == b_lr


def test_lab0_named_cocycles():
    named = {"+".join(t): registry.named_triple(*t) for t in registry.LAB0_Z2_LR}
    res = compute_Z2_B2_H2(rlr_of("Lab0_A4"), named=named)
    assert all(res.named_cocycle_matches.values()), res.named_cocycle_matches


def test_lab0_restricted_cocycles_listed():
    R = rlr_of("Lab0_A4")
    res = compute_Z2_B2_H2(R)
    space = CochainSpace(adjoint_module(R.L), 2)
    listed = [space.to_vector(Cochain(2, registry.MU[m], registry.OMEGA[w])) for m, w in registry.LAB0_Z2_RES]
    assert all(v in res.z_res for v in listed)
    assert np.linalg.matrix_rank(np.array(listed)) == 6


@pytest.mark.parametrize("lam", [(1, 0), (1, 1), (0, 1)])
def test_lab1_membership(lam):
    R = registry.Lab1_A4(*lam).rlr()
    named = {"+".join(t): registry.named_triple(*t) for t in registry.LAB1_Z2_LR}
    res = compute_Z2_B2_H2(R, named=named)
    assert res.named_cocycle_matches["0+omega1+0"] and res.named_cocycle_matches["0+omega2+0"]
    # (mu1 + mu2, omega4, theta1) violates the restricted quadratic condition here
    assert not res.named_cocycle_matches["mu1+mu2+omega4+theta1"]


@pytest.mark.parametrize("mu, theta", [("mu1", "theta1"), ("mu2", "theta2")])
def test_theta_tables_reproduced(mu, theta):
    R = rlr_of("Lab0_A4")
    part, hom = theta_solutions(R, registry.MU[mu])
    assert hom.dim == 0
    mats = np.array([R.der.to_matrix(c) for c in part.reshape(2, R.der.dim)])
    assert np.array_equal(mats, registry.THETA[theta])


def test_theta_solutions_mu1_mu2_sum():
    R = rlr_of("Lab0_A4")
    part, hom = theta_solutions(R, (registry.MU["mu1"] + registry.MU["mu2"]) % 2)
    mats = np.array([R.der.to_matrix(c) for c in part.reshape(2, R.der.dim)])
    assert np.array_equal(mats, (registry.THETA["theta1"] + registry.THETA["theta2"]) % 2)


@pytest.mark.parametrize("name", CHAR2)
def test_pointwise_verifier_agrees_with_solver(name, rng):
    R = rlr_of(name)
    lr = LRComplex(R)
    res = compute_Z2_B2_H2(R)
    seen = {True: 0, False: 0}
    for k in range(40):
        space = res.z_basis if k % 2 else lr.lr_space(2)
        v = space.random_element(rng)
        rep = verify_p_cocycle(R, p_cochain_from_lr(lr, lr.from_vector(2, v)))
        assert rep.passed == (v in res.z_basis)
        seen[rep.passed] += 1
    assert seen[True] > 0


def test_verifier_witness_on_broken_cocycle():
    R = rlr_of("Lab0_A4")
    lr = LRComplex(R)
    c = p_cochain_from_lr(lr, lr_cochain(lr, registry.named_triple("mu1", "omega4", "theta1")))
    assert verify_p_cocycle(R, c).passed
    c.theta = np.zeros_like(c.theta)
    rep = verify_p_cocycle(R, c)
    assert rep.check("mu(x, ay) = a mu(x,y) + theta(x)(a) y").passed is False


# -- p = 3 ----------------------------------------------------------------------------------


@pytest.mark.parametrize("name", registry.CHAR3_TOYS)
def test_p3_infinitesimals_pass_and_skip(name, rng):
    R = rlr_of(name)
    ext = extend(TruncatedDeformation.undeformed(R, 0))
    for _ in range(10):
        d = ext.sample(rng)
        rep = verify_p_cocycle(R, PCochain2(d.mu[1], d.omega[1], d.rho[1]))
        assert rep.passed
        assert rep.check(SKIPPED).passed is None
        assert "not evaluated" in rep.check(SKIPPED).note


def test_p3_perturbed_table_fails():
    R = rlr_of("toy3_ab_A4")
    omega = np.zeros((9, 2), dtype=np.int64)
    omega[1] = [1, 0]  # only one point: breaks p-homogeneity
    rep = verify_p_cocycle(R, PCochain2(np.zeros((2, 2, 2), dtype=np.int64), omega, np.zeros((2, 2, 2), dtype=np.int64)))
    assert rep.check("omega p-homogeneous").passed is False


def test_p3_omega_shape_checked():
    R = rlr_of("toy3_ab_A4")
    with pytest.raises(ValueError):
        verify_p_cocycle(R, PCochain2(np.zeros((2, 2, 2)), np.zeros((2, 2)), np.zeros((2, 2, 2))))


@pytest.mark.parametrize("name", ["toy3_solv_A1", "toy3_ab_A4"])
def test_p3_coboundaries_are_cocycles(name):
    R = rlr_of(name)
    cands = candidate_space(R)
    assert cands
    for cand in cands[:: max(1, len(cands) // 25)]:
        c = p_coboundary(R, cand)
        rep = verify_p_cocycle(R, c)
        assert rep.passed, (cand.gamma.tolist(), cand.d.tolist(), [f.name for f in rep.failures()])
        assert verify_trivial_p_cocycle(R, c, cand)


def test_trivial_test_rejects_invalid_candidate():
    R = rlr_of("toy3_ab_A4")
    zero = np.zeros((2, 2), dtype=np.int64)
    c = p_coboundary(R, CandidateData(zero, zero))
    # d(e1) = e1 is not a derivation of A
    with pytest.raises(LRValidationError, match="derivation"):
        verify_trivial_p_cocycle(R, c, CandidateData(zero, np.array([[1, 0], [0, 0]])))
    # gamma(y) = x with y = e2 . x but gamma(x) = 0 breaks gamma(ax) = a^p gamma(x) + d(a) x
    cand = CandidateData(np.array([[0, 0], [1, 0]]), zero)
    assert candidate_residual(R, cand)
    with pytest.raises(LRValidationError, match="gamma"):
        verify_trivial_p_cocycle(R, c, cand)


def test_trivial_test_zero_candidate():
    R = rlr_of("toy3_ab_A1")
    zero = CandidateData(np.zeros((2, 2), dtype=np.int64), np.zeros((2, 2), dtype=np.int64))
    c = p_coboundary(R, zero)
    assert verify_trivial_p_cocycle(R, c, zero)
    c.mu = c.mu.copy()
    c.mu[0, 1] = [0, 1]
    c.mu[1, 0] = [0, 2]
    assert not verify_trivial_p_cocycle(R, c, zero)
