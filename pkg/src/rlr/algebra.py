"""Structure-constant presentations and axiom checkers.

Conventions used throughout the package:

* ``mult[i, j, k]`` is the coefficient of ``e_k`` in ``e_i e_j`` (algebra A).
* ``bracket[i, j, k]`` is the coefficient of ``x_k`` in ``[x_i, x_j]`` (Lie L).
* ``act[a, j, k]`` is the coefficient of ``x_k`` in ``e_a . x_j``.
* A derivation or any endomorphism of A is a matrix ``D`` acting on column
  coordinate vectors, so ``D[k, j]`` is the coefficient of ``e_k`` in
  ``D(e_j)``.  The anchor is stored as one such matrix per basis vector of L.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from .gfp import (
    SubspaceBasis,
    check_modulus,
    inv,
    matpow,
    nullspace_array,
)
from .report import DEFAULT_BUDGET, Report, pairs, points


def _tensor(a, shape, p) -> np.ndarray:
    t = np.zeros(shape, dtype=np.int64) if a is None else np.asarray(a, dtype=np.int64)
    if t.shape != tuple(shape):
        raise ValueError(f"expected shape {tuple(shape)}, got {t.shape}")
    t = t % p
    t.setflags(write=False)
    return t


def _vec(v, p) -> np.ndarray:
    return np.asarray(v, dtype=np.int64) % p


# ---------------------------------------------------------------------------
# commutative associative algebra A
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    p: int
    dim: int
    mult: np.ndarray = None
    name: str = "A"
    basis_labels: tuple[str, ...] = ()

    def __post_init__(self):
        check_modulus(self.p)
        object.__setattr__(self, "mult", _tensor(self.mult, (self.dim,) * 3, self.p))
        if not self.basis_labels:
            object.__setattr__(self, "basis_labels", tuple(f"e{i + 1}" for i in range(self.dim)))

    def mul(self, a, b) -> np.ndarray:
        d = self.dim
        return _vec(b, self.p) @ (_vec(a, self.p) @ self.mult.reshape(d, d * d)).reshape(d, d) % self.p

    def left(self, a) -> np.ndarray:
        """Matrix of ``b -> a b``."""
        return np.einsum("i,ijk->kj", _vec(a, self.p), self.mult) % self.p

    def power(self, a, k: int) -> np.ndarray:
        if k < 1:
            raise ValueError("A need not be unital; only positive powers exist")
        out = _vec(a, self.p)
        for _ in range(k - 1):
            out = self.mul(out, a)
        return out

    def basis(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[i] = 1
        return e

    @cached_property
    def derivations(self) -> SubspaceBasis:
        return compute_derivations(self)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraPresentation)
            and (self.p, self.dim) == (other.p, other.dim)
            and np.array_equal(self.mult, other.mult)
        )

    __hash__ = object.__hash__


def check_commutative_associative(A: AlgebraPresentation) -> Report:
    rep = Report("check_commutative_associative")
    c, d = A.mult, A.dim
    wit = None
    for i, j in product(range(d), repeat=2):
        if not np.array_equal(c[i, j], c[j, i]):
            wit = [i + 1, j + 1]
            break
    rep.add("A commutative", wit is None, wit)
    wit = None
    eye = np.eye(d, dtype=np.int64)
    for i, j, k in product(range(d), repeat=3):
        lhs = A.mul(A.mul(eye[i], eye[j]), eye[k])
        rhs = A.mul(eye[i], A.mul(eye[j], eye[k]))
        if not np.array_equal(lhs, rhs):
            wit = [i + 1, j + 1, k + 1]
            break
    rep.add("A associative", wit is None, wit)
    return rep


# ---------------------------------------------------------------------------
# derivations of A
# ---------------------------------------------------------------------------


def is_derivation(A: AlgebraPresentation, D) -> tuple[bool, list | None]:
    D = _vec(D, A.p)
    eye = np.eye(A.dim, dtype=np.int64)
    for i, j in product(range(A.dim), repeat=2):
        lhs = D @ A.mul(eye[i], eye[j]) % A.p
        rhs = (A.mul(D @ eye[i], eye[j]) + A.mul(eye[i], D @ eye[j])) % A.p
        if not np.array_equal(lhs, rhs):
            return False, [i + 1, j + 1]
    return True, None


def compute_derivations(A: AlgebraPresentation) -> SubspaceBasis:
    """Solve the Leibniz system; vectors are row-major flattened matrices."""
    n, p = A.dim, A.p
    cols = []
    eye = np.eye(n, dtype=np.int64)
    for u in range(n * n):
        D = np.zeros(n * n, dtype=np.int64)
        D[u] = 1
        D = D.reshape(n, n)
        res = []
        for i, j in product(range(n), repeat=2):
            r = D @ A.mul(eye[i], eye[j]) - A.mul(D @ eye[i], eye[j]) - A.mul(eye[i], D @ eye[j])
            res.append(r % p)
        cols.append(np.concatenate(res) if res else np.zeros(0, dtype=np.int64))
    system = np.array(cols, dtype=np.int64).T.reshape(-1, n * n) if n else np.zeros((0, 0), dtype=np.int64)
    return SubspaceBasis(n * n, p, nullspace_array(system, p) if n else None)


def pth_power_derivation(A: AlgebraPresentation, D) -> np.ndarray:
    return matpow(_vec(D, A.p), A.p, A.p)


@dataclass(frozen=True, eq=False)
class DerivationSpace:
    """Coordinates on Der(A) relative to its canonical echelon basis."""

    A: AlgebraPresentation

    @cached_property
    def basis(self) -> np.ndarray:
        n = self.A.dim
        return self.A.derivations.vectors.reshape(-1, n, n)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @cached_property
    def _pivots(self) -> list[int]:
        flat = self.A.derivations.vectors
        return [int(np.nonzero(row)[0][0]) for row in flat]

    def to_matrix(self, coords) -> np.ndarray:
        c = _vec(coords, self.A.p)
        if self.dim == 0:
            return np.zeros((self.A.dim, self.A.dim), dtype=np.int64)
        return np.einsum("i,ijk->jk", c, self.basis) % self.A.p

    def coords(self, D) -> np.ndarray:
        """Coordinates of a derivation matrix; raises if ``D`` is not in Der(A)."""
        D = _vec(D, self.A.p)
        c = D.reshape(-1)[self._pivots] if self.dim else np.zeros(0, dtype=np.int64)
        if not np.array_equal(self.to_matrix(c), D):
            raise ValueError("matrix is not a derivation of A")
        return c

    def contains(self, D) -> bool:
        try:
            self.coords(D)
        except ValueError:
            return False
        return True

    @cached_property
    def lie(self) -> "LiePresentation":
        """Der(A) as a restricted Lie algebra (commutator, ``D -> D^p``)."""
        k, p = self.dim, self.A.p
        br = np.zeros((k, k, k), dtype=np.int64)
        for i, j in product(range(k), repeat=2):
            Bi, Bj = self.basis[i], self.basis[j]
            br[i, j] = self.coords(Bi @ Bj - Bj @ Bi)
        pm = np.array(
            [self.coords(matpow(self.basis[i], p, p)) for i in range(k)], dtype=np.int64
        ).reshape(k, k)
        return LiePresentation(p, k, br, pm, name="Der(A)")


# ---------------------------------------------------------------------------
# restricted Lie algebra L
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LiePresentation:
    p: int
    dim: int
    bracket: np.ndarray = None
    pmap_on_basis: np.ndarray | None = None
    name: str = "L"
    basis_labels: tuple[str, ...] = ()

    def __post_init__(self):
        check_modulus(self.p)
        object.__setattr__(self, "bracket", _tensor(self.bracket, (self.dim,) * 3, self.p))
        if self.pmap_on_basis is not None:
            object.__setattr__(
                self, "pmap_on_basis", _tensor(self.pmap_on_basis, (self.dim, self.dim), self.p)
            )
        if not self.basis_labels:
            object.__setattr__(self, "basis_labels", tuple(f"x{i + 1}" for i in range(self.dim)))

    def br(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", _vec(x, self.p), _vec(y, self.p), self.bracket) % self.p

    def ad(self, x) -> np.ndarray:
        """Matrix of ``y -> [x, y]``."""
        return np.einsum("i,ijk->kj", _vec(x, self.p), self.bracket) % self.p

    def basis(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[i] = 1
        return e

    def with_pmap(self, pmap_on_basis) -> "LiePresentation":
        return LiePresentation(self.p, self.dim, self.bracket, pmap_on_basis, self.name, self.basis_labels)

    def si(self, x, y) -> list[np.ndarray]:
        return compute_jacobson_si(self, x, y)

    def pth_power(self, v, order=None) -> np.ndarray:
        """Evaluate the p-map at an arbitrary vector.

        The value is built up one basis component at a time using
        ``(x+y)^[p] = x^[p] + y^[p] + sum_i s_i(x, y)`` and
        ``(c e_j)^[p] = c^p f_j``; ``order`` fixes the sequence in which the
        components are added.
        """
        if self.pmap_on_basis is None:
            raise ValueError("Lie algebra has no p-map")
        p = self.p
        v = _vec(v, p)
        acc = np.zeros(self.dim, dtype=np.int64)
        acc_pow = np.zeros(self.dim, dtype=np.int64)
        for j in order if order is not None else range(self.dim):
            c = int(v[j])
            if c == 0:
                continue
            term = np.zeros(self.dim, dtype=np.int64)
            term[j] = c
            term_pow = pow(c, p, p) * self.pmap_on_basis[j] % p
            corr = sum(compute_jacobson_si(self, acc, term), np.zeros(self.dim, dtype=np.int64))
            acc_pow = (acc_pow + term_pow + corr) % p
            acc = (acc + term) % p
        return acc_pow

    def __eq__(self, other):
        if not isinstance(other, LiePresentation):
            return False
        same_pm = (self.pmap_on_basis is None and other.pmap_on_basis is None) or (
            self.pmap_on_basis is not None
            and other.pmap_on_basis is not None
            and np.array_equal(self.pmap_on_basis, other.pmap_on_basis)
        )
        return (self.p, self.dim) == (other.p, other.dim) and np.array_equal(self.bracket, other.bracket) and same_pm

    __hash__ = object.__hash__


def compute_jacobson_si(L: LiePresentation, x, y) -> list[np.ndarray]:
    """The correction terms ``s_1(x,y), ..., s_{p-1}(x,y)``.

    ``(ad_{lam x + y})^{p-1}(x)`` is expanded as a polynomial in the formal
    scalar ``lam`` with L-valued coefficients; ``s_i`` is the coefficient of
    ``lam^{i-1}`` divided by ``i``.
    """
    p = L.p
    x, y = _vec(x, p), _vec(y, p)
    adx, ady = L.ad(x), L.ad(y)
    poly = np.zeros((p, L.dim), dtype=np.int64)
    poly[0] = x
    for _ in range(p - 1):
        new = (poly @ ady.T) % p
        new[1:] = (new[1:] + poly[:-1] @ adx.T) % p
        poly = new
    assert not poly[p - 1].any()
    return [(poly[i - 1] * inv(i, p)) % p for i in range(1, p)]


def extend_pmap(L: LiePresentation, images) -> LiePresentation:
    """Attach the unique p-map sending ``e_j`` to ``images[j]``.

    Raises ``ValueError`` naming the first basis index where
    ``(ad e_j)^p != ad f_j``.
    """
    p = L.p
    images = np.asarray(images, dtype=np.int64).reshape(L.dim, L.dim) % p
    for j in range(L.dim):
        if not np.array_equal(matpow(L.ad(L.basis(j)), p, p), L.ad(images[j])):
            raise ValueError(f"Jacobson hypothesis fails at basis index {j + 1}: (ad e_j)^p != ad f_j")
    return L.with_pmap(images)


def check_restricted_lie(L: LiePresentation, budget: int = DEFAULT_BUDGET) -> Report:
    rep = Report("check_restricted_lie")
    p, d, b = L.p, L.dim, L.bracket
    eye = np.eye(d, dtype=np.int64)

    wit = None
    for i, j in product(range(d), repeat=2):
        if not np.array_equal((b[i, j] + b[j, i]) % p, np.zeros(d)) or b[i, i].any():
            wit = [i + 1, j + 1]
            break
    rep.add("antisymmetry", wit is None, wit)

    wit = None
    for i, j, k in product(range(d), repeat=3):
        x, y, z = eye[i], eye[j], eye[k]
        s = L.br(x, L.br(y, z)) + L.br(y, L.br(z, x)) + L.br(z, L.br(x, y))
        if (s % p).any():
            wit = [i + 1, j + 1, k + 1]
            break
    rep.add("Jacobi", wit is None, wit)

    if L.pmap_on_basis is None:
        rep.add("p-map present", False, note="no p-map given")
        return rep

    wit = None
    for i in range(d):
        if not np.array_equal(L.ad(L.pmap_on_basis[i]), matpow(L.ad(eye[i]), p, p)):
            wit = [i + 1]
            break
    rep.add("ad(e_i^[p]) = (ad e_i)^p on basis", wit is None, wit)

    pts, full = points(p, d, budget)
    wit = None
    for x in pts:
        xp = L.pth_power(x)
        if not np.array_equal(L.ad(xp), matpow(L.ad(x), p, p)):
            wit = x.tolist()
            break
        for lam in range(2, p):
            if not np.array_equal(L.pth_power(lam * x % p), pow(lam, p, p) * xp % p):
                wit = [lam, x.tolist()]
                break
        if wit is not None:
            break
    rep.add(
        "ad(x^[p]) = (ad x)^p and (lam x)^[p] = lam^p x^[p] for extended p-map",
        wit is None,
        wit,
        "" if full else "partial verification: basis multiples and pairwise sums only",
    )

    wit = None
    if p ** (2 * d) <= budget:
        xy = [(x, y) for x in pts for y in pts]
        full_pairs = True
    else:
        probe = points(p, d, 0)[0]
        xy = [(x, y) for x in probe for y in probe]
        full_pairs = False
    for x, y in xy:
        lhs = L.pth_power((x + y) % p)
        rhs = (L.pth_power(x) + L.pth_power(y) + sum(compute_jacobson_si(L, x, y), np.zeros(d, dtype=np.int64))) % p
        if not np.array_equal(lhs, rhs):
            wit = [x.tolist(), y.tolist()]
            break
    rep.add(
        "(x+y)^[p] = x^[p] + y^[p] + sum s_i(x,y)",
        wit is None,
        wit,
        "" if full_pairs else "partial verification: pairs drawn from basis multiples and pairwise sums",
    )
    return rep


def check_restricted_module(L: LiePresentation, action, budget: int = DEFAULT_BUDGET) -> Report:
    """``action[i]`` is the matrix of ``x_i`` acting on the module."""
    rep = Report("check_restricted_module")
    p, d = L.p, L.dim
    act = np.asarray(action, dtype=np.int64) % p
    eye = np.eye(d, dtype=np.int64)

    def rep_of(x):
        return np.einsum("i,ijk->jk", x, act) % p

    wit = None
    for i, j in product(range(d), repeat=2):
        lhs = rep_of(L.br(eye[i], eye[j]))
        rhs = (act[i] @ act[j] - act[j] @ act[i]) % p
        if not np.array_equal(lhs, rhs):
            wit = [i + 1, j + 1]
            break
    rep.add("[x,y].m = x.(y.m) - y.(x.m)", wit is None, wit)
    pts, full = points(p, d, budget)
    wit = None
    for x in pts:
        if not np.array_equal(rep_of(L.pth_power(x)), matpow(rep_of(x), p, p)):
            wit = x.tolist()
            break
    rep.add("x^[p].m = x...x.m", wit is None, wit, "" if full else "partial verification")
    return rep


def check_restricted_derivation(L: LiePresentation, d_map, budget: int = DEFAULT_BUDGET) -> Report:
    rep = Report("check_restricted_derivation")
    p, d = L.p, L.dim
    D = np.asarray(d_map, dtype=np.int64) % p
    eye = np.eye(d, dtype=np.int64)
    wit = None
    for i, j in product(range(d), repeat=2):
        x, y = eye[i], eye[j]
        if not np.array_equal(D @ L.br(x, y) % p, (L.br(D @ x, y) + L.br(x, D @ y)) % p):
            wit = [i + 1, j + 1]
            break
    rep.add("d[x,y] = [dx,y] + [x,dy]", wit is None, wit)
    pts, full = points(p, d, budget)
    wit = None
    for x in pts:
        lhs = D @ L.pth_power(x) % p
        rhs = matpow(L.ad(x), p - 1, p) @ (D @ x % p) % p
        if not np.array_equal(lhs, rhs):
            wit = x.tolist()
            break
    rep.add("d(x^[p]) = ad_x^(p-1) d(x)", wit is None, wit, "" if full else "partial verification")
    return rep


# ---------------------------------------------------------------------------
# restricted Lie-Rinehart algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ModuleAction:
    act: np.ndarray  # (dim A, dim L, dim L)


@dataclass(frozen=True, eq=False)
class RLRAlgebra:
    A: AlgebraPresentation
    L: LiePresentation
    act: np.ndarray = None
    anchor: np.ndarray = None
    name: str = ""

    def __post_init__(self):
        if self.A.p != self.L.p:
            raise ValueError("A and L are over different fields")
        p, dA, dL = self.p, self.A.dim, self.L.dim
        object.__setattr__(self, "act", _tensor(self.act, (dA, dL, dL), p))
        object.__setattr__(self, "anchor", _tensor(self.anchor, (dL, dA, dA), p))

    @property
    def p(self) -> int:
        return self.A.p

    @cached_property
    def der(self) -> DerivationSpace:
        return DerivationSpace(self.A)

    @cached_property
    def act_mats(self) -> np.ndarray:
        """``act_mats[a]`` is the matrix of ``x -> e_a . x``."""
        return np.transpose(self.act, (0, 2, 1)).copy()

    def action_matrix(self, a) -> np.ndarray:
        d = self.L.dim
        return (_vec(a, self.p) @ self.act_mats.reshape(self.A.dim, d * d)).reshape(d, d) % self.p

    def smul(self, a, x) -> np.ndarray:
        return self.action_matrix(a) @ _vec(x, self.p) % self.p

    def rho(self, x) -> np.ndarray:
        return np.einsum("i,ijk->jk", _vec(x, self.p), self.anchor) % self.p

    @cached_property
    def rho_coords(self) -> np.ndarray:
        """Matrix (dim Der(A) x dim L) of the anchor in Der(A) coordinates."""
        k = self.der.dim
        out = np.zeros((k, self.L.dim), dtype=np.int64)
        for i in range(self.L.dim):
            out[:, i] = self.der.coords(self.anchor[i])
        return out

    @cached_property
    def anchor_action(self) -> np.ndarray:
        """``x . D = [rho(x), D]`` on Der(A), as matrices per basis vector of L."""
        M = self.der.lie
        return np.array(
            [M.ad(self.rho_coords[:, i]) for i in range(self.L.dim)], dtype=np.int64
        ).reshape(self.L.dim, M.dim, M.dim)

    def a_times(self, a, D) -> np.ndarray:
        """``(a D)(b) = a D(b)`` as a matrix."""
        return self.A.left(a) @ _vec(D, self.p) % self.p


def check_rlr(R: RLRAlgebra, budget: int = DEFAULT_BUDGET) -> Report:
    rep = Report("check_rlr")
    p, A, L = R.p, R.A, R.L
    dA, dL = A.dim, L.dim
    rep.extend(check_commutative_associative(A))
    rep.extend(check_restricted_lie(L, budget))
    eA, eL = np.eye(dA, dtype=np.int64), np.eye(dL, dtype=np.int64)

    wit = None
    for a, b, j in product(range(dA), range(dA), range(dL)):
        lhs = R.smul(eA[a], R.smul(eA[b], eL[j]))
        rhs = R.smul(A.mul(eA[a], eA[b]), eL[j])
        if not np.array_equal(lhs, rhs):
            wit = [a + 1, b + 1, j + 1]
            break
    rep.add("action associative: a.(b.x) = (ab).x", wit is None, wit)

    wit = None
    for i in range(dL):
        ok, w = is_derivation(A, R.anchor[i])
        if not ok:
            wit = [i + 1, w]
            break
    rep.add("anchor takes values in Der(A)", wit is None, wit)
    if wit is not None:
        return rep

    wit = None
    for i, j in product(range(dL), repeat=2):
        lhs = R.rho(L.br(eL[i], eL[j]))
        ri, rj = R.anchor[i], R.anchor[j]
        if not np.array_equal(lhs, (ri @ rj - rj @ ri) % p):
            wit = [i + 1, j + 1]
            break
    rep.add("anchor is a Lie morphism", wit is None, wit)

    if L.pmap_on_basis is not None:
        pts, full = points(p, dL, budget)
        wit = None
        for x in pts:
            if not np.array_equal(R.rho(L.pth_power(x)), matpow(R.rho(x), p, p)):
                wit = x.tolist()
                break
        rep.add("anchor is restricted: rho(x^[p]) = rho(x)^p", wit is None, wit, "" if full else "partial verification")

    wit = None
    for a, j in product(range(dA), range(dL)):
        if not np.array_equal(R.rho(R.smul(eA[a], eL[j])), R.a_times(eA[a], R.anchor[j])):
            wit = [a + 1, j + 1]
            break
    rep.add("anchor is A-linear: rho(a x) = a rho(x)", wit is None, wit)

    wit = None
    for i, a, j in product(range(dL), range(dA), range(dL)):
        x, y = eL[i], eL[j]
        lhs = L.br(x, R.smul(eA[a], y))
        rhs = (R.smul(eA[a], L.br(x, y)) + R.smul(R.rho(x) @ eA[a], y)) % p
        if not np.array_equal(lhs, rhs):
            wit = [i + 1, a + 1, j + 1]
            break
    rep.add("Leibniz: [x,ay] = a[x,y] + rho(x)(a)y", wit is None, wit)

    if L.pmap_on_basis is not None:
        ax_pairs, full = pairs(p, dA, dL, budget)
        wit = None
        for a, x in ax_pairs:
            lhs = L.pth_power(R.smul(a, x))
            ap = A.power(a, p)
            coeff = matpow(R.rho(R.smul(a, x)), p - 1, p) @ a % p
            rhs = (R.smul(ap, L.pth_power(x)) + R.smul(coeff, x)) % p
            if not np.array_equal(lhs, rhs):
                wit = [a.tolist(), x.tolist()]
                break
        rep.add(
            "Hochschild: (ax)^[p] = a^p x^[p] + rho(ax)^(p-1)(a) x",
            wit is None,
            wit,
            "" if full else "partial verification: probe set only",
        )
    return rep


def check_lr_representation(R: RLRAlgebra, module_action, pi, budget: int = DEFAULT_BUDGET) -> Report:
    """Representation ``pi : L -> End(M)`` of ``(A, L, rho)``.

    ``module_action[a]`` is the matrix of ``e_a`` on M and ``pi[i]`` that of
    ``x_i``.  The last check is the identity
    ``pi(ax)^p = a^p pi(x)^p + rho(ax)^(p-1)(a) pi(x)``, reading the symbol
    written ``pi_x`` there as ``pi(x)``.
    """
    rep = Report("check_lr_representation")
    p, A, L = R.p, R.A, R.L
    dA, dL = A.dim, L.dim
    MA = np.asarray(module_action, dtype=np.int64) % p
    P = np.asarray(pi, dtype=np.int64) % p
    eA, eL = np.eye(dA, dtype=np.int64), np.eye(dL, dtype=np.int64)

    def on_m(a):
        return np.einsum("a,ajk->jk", a, MA) % p

    def pi_of(x):
        return np.einsum("i,ijk->jk", x, P) % p

    wit = None
    for a, b in product(range(dA), repeat=2):
        if not np.array_equal(MA[a] @ MA[b] % p, on_m(A.mul(eA[a], eA[b]))):
            wit = [a + 1, b + 1]
            break
    rep.add("M is an A-module", wit is None, wit)

    wit = None
    for i, j in product(range(dL), repeat=2):
        if not np.array_equal(pi_of(L.br(eL[i], eL[j])), (P[i] @ P[j] - P[j] @ P[i]) % p):
            wit = [i + 1, j + 1]
            break
    rep.add("pi is a Lie morphism", wit is None, wit)

    wit = None
    for a, j in product(range(dA), range(dL)):
        if not np.array_equal(pi_of(R.smul(eA[a], eL[j])), MA[a] @ P[j] % p):
            wit = [a + 1, j + 1]
            break
    rep.add("pi is A-linear", wit is None, wit)

    wit = None
    for i, a in product(range(dL), range(dA)):
        lhs = P[i] @ MA[a] % p
        rhs = (MA[a] @ P[i] + on_m(R.rho(eL[i]) @ eA[a])) % p
        if not np.array_equal(lhs, rhs):
            wit = [i + 1, a + 1]
            break
    rep.add("pi(x)(am) = a pi(x)(m) + rho(x)(a) m", wit is None, wit)

    ax_pairs, full = pairs(p, dA, dL, budget)
    wit = None
    for a, x in ax_pairs:
        ax = R.smul(a, x)
        lhs = matpow(pi_of(ax), p, p)
        coeff = matpow(R.rho(ax), p - 1, p) @ a % p
        rhs = (on_m(A.power(a, p)) @ matpow(pi_of(x), p, p) + on_m(coeff) @ pi_of(x)) % p
        if not np.array_equal(lhs, rhs):
            wit = [a.tolist(), x.tolist()]
            break
    rep.add(
        "pi(ax)^p = a^p pi(x)^p + rho(ax)^(p-1)(a) pi(x)",
        wit is None,
        wit,
        "reading pi_x as pi(x)" + ("" if full else "; partial verification"),
    )
    rep.note("the p-th power identity for representations reads the symbol pi_x as pi(x)")
    return rep
