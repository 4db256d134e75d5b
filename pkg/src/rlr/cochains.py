"""Cochains and differentials.

A degree-``n`` restricted cochain with values in a module ``V`` over a
restricted Lie algebra ``G`` is stored as a pair of dense tensors:

* ``phi`` with shape ``(dG,)*n + (dV,)``, alternating in the first ``n`` axes;
* ``omega`` (only for ``n >= 2``) with shape ``(dG,)*(n-1) + (dV,)``; the first
  axis indexes the *basis* vector in the quadratic slot, the next ``n-2`` axes
  are the alternating multilinear Z-slots.

``omega`` at a non-basis first argument is obtained by polarization with
``phi`` (characteristic 2):
``omega(sum v_i e_i, Z) = sum v_i^2 omega(e_i, Z) + sum_{i<j} v_i v_j phi(e_i, e_j, Z)``.

Degree 0 cochains are elements of ``V`` (stored in ``phi``); degree 1 cochains
are linear maps (``phi`` of shape ``(dG, dV)``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product

import numpy as np

from .algebra import LiePresentation, RLRAlgebra
from .gfp import nullspace_array, SubspaceBasis
from .report import DEFAULT_BUDGET, all_vectors, required_pairs


class CharacteristicError(ValueError):
    pass


class LRValidationError(ValueError):
    """A cochain fails one of the Lie-Rinehart constraints."""

    def __init__(self, degree: int, constraint: str, message: str = ""):
        self.degree = degree
        self.constraint = constraint
        super().__init__(message or f"degree {degree} cochain violates {constraint}")


def _require_char2(p: int):
    if p != 2:
        raise CharacteristicError("this construction is defined in characteristic 2 only")


def perm_sign(idx) -> tuple[int, tuple]:
    """Sign of the sorting permutation, or 0 when an index repeats."""
    idx = list(idx)
    if len(set(idx)) < len(idx):
        return 0, tuple(sorted(idx))
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


def contract(t: np.ndarray, vecs, p: int) -> np.ndarray:
    """Feed vectors into the leading axes of a multilinear tensor."""
    for v in vecs:
        t = np.tensordot(np.asarray(v, dtype=np.int64), t, axes=(0, 0)) % p
    return t


def alternating_tensor(coords: np.ndarray, d: int, n: int, dv: int, p: int) -> np.ndarray:
    """Fill an alternating tensor from its values on increasing index tuples."""
    t = np.zeros((d,) * n + (dv,), dtype=np.int64)
    if n == 0:
        t[...] = coords.reshape(dv)
        return t % p
    for row, combo in enumerate(combinations(range(d), n)):
        val = coords[row]
        for perm in permutations(combo):
            s, _ = perm_sign(perm)
            t[perm] = (s * val) % p
    return t


def alternating_coords(t: np.ndarray, n: int) -> np.ndarray:
    d = t.shape[0] if n else 0
    if n == 0:
        return t.reshape(1, -1)
    return np.array([t[c] for c in combinations(range(d), n)], dtype=np.int64).reshape(-1, t.shape[-1])


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Module:
    """Restricted G-module V given by the matrices of the basis of G."""

    G: LiePresentation
    act: np.ndarray  # (dG, dV, dV)
    name: str = "V"

    @property
    def p(self) -> int:
        return self.G.p

    @property
    def dim(self) -> int:
        return self.act.shape[1]

    def matrix(self, x) -> np.ndarray:
        return np.einsum("i,ijk->jk", np.asarray(x, dtype=np.int64), self.act) % self.p

    def apply(self, x, v) -> np.ndarray:
        return self.matrix(x) @ np.asarray(v, dtype=np.int64) % self.p


def adjoint_module(G: LiePresentation, name: str = "") -> Module:
    act = np.array([G.ad(G.basis(i)) for i in range(G.dim)], dtype=np.int64).reshape(G.dim, G.dim, G.dim)
    return Module(G, act, name or G.name)


# ---------------------------------------------------------------------------
# cochains
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Cochain:
    degree: int
    phi: np.ndarray
    omega: np.ndarray | None = None

    def __add__(self, other: "Cochain") -> "Cochain":
        return Cochain(self.degree, self.phi + other.phi, None if self.omega is None else self.omega + other.omega)

    def mod(self, p: int) -> "Cochain":
        return Cochain(self.degree, self.phi % p, None if self.omega is None else self.omega % p)

    def scale(self, c: int, p: int) -> "Cochain":
        return Cochain(self.degree, c * self.phi % p, None if self.omega is None else c * self.omega % p)

    def is_zero(self) -> bool:
        return not self.phi.any() and (self.omega is None or not self.omega.any())

    def __eq__(self, other):
        if not isinstance(other, Cochain) or other.degree != self.degree:
            return False
        if not np.array_equal(self.phi, other.phi):
            return False
        if self.omega is None or other.omega is None:
            return self.omega is None and other.omega is None
        return np.array_equal(self.omega, other.omega)

    __hash__ = object.__hash__


class CochainSpace:
    """Coordinate chart of ``C^n_res(G; V)``."""

    def __init__(self, module: Module, n: int):
        if n < 0:
            raise ValueError("negative degree")
        self.module, self.n = module, n
        d, dv = module.G.dim, module.dim
        self.phi_combos = list(combinations(range(d), n)) if n else [()]
        self.omega_keys = (
            [(i, c) for i in range(d) for c in combinations(range(d), n - 2)] if n >= 2 else []
        )
        self.phi_dim = len(self.phi_combos) * dv
        self.omega_dim = len(self.omega_keys) * dv
        self.dim = self.phi_dim + self.omega_dim

    @property
    def p(self) -> int:
        return self.module.p

    def zero(self) -> Cochain:
        d, dv, n = self.module.G.dim, self.module.dim, self.n
        omega = np.zeros((d,) * (n - 1) + (dv,), dtype=np.int64) if n >= 2 else None
        return Cochain(n, np.zeros((d,) * n + (dv,), dtype=np.int64), omega)

    def from_vector(self, v) -> Cochain:
        v = np.asarray(v, dtype=np.int64) % self.p
        if v.shape != (self.dim,):
            raise ValueError(f"expected {self.dim} coordinates, got {v.shape}")
        d, dv, n, p = self.module.G.dim, self.module.dim, self.n, self.p
        phi = alternating_tensor(v[: self.phi_dim].reshape(-1, dv), d, n, dv, p)
        omega = None
        if n >= 2:
            rows = v[self.phi_dim :].reshape(d, -1, dv)
            omega = np.stack([alternating_tensor(rows[i], d, n - 2, dv, p) for i in range(d)]) if d else np.zeros(
                (0,) * (n - 1) + (dv,), dtype=np.int64
            )
        return Cochain(n, phi, omega)

    def to_vector(self, c: Cochain) -> np.ndarray:
        if c.degree != self.n:
            raise ValueError("degree mismatch")
        parts = [alternating_coords(c.phi, self.n).reshape(-1)]
        if self.n >= 2:
            d = self.module.G.dim
            parts += [alternating_coords(c.omega[i], self.n - 2).reshape(-1) for i in range(d)]
        return np.concatenate(parts).astype(np.int64) % self.p if parts else np.zeros(0, dtype=np.int64)

    def unit(self, k: int) -> Cochain:
        e = np.zeros(self.dim, dtype=np.int64)
        e[k] = 1
        return self.from_vector(e)

    def random(self, rng: np.random.Generator) -> Cochain:
        return self.from_vector(rng.integers(0, self.p, self.dim))

    def labels(self) -> list[str]:
        G = self.module.G
        out = []
        for c in self.phi_combos:
            for k in range(self.module.dim):
                out.append(f"phi({','.join(G.basis_labels[i] for i in c)})[{k + 1}]")
        for i, c in self.omega_keys:
            for k in range(self.module.dim):
                args = [G.basis_labels[i]] + [G.basis_labels[j] for j in c]
                out.append(f"omega({';'.join(args)})[{k + 1}]")
        return out


def eval_phi(c: Cochain, vecs, p: int) -> np.ndarray:
    if len(vecs) != c.degree:
        raise ValueError("arity mismatch")
    return contract(c.phi, vecs, p)


def eval_omega(c: Cochain, x, Z=(), p: int = 2) -> np.ndarray:
    """Polarized evaluation of the quadratic part at an arbitrary first argument."""
    if c.omega is None:
        raise ValueError("cochain has no omega part")
    if len(Z) != c.degree - 2:
        raise ValueError("arity mismatch")
    x = np.asarray(x, dtype=np.int64) % p
    om = contract(np.moveaxis(c.omega, 0, -2), Z, p) if Z else c.omega  # (d, dV)
    ph = contract(np.moveaxis(c.phi, (0, 1), (-3, -2)), Z, p) if Z else c.phi  # (d, d, dV)
    out = (x * x) @ om
    d = len(x)
    for i in range(d):
        if x[i]:
            for j in range(i + 1, d):
                if x[j]:
                    out = out + x[i] * x[j] * ph[i, j]
    return out % p


# ---------------------------------------------------------------------------
# differentials
# ---------------------------------------------------------------------------


def d_ce(module: Module, phi: np.ndarray, n: int) -> np.ndarray:
    """Chevalley-Eilenberg differential of an alternating n-form.

    ``d phi(x_1..x_{n+1}) = sum_i (-1)^{i+1} x_i . phi(..^x_i..)
    + sum_{i<j} (-1)^{i+j} phi([x_i, x_j], ..^x_i..^x_j..)``.
    """
    G, p, dv = module.G, module.p, module.dim
    d = G.dim
    eye = np.eye(d, dtype=np.int64)
    coords = []
    for combo in combinations(range(d), n + 1):
        xs = [eye[i] for i in combo]
        val = np.zeros(dv, dtype=np.int64)
        for i in range(n + 1):
            rest = xs[:i] + xs[i + 1 :]
            s = 1 if i % 2 == 0 else -1
            val = val + s * module.apply(xs[i], contract(phi, rest, p))
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                rest = [G.br(xs[i], xs[j])] + [xs[k] for k in range(n + 1) if k not in (i, j)]
                s = 1 if (i + j) % 2 == 0 else -1
                val = val + s * contract(phi, rest, p)
        coords.append(val % p)
    coords = np.array(coords, dtype=np.int64).reshape(-1, dv)
    return alternating_tensor(coords, d, n + 1, dv, p)


def delta1_at(module: Module, c: Cochain, x) -> np.ndarray:
    """``phi(x^[2]) + x . phi(x)`` for a 1-cochain."""
    _require_char2(module.p)
    p = module.p
    x = np.asarray(x, dtype=np.int64) % p
    return (contract(c.phi, [module.G.pth_power(x)], p) + module.apply(x, contract(c.phi, [x], p))) % p


def delta_at(module: Module, c: Cochain, x, Z) -> np.ndarray:
    """The quadratic part of ``d_res`` evaluated at ``(x, Z)`` for ``n >= 2``."""
    _require_char2(module.p)
    G, p, n = module.G, module.p, c.degree
    if n < 2:
        raise ValueError("use delta1_at in degree 1")
    x = np.asarray(x, dtype=np.int64) % p
    Z = [np.asarray(z, dtype=np.int64) % p for z in Z]
    if len(Z) != n - 1:
        raise ValueError("arity mismatch")
    val = module.apply(x, contract(c.phi, [x] + Z, p))
    for i in range(len(Z)):
        rest = Z[:i] + Z[i + 1 :]
        val = val + module.apply(Z[i], eval_omega(c, x, rest, p))
    val = val + contract(c.phi, [G.pth_power(x)] + Z, p)
    for i in range(len(Z)):
        rest = Z[:i] + Z[i + 1 :]
        val = val + contract(c.phi, [G.br(x, Z[i]), x] + rest, p)
    for i in range(len(Z)):
        for j in range(i + 1, len(Z)):
            rest = [Z[k] for k in range(len(Z)) if k not in (i, j)]
            val = val + eval_omega(c, x, [G.br(Z[i], Z[j])] + rest, p)
    return val % p


def d_res(module: Module, c: Cochain) -> Cochain:
    """Restricted differential ``d^n_res`` (characteristic 2)."""
    _require_char2(module.p)
    G, p, n, dv = module.G, module.p, c.degree, module.dim
    d = G.dim
    eye = np.eye(d, dtype=np.int64)
    phi = d_ce(module, c.phi, n)
    if n == 0:
        return Cochain(1, phi)
    omega = np.zeros((d,) * n + (dv,), dtype=np.int64)
    for i in range(d):
        if n == 1:
            omega[i] = delta1_at(module, c, eye[i])
            continue
        rows = [delta_at(module, c, eye[i], [eye[j] for j in combo]) for combo in combinations(range(d), n - 1)]
        omega[i] = alternating_tensor(np.array(rows, dtype=np.int64).reshape(-1, dv), d, n - 1, dv, p)
    return Cochain(n + 1, phi, omega)


def pushforward(c: Cochain, f: np.ndarray, p: int) -> Cochain:
    """Compose values with the linear map ``f`` (matrix acting on columns)."""
    f = np.asarray(f, dtype=np.int64)
    return Cochain(c.degree, c.phi @ f.T % p, None if c.omega is None else c.omega @ f.T % p)


def pullback(c: Cochain, f: np.ndarray, p: int) -> Cochain:
    """Precompose every argument with ``f : G' -> G``; the quadratic slot is polarized."""
    f = np.asarray(f, dtype=np.int64)
    n = c.degree
    d_src = f.shape[1]
    images = [f[:, i] for i in range(d_src)]
    phi = c.phi
    for _ in range(n):
        phi = np.tensordot(phi, f, axes=(0, 0))  # moves the pulled axis to the end
        phi = np.moveaxis(phi, -1, n - 1)
    phi = phi % p
    omega = None
    if n >= 2:
        zs = list(combinations(range(d_src), n - 2))
        dv = c.phi.shape[-1]
        omega = np.zeros((d_src,) * (n - 1) + (dv,), dtype=np.int64)
        for i in range(d_src):
            rows = [eval_omega(c, images[i], [images[j] for j in combo], p) for combo in zs]
            omega[i] = alternating_tensor(np.array(rows, dtype=np.int64).reshape(-1, dv), d_src, n - 2, dv, p)
    return Cochain(n, phi, omega)


# ---------------------------------------------------------------------------
# morphism complex attached to the anchor
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MorphismCochain:
    degree: int
    first: Cochain  # C^n(L; L)
    second: Cochain  # C^n(M; M)
    third: Cochain  # C^{n-1}(L; M)

    def __eq__(self, other):
        return (
            isinstance(other, MorphismCochain)
            and self.degree == other.degree
            and self.first == other.first
            and self.second == other.second
            and self.third == other.third
        )

    __hash__ = object.__hash__


class MorphismComplex:
    """Complex of the anchor viewed as a restricted morphism ``L -> M = Der(A)``.

    ``M`` acts on itself by the adjoint action and ``L`` acts on ``M`` by
    ``x . m = [rho(x), m]``.
    """

    def __init__(self, R: RLRAlgebra):
        _require_char2(R.p)
        self.R = R
        self.mL = adjoint_module(R.L, "L")
        self.mM = adjoint_module(R.der.lie, "Der(A)")
        self.mLM = Module(R.L, R.anchor_action, "Der(A) over L")
        self.rho = R.rho_coords  # (dM, dL)

    @property
    def p(self) -> int:
        return self.R.p

    def spaces(self, n: int) -> tuple[CochainSpace, CochainSpace, CochainSpace]:
        if n < 1:
            raise ValueError("morphism cochains start in degree 1")
        return CochainSpace(self.mL, n), CochainSpace(self.mM, n), CochainSpace(self.mLM, n - 1)

    def dim(self, n: int) -> int:
        return sum(s.dim for s in self.spaces(n))

    def from_vector(self, n: int, v) -> MorphismCochain:
        s1, s2, s3 = self.spaces(n)
        v = np.asarray(v, dtype=np.int64)
        a, b = s1.dim, s1.dim + s2.dim
        return MorphismCochain(n, s1.from_vector(v[:a]), s2.from_vector(v[a:b]), s3.from_vector(v[b:]))

    def to_vector(self, m: MorphismCochain) -> np.ndarray:
        s1, s2, s3 = self.spaces(m.degree)
        return np.concatenate([s1.to_vector(m.first), s2.to_vector(m.second), s3.to_vector(m.third)])

    def zero(self, n: int) -> MorphismCochain:
        s1, s2, s3 = self.spaces(n)
        return MorphismCochain(n, s1.zero(), s2.zero(), s3.zero())

    def alpha_beta(self, first: Cochain, second: Cochain, third: Cochain) -> Cochain:
        """``phi o mu + nu o phi^n + d(theta)`` together with its quadratic companion."""
        p = self.p
        out = pushforward(first, self.rho, p) + pullback(second, self.rho, p) + d_res(self.mLM, third)
        return out.mod(p)

    def differential(self, m: MorphismCochain) -> MorphismCochain:
        return MorphismCochain(
            m.degree + 1,
            d_res(self.mL, m.first),
            d_res(self.mM, m.second),
            self.alpha_beta(m.first, m.second, m.third),
        )


# ---------------------------------------------------------------------------
# Lie-Rinehart sub-complex
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LRCochain:
    """``(mu, omega)`` on L together with the Der(A)-valued decoration.

    Degree 1: ``main`` is a linear map and ``deco`` an element of Der(A).
    Degree 2: ``deco`` is a 1-cochain ``theta``.  Degree n >= 3: ``deco`` is the
    restricted (n-1)-cochain ``(theta, gamma)``.
    """

    degree: int
    main: Cochain
    deco: Cochain

    def __eq__(self, other):
        return isinstance(other, LRCochain) and self.degree == other.degree and self.main == other.main and self.deco == other.deco

    __hash__ = object.__hash__


class LRComplex:
    """Deformation complex of a restricted Lie-Rinehart algebra (characteristic 2).

    ``gamma_first_slot`` selects the A-compatibility imposed on the first
    (quadratic) slot of ``gamma`` in degrees >= 4: ``"quadratic"`` requires
    ``gamma(ax, Z) = a^2 gamma(x, Z)``, ``"none"`` imposes nothing there.
    """

    def __init__(self, R: RLRAlgebra, budget: int = DEFAULT_BUDGET, gamma_first_slot: str = "quadratic"):
        if gamma_first_slot not in ("quadratic", "none"):
            raise ValueError("gamma_first_slot must be 'quadratic' or 'none'")
        self.R = R
        self.mc = MorphismComplex(R)
        self.budget = budget
        self.gamma_first_slot = gamma_first_slot
        self._cmat: dict[int, np.ndarray] = {}
        self._ckeys: dict[int, list[tuple[str, int]]] = {}

    @property
    def p(self) -> int:
        return self.R.p

    def spaces(self, n: int) -> tuple[CochainSpace, CochainSpace]:
        s1, _, s3 = self.mc.spaces(n)
        return s1, s3

    def dim(self, n: int) -> int:
        s1, s3 = self.spaces(n)
        return s1.dim + s3.dim

    def from_vector(self, n: int, v) -> LRCochain:
        s1, s3 = self.spaces(n)
        v = np.asarray(v, dtype=np.int64)
        return LRCochain(n, s1.from_vector(v[: s1.dim]), s3.from_vector(v[s1.dim :]))

    def to_vector(self, c: LRCochain) -> np.ndarray:
        s1, s3 = self.spaces(c.degree)
        return np.concatenate([s1.to_vector(c.main), s3.to_vector(c.deco)])

    def zero(self, n: int) -> LRCochain:
        s1, s3 = self.spaces(n)
        return LRCochain(n, s1.zero(), s3.zero())

    # -- embedding -------------------------------------------------------

    def embed(self, c: LRCochain) -> MorphismCochain:
        _, s2, _ = self.mc.spaces(c.degree)
        return MorphismCochain(c.degree, c.main, s2.zero(), c.deco)

    def project(self, m: MorphismCochain) -> LRCochain:
        if not m.second.is_zero():
            raise LRValidationError(m.degree, "middle component", "middle component is not zero")
        c = LRCochain(m.degree, m.first, m.third)
        self.validate(c)
        return c

    # -- constraints -----------------------------------------------------

    def _der_matrix(self, coords) -> np.ndarray:
        return self.R.der.to_matrix(coords)

    def constraint_residuals(self, c: LRCochain) -> dict[str, np.ndarray]:
        """Values of every defining identity; all must vanish."""
        R, p, n = self.R, self.p, c.degree
        A, L = R.A, R.L
        dA, dL = A.dim, L.dim
        eA, eL = np.eye(dA, dtype=np.int64), np.eye(dL, dtype=np.int64)
        out: dict[str, list] = {}

        def add(key, val):
            out.setdefault(key, []).append(np.asarray(val, dtype=np.int64).reshape(-1) % p)

        def deco_at(vecs) -> np.ndarray:
            return self._der_matrix(contract(c.deco.phi, vecs, p))

        if n == 1:
            D = self._der_matrix(c.deco.phi)
            for a in range(dA):
                for j in range(dL):
                    lhs = contract(c.main.phi, [R.smul(eA[a], eL[j])], p)
                    rhs = R.smul(eA[a], contract(c.main.phi, [eL[j]], p)) + R.smul(D @ eA[a], eL[j])
                    add("mu(ax) = a mu(x) + d(a) x", lhs - rhs)
            return {k: np.concatenate(v) for k, v in out.items()}

        # the decoration theta is A-linear in every slot
        m = n - 1
        for slot in range(m):
            for combo in _tuples(dL, m):
                for a in range(dA):
                    args = [eL[i] for i in combo]
                    scaled = list(args)
                    scaled[slot] = R.smul(eA[a], args[slot])
                    add("theta A-linear", deco_at(scaled) - R.a_times(eA[a], deco_at(args)))

        # mu(x_1..x_{n-1}, a x_n) = a mu(X) + theta(x_1..x_{n-1})(a) x_n
        key = "mu(x, ay) = a mu(x,y) + theta(x)(a) y" if n == 2 else "mu(X, a x_n) = a mu(X) + theta(X')(a) x_n"
        for combo in _tuples(dL, n):
            args = [eL[i] for i in combo]
            for a in range(dA):
                lhs = contract(c.main.phi, args[:-1] + [R.smul(eA[a], args[-1])], p)
                th = deco_at(args[:-1])
                rhs = R.smul(eA[a], contract(c.main.phi, args, p)) + R.smul(th @ eA[a], args[-1])
                add(key, lhs - rhs)

        # omega(ax, Z) = a^2 omega(x, Z) + theta(ax, Z)(a) x over all of A x L
        key = "omega(ax) = a^2 omega(x) + theta(ax)(a) x" if n == 2 else "omega(ax, Z) = a^2 omega(x, Z) + theta(ax, Z)(a) x"
        ax_pairs = required_pairs(p, dA, dL, self.budget, f"degree {n} quadratic A-compatibility over A x L")
        for combo in combinations(range(dL), n - 2):
            Z = [eL[i] for i in combo]
            for a, x in ax_pairs:
                ax = R.smul(a, x)
                lhs = eval_omega(c.main, ax, Z, p)
                th = deco_at([ax] + Z)
                rhs = R.smul(A.power(a, 2), eval_omega(c.main, x, Z, p)) + R.smul(th @ a, x)
                add(key, lhs - rhs)

        if n >= 3:
            xs = list(all_vectors(p, dL)) if p**dL <= self.budget else [eL[i] for i in range(dL)]
            key = "omega(x, .., a z_i, ..) = a omega(x, Z) + gamma(x, Z^i)(a) z_i"
            for x in xs:
                for combo in combinations(range(dL), n - 2):
                    Z = [eL[i] for i in combo]
                    for i in range(len(Z)):
                        rest = Z[:i] + Z[i + 1 :]
                        g = self._der_matrix(eval_omega(c.deco, x, rest, p))
                        for a in range(dA):
                            Zs = list(Z)
                            Zs[i] = R.smul(eA[a], Z[i])
                            lhs = eval_omega(c.main, x, Zs, p)
                            rhs = R.smul(eA[a], eval_omega(c.main, x, Z, p)) + R.smul(g @ eA[a], Z[i])
                            add(key, lhs - rhs)
            if n >= 4:
                # gamma is A-linear in its Z-slots
                for i in range(dL):
                    for combo in _tuples(dL, n - 3):
                        Z = [eL[j] for j in combo]
                        for slot in range(len(Z)):
                            for a in range(dA):
                                Zs = list(Z)
                                Zs[slot] = R.smul(eA[a], Z[slot])
                                lhs = self._der_matrix(eval_omega(c.deco, eL[i], Zs, p))
                                rhs = R.a_times(eA[a], self._der_matrix(eval_omega(c.deco, eL[i], Z, p)))
                                add("gamma A-linear in Z", lhs - rhs)
                if self.gamma_first_slot == "quadratic":
                    for combo in combinations(range(dL), n - 3):
                        Z = [eL[j] for j in combo]
                        for a, x in ax_pairs:
                            lhs = self._der_matrix(eval_omega(c.deco, R.smul(a, x), Z, p))
                            rhs = R.a_times(A.power(a, 2), self._der_matrix(eval_omega(c.deco, x, Z, p)))
                            add("gamma(ax, Z) = a^2 gamma(x, Z)", lhs - rhs)
        return {k: np.concatenate(v) for k, v in out.items()}

    def constraint_matrix(self, n: int) -> np.ndarray:
        """Matrix whose kernel is the chart of ``C^n_LR``."""
        if n not in self._cmat:
            dim = self.dim(n)
            cols, keys = [], []
            for k in range(dim):
                e = np.zeros(dim, dtype=np.int64)
                e[k] = 1
                res = self.constraint_residuals(self.from_vector(n, e))
                cols.append(np.concatenate(list(res.values())) if res else np.zeros(0, dtype=np.int64))
                keys = [(key, len(v)) for key, v in res.items()]
            rows = len(cols[0]) if cols else 0
            self._cmat[n] = np.array(cols, dtype=np.int64).reshape(dim, rows).T % self.p
            self._ckeys[n] = keys
        return self._cmat[n]

    def violations(self, c: LRCochain) -> list[str]:
        """Names of the defining identities ``c`` breaks.

        The identities are linear, so they are read off the constraint matrix;
        :meth:`constraint_residuals` evaluates them pointwise.
        """
        r = self.constraint_matrix(c.degree) @ self.to_vector(c) % self.p
        bad, start = [], 0
        for key, size in self._ckeys[c.degree]:
            if r[start : start + size].any():
                bad.append(key)
            start += size
        return bad

    def lr_space(self, n: int) -> SubspaceBasis:
        return SubspaceBasis(self.dim(n), self.p, nullspace_array(self.constraint_matrix(n), self.p))

    def validate(self, c: LRCochain):
        bad = self.violations(c)
        if bad:
            raise LRValidationError(c.degree, bad[0])

    def random(self, n: int, rng: np.random.Generator) -> LRCochain:
        return self.from_vector(n, self.lr_space(n).random_element(rng))

    # -- differential ----------------------------------------------------

    def differential(self, c: LRCochain, check_input: bool = True) -> LRCochain:
        if check_input:
            self.validate(c)
        m = self.mc.differential(self.embed(c))
        if not m.second.is_zero():
            raise LRValidationError(c.degree + 1, "middle component", "differential left the Lie-Rinehart sub-complex")
        out = LRCochain(c.degree + 1, m.first, m.third)
        bad = self.violations(out)
        if bad:
            raise LRValidationError(c.degree + 1, bad[0], f"differential output violates {bad[0]} (implementation fault)")
        return out


_LR_CACHE: dict[tuple[int, int], tuple[RLRAlgebra, LRComplex]] = {}


def lr_complex(R: RLRAlgebra, budget: int = DEFAULT_BUDGET) -> LRComplex:
    """Shared complex of ``R`` so that constraint matrices are built once."""
    key = (id(R), budget)
    hit = _LR_CACHE.get(key)
    if hit is None or hit[0] is not R:
        if len(_LR_CACHE) > 64:
            _LR_CACHE.clear()
        hit = _LR_CACHE[key] = (R, LRComplex(R, budget))
    return hit[1]


def _tuples(d: int, n: int):
    return product(range(d), repeat=n)


def linear_map_matrix(f, dim_in: int, p: int) -> np.ndarray:
    """Matrix of a linear map given as a function on coordinate vectors."""
    cols = []
    for k in range(dim_in):
        e = np.zeros(dim_in, dtype=np.int64)
        e[k] = 1
        cols.append(np.asarray(f(e), dtype=np.int64) % p)
    if not cols:
        return np.zeros((len(np.asarray(f(np.zeros(0, dtype=np.int64)))), 0), dtype=np.int64)
    return np.array(cols, dtype=np.int64).T
