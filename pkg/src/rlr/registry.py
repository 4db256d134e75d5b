"""Built-in examples.

Two-dimensional commutative algebras A1..A5 in characteristic 2, the Witt
algebra W1(p), the rigid algebra on A4, the abelian algebras on A4 with the two
families of 2-maps, and a few small characteristic 3 toys with zero anchor.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import AlgebraPresentation, LiePresentation
from .fileformat import AlgebraFile, CochainData


def _mult(p: int, dim: int, products: dict) -> np.ndarray:
    c = np.zeros((dim, dim, dim), dtype=np.int64)
    for (i, j), vec in products.items():
        c[i, j] = np.asarray(vec) % p
    return c


_A_TABLE = {
    "A1": {(0, 0): (1, 0)},
    "A2": {(0, 0): (0, 1)},
    "A3": {(0, 0): (1, 0), (1, 1): (0, 1)},
    "A4": {(0, 0): (1, 0), (0, 1): (0, 1), (1, 0): (0, 1)},
    "A5": {(0, 0): (1, 0), (0, 1): (0, 1), (1, 0): (0, 1), (1, 1): (1, 1)},
}


def algebra_A(name: str, p: int = 2) -> AlgebraPresentation:
    return AlgebraPresentation(p, 2, _mult(p, 2, _A_TABLE[name]), name=name)


def witt(p: int) -> LiePresentation:
    """``W(1)`` with basis ``e_{-1}, ..., e_{p-2}`` and ``e_0^[p] = e_0``."""
    d = p
    br = np.zeros((d, d, d), dtype=np.int64)
    for i in range(-1, p - 1):
        for j in range(-1, p - 1):
            if -1 <= i + j <= p - 2:
                br[i + 1, j + 1, i + j + 1] = (j - i) % p
    pm = np.zeros((d, d), dtype=np.int64)
    pm[1, 1] = 1
    labels = tuple(f"e{i}" for i in range(-1, p - 1))
    return LiePresentation(p, d, br, pm, name=f"W1({p})", basis_labels=labels)


def _two_dim_lie(p: int, xy: tuple[int, int], pm) -> LiePresentation:
    br = np.zeros((2, 2, 2), dtype=np.int64)
    br[0, 1] = np.asarray(xy) % p
    br[1, 0] = (-np.asarray(xy)) % p
    return LiePresentation(p, 2, br, np.asarray(pm) % p, basis_labels=("x", "y"))


def _a4_action(p: int) -> np.ndarray:
    """``e1`` acts as the identity, ``e2 . x = y``, ``e2 . y = 0``."""
    act = np.zeros((2, 2, 2), dtype=np.int64)
    act[0] = np.eye(2, dtype=np.int64)
    act[1, 0, 1] = 1
    return act


def _anchor(entries: dict, dL: int = 2, dA: int = 2) -> np.ndarray:
    """``entries[(i, j)] = vector`` gives ``rho(x_i)(e_j)``."""
    anc = np.zeros((dL, dA, dA), dtype=np.int64)
    for (i, j), vec in entries.items():
        anc[i][:, j] = vec
    return anc


def rigid_A4() -> AlgebraFile:
    L = _two_dim_lie(2, (0, 1), [[1, 0], [0, 0]])
    return AlgebraFile(2, "rigid_A4", algebra_A("A4"), L, _a4_action(2), _anchor({(0, 1): (0, 1)}))


def lab_A4(pmap, name: str) -> AlgebraFile:
    L = LiePresentation(2, 2, None, np.asarray(pmap) % 2, name="L_ab", basis_labels=("x", "y"))
    return AlgebraFile(2, name, algebra_A("A4"), L, _a4_action(2), _anchor({}))


def Lab0_A4() -> AlgebraFile:
    return lab_A4([[0, 0], [0, 0]], "Lab0_A4")


def Lab1_A4(lambda1: int = 1, lambda2: int = 0) -> AlgebraFile:
    return lab_A4([[lambda1, lambda2], [0, 0]], f"Lab1_A4({lambda1 % 2},{lambda2 % 2})")


def DerA4() -> AlgebraFile:
    """``(A4, Der(A4), id)``."""
    A = algebra_A("A4")
    M = _der_lie(A)
    basis = A.derivations.vectors.reshape(-1, 2, 2)
    act = np.zeros((2, 2, 2), dtype=np.int64)
    for a in range(2):
        for j in range(2):
            D = A.left(A.basis(a)) @ basis[j] % 2
            act[a, j] = _der_coords(A, D)
    return AlgebraFile(2, "DerA4", A, M, act, basis.copy())


def _der_lie(A: AlgebraPresentation) -> LiePresentation:
    from .algebra import DerivationSpace

    M = DerivationSpace(A).lie
    return LiePresentation(A.p, M.dim, M.bracket, M.pmap_on_basis, name="Der(A4)", basis_labels=("D1", "D2"))


def _der_coords(A: AlgebraPresentation, D) -> np.ndarray:
    from .algebra import DerivationSpace

    return DerivationSpace(A).coords(D)


# characteristic 3 toys, all with zero anchor


def _a4_like(p: int) -> AlgebraPresentation:
    return AlgebraPresentation(p, 2, _mult(p, 2, _A_TABLE["A4"]), name="A4")


def toy3_ab_A4() -> AlgebraFile:
    """Abelian L, zero 3-map, A4-type algebra acting as on the characteristic 2 example."""
    L = LiePresentation(3, 2, None, np.zeros((2, 2), dtype=np.int64), name="L_ab", basis_labels=("x", "y"))
    return AlgebraFile(3, "toy3_ab_A4", _a4_like(3), L, _a4_action(3), np.zeros((2, 2, 2), dtype=np.int64))


def toy3_solv_A1() -> AlgebraFile:
    """``[x,y] = y``, ``x^[3] = x``, ``y^[3] = 0``; ``e1`` acts as identity, ``e2`` as zero."""
    A = AlgebraPresentation(3, 2, _mult(3, 2, _A_TABLE["A1"]), name="A1")
    L = _two_dim_lie(3, (0, 1), [[1, 0], [0, 0]])
    act = np.zeros((2, 2, 2), dtype=np.int64)
    act[0] = np.eye(2, dtype=np.int64)
    return AlgebraFile(3, "toy3_solv_A1", A, L, act, np.zeros((2, 2, 2), dtype=np.int64))


def toy3_ab_A1() -> AlgebraFile:
    """Abelian L with ``x^[3] = y``; ``e1`` acts as identity, ``e2`` as zero."""
    A = AlgebraPresentation(3, 2, _mult(3, 2, _A_TABLE["A1"]), name="A1")
    L = LiePresentation(3, 2, None, np.array([[0, 1], [0, 0]]), name="L_ab", basis_labels=("x", "y"))
    act = np.zeros((2, 2, 2), dtype=np.int64)
    act[0] = np.eye(2, dtype=np.int64)
    return AlgebraFile(3, "toy3_ab_A1", A, L, act, np.zeros((2, 2, 2), dtype=np.int64))


def toy3_trunc() -> AlgebraFile:
    """``A = GF(3)[e]/(e^3)`` acting on the free module ``L = A x``; abelian, zero 3-map."""
    m = np.zeros((3, 3, 3), dtype=np.int64)
    for i in range(3):
        for j in range(3 - i):
            m[i, j, i + j] = 1
    A = AlgebraPresentation(3, 3, m, name="GF(3)[e]/(e^3)", basis_labels=("1", "e", "e2"))
    L = LiePresentation(3, 3, None, np.zeros((3, 3), dtype=np.int64), name="A x", basis_labels=("x", "ex", "e2x"))
    return AlgebraFile(3, "toy3_trunc", A, L, m.copy(), np.zeros((3, 3, 3), dtype=np.int64))


def _algebra_only(name: str) -> Callable[[], AlgebraFile]:
    return lambda: AlgebraFile(2, name, algebra_A(name))


def _lie_only(p: int) -> Callable[[], AlgebraFile]:
    return lambda: AlgebraFile(p, f"W1({p})", None, witt(p))


@dataclass(frozen=True)
class Entry:
    name: str
    build: Callable[..., AlgebraFile]
    description: str


REGISTRY: dict[str, Entry] = {
    **{n: Entry(n, _algebra_only(n), f"two-dimensional commutative algebra {n} over GF(2)") for n in _A_TABLE},
    "W1(5)": Entry("W1(5)", _lie_only(5), "restricted Witt algebra W(1), p = 5"),
    "W1(7)": Entry("W1(7)", _lie_only(7), "restricted Witt algebra W(1), p = 7"),
    "rigid_A4": Entry("rigid_A4", rigid_A4, "[x,y]=y, x^[2]=x, y^[2]=0 over A4 with rho(x)=e2 (x) e2*"),
    "Lab0_A4": Entry("Lab0_A4", Lab0_A4, "abelian L, zero 2-map, over A4, zero anchor"),
    "Lab1_A4": Entry("Lab1_A4", Lab1_A4, "abelian L, x^[2]=l1 x + l2 y, y^[2]=0, over A4, zero anchor"),
    "DerA4": Entry("DerA4", DerA4, "(A4, Der(A4), id)"),
    "toy3_ab_A4": Entry("toy3_ab_A4", toy3_ab_A4, "p=3: abelian L, zero 3-map, A4-type action, zero anchor"),
    "toy3_solv_A1": Entry("toy3_solv_A1", toy3_solv_A1, "p=3: [x,y]=y, x^[3]=x over A1-type algebra, zero anchor"),
    "toy3_ab_A1": Entry("toy3_ab_A1", toy3_ab_A1, "p=3: abelian L, x^[3]=y over A1-type algebra, zero anchor"),
    "toy3_trunc": Entry("toy3_trunc", toy3_trunc, "p=3: free module A x over A = GF(3)[e]/(e^3), zero anchor"),
}

CHAR2_RLR = ["rigid_A4", "Lab0_A4", "Lab1_A4", "DerA4"]
CHAR3_TOYS = ["toy3_ab_A4", "toy3_solv_A1", "toy3_ab_A1"]


def get(name: str, lambda1: int = 1, lambda2: int = 0) -> AlgebraFile:
    m = re.fullmatch(r"Lab1_A4\((\d+),(\d+)\)", name.replace(" ", ""))
    if m:
        return Lab1_A4(int(m.group(1)), int(m.group(2)))
    if name not in REGISTRY:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(REGISTRY)}")
    if name == "Lab1_A4":
        return Lab1_A4(lambda1, lambda2)
    return REGISTRY[name].build()


# ---------------------------------------------------------------------------
# named cochains of the two-dimensional abelian examples (basis x, y; e1, e2)
# ---------------------------------------------------------------------------


def _mu(vec) -> np.ndarray:
    m = np.zeros((2, 2, 2), dtype=np.int64)
    m[0, 1] = vec
    m[1, 0] = (-np.asarray(vec)) % 2
    return m


def _omega(x_img=(0, 0), y_img=(0, 0)) -> np.ndarray:
    return np.array([x_img, y_img], dtype=np.int64)


E11 = np.array([[1, 0], [0, 0]])
E12 = np.array([[0, 1], [0, 0]])  # e1 (x) e2*
E21 = np.array([[0, 0], [1, 0]])  # e2 (x) e1*
E22 = np.array([[0, 0], [0, 1]])  # e2 (x) e2*

MU = {"mu1": _mu((1, 0)), "mu2": _mu((0, 1)), "0": np.zeros((2, 2, 2), dtype=np.int64)}
OMEGA = {
    "omega1": _omega(x_img=(1, 0)),
    "omega2": _omega(x_img=(0, 1)),
    "omega3": _omega(y_img=(1, 0)),
    "omega4": _omega(y_img=(0, 1)),
    "0": _omega(),
}
THETA = {
    "theta1": np.array([E12, E22]),
    "theta2": np.array([E22, np.zeros((2, 2))]).astype(np.int64),
    "0": np.zeros((2, 2, 2), dtype=np.int64),
}


def named_triple(mu: str, omega: str, theta: str) -> CochainData:
    m = sum((MU[k] for k in mu.split("+")), np.zeros((2, 2, 2), dtype=np.int64)) % 2
    return CochainData(m, OMEGA[omega].copy(), THETA[theta].astype(np.int64).copy())


# listed cocycles per example
LAB0_Z2_RES = [("mu1", "0"), ("mu2", "0"), ("0", "omega1"), ("0", "omega2"), ("0", "omega3"), ("0", "omega4")]
LAB0_Z2_LR = [("mu1", "omega4", "theta1"), ("mu2", "0", "theta2"), ("0", "omega1", "0"), ("0", "omega2", "0")]
LAB1_Z2_RES = [("mu1+mu2", "0"), ("0", "omega1"), ("0", "omega2"), ("0", "omega3"), ("0", "omega4")]
LAB1_Z2_LR = [("mu1+mu2", "omega4", "theta1"), ("0", "omega1", "0"), ("0", "omega2", "0")]
