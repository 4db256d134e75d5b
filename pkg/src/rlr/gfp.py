"""Exact arithmetic and dense linear algebra over a prime field GF(p).

Everything here works on ``numpy`` int64 arrays whose entries are residues
in ``[0, p)``.  The small wrapper types (:class:`FieldElement`,
:class:`MatrixGFp`, :class:`SubspaceBasis`) are immutable; the free
functions accept plain arrays as well so that the solver code does not have
to box every scalar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

MAX_MODULUS = 97


class ModulusError(ValueError):
    """Raised on a non-prime modulus or when mixing two different fields."""


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def check_modulus(p: int, bound: int = MAX_MODULUS) -> int:
    p = int(p)
    if not is_prime(p):
        raise ModulusError(f"modulus {p} is not prime")
    if p > bound:
        raise ModulusError(f"modulus {p} exceeds configured bound {bound}")
    return p


def inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


@dataclass(frozen=True)
class FieldElement:
    value: int
    modulus: int

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ModulusError(
                    f"cannot combine GF({self.modulus}) with GF({other.modulus})"
                )
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value + b, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value - b, self.modulus)

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(b - self.value, self.modulus)

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value * b, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.modulus)

    def inverse(self) -> "FieldElement":
        return FieldElement(inv(self.value, self.modulus), self.modulus)

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value * inv(b, self.modulus), self.modulus)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return FieldElement(pow(self.value, k, self.modulus), self.modulus)

    def frobenius(self) -> "FieldElement":
        """Return ``a**p``; the identity map on a prime field."""
        return self ** self.modulus

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


def frobenius(a: FieldElement) -> FieldElement:
    return a.frobenius()


def as_array(m, p: int) -> np.ndarray:
    return np.asarray(m, dtype=np.int64) % p


# ---------------------------------------------------------------------------
# row reduction
# ---------------------------------------------------------------------------


def rref_array(m, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of ``m`` over GF(p).

    Pivots are chosen leftmost-column first, topmost candidate row first, so
    the result is a deterministic function of the input.
    """
    a = as_array(m, p).copy()
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * inv(int(a[r, c]), p)) % p
        col = a[:, c].copy()
        col[r] = 0
        if col.any():
            a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_array(m, p: int) -> int:
    return len(rref_array(m, p)[1])


def nullspace_array(m, p: int) -> np.ndarray:
    """Basis (as rows, reduced echelon) of ``{v : m @ v = 0}``."""
    a = as_array(m, p)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref_array(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = (-r[row, f]) % p
    return rref_array(basis, p)[0] if len(free) else basis


def solve_array(m, b, p: int) -> np.ndarray | None:
    """One solution of ``m @ x = b`` over GF(p), or ``None`` if inconsistent."""
    a = as_array(m, p)
    b = as_array(b, p).reshape(-1)
    rows, cols = a.shape
    aug = np.concatenate([a, b.reshape(rows, 1)], axis=1)
    r, pivots = rref_array(aug, p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, cols]
    return x


def canonical_rows(vectors, p: int, ambient: int) -> np.ndarray:
    v = as_array(vectors, p).reshape(-1, ambient)
    if v.shape[0] == 0:
        return np.zeros((0, ambient), dtype=np.int64)
    r, pivots = rref_array(v, p)
    return r[: len(pivots)]


# ---------------------------------------------------------------------------
# wrapper types
# ---------------------------------------------------------------------------


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.int64, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class MatrixGFp:
    entries: np.ndarray
    modulus: int

    def __post_init__(self):
        check_modulus(self.modulus)
        a = np.asarray(self.entries, dtype=np.int64)
        if a.ndim != 2:
            a = a.reshape(a.shape[0] if a.ndim else 0, -1)
        object.__setattr__(self, "entries", _frozen(a % self.modulus))

    @classmethod
    def from_rows(cls, rows, modulus: int) -> "MatrixGFp":
        return cls(np.array(rows, dtype=np.int64), modulus)

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus: int) -> "MatrixGFp":
        return cls(np.zeros((rows, cols), dtype=np.int64), modulus)

    @classmethod
    def identity(cls, n: int, modulus: int) -> "MatrixGFp":
        return cls(np.eye(n, dtype=np.int64), modulus)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def _check(self, other: "MatrixGFp"):
        if other.modulus != self.modulus:
            raise ModulusError("matrix moduli differ")

    def __matmul__(self, other):
        if isinstance(other, MatrixGFp):
            self._check(other)
            return MatrixGFp(self.entries @ other.entries, self.modulus)
        return (self.entries @ as_array(other, self.modulus)) % self.modulus

    def __add__(self, other: "MatrixGFp") -> "MatrixGFp":
        self._check(other)
        return MatrixGFp(self.entries + other.entries, self.modulus)

    def __eq__(self, other):
        return (
            isinstance(other, MatrixGFp)
            and other.modulus == self.modulus
            and other.entries.shape == self.entries.shape
            and bool(np.array_equal(other.entries, self.entries))
        )

    def __hash__(self):
        return hash((self.modulus, self.entries.shape, self.entries.tobytes()))

    def __getitem__(self, idx) -> FieldElement:
        return FieldElement(int(self.entries[idx]), self.modulus)

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()


def rref(m: MatrixGFp) -> tuple[MatrixGFp, list[int], int]:
    r, pivots = rref_array(m.entries, m.modulus)
    rank = len(pivots)
    assert rank <= min(m.rows, m.cols)
    return MatrixGFp(r, m.modulus), pivots, rank


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """A subspace of GF(p)^n stored by its reduced echelon basis.

    Because the representation is canonical, two subspaces are equal exactly
    when their ``vectors`` arrays are equal.
    """

    ambient_dim: int
    modulus: int
    vectors: np.ndarray = field(default=None)

    def __post_init__(self):
        v = self.vectors
        if v is None:
            v = np.zeros((0, self.ambient_dim), dtype=np.int64)
        v = canonical_rows(v, self.modulus, self.ambient_dim)
        object.__setattr__(self, "vectors", _frozen(v))

    @classmethod
    def span(cls, vectors, ambient_dim: int, modulus: int) -> "SubspaceBasis":
        return cls(ambient_dim, modulus, np.asarray(vectors, dtype=np.int64).reshape(-1, ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int, modulus: int) -> "SubspaceBasis":
        return cls(ambient_dim, modulus, np.eye(ambient_dim, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        return (
            isinstance(other, SubspaceBasis)
            and other.ambient_dim == self.ambient_dim
            and other.modulus == self.modulus
            and bool(np.array_equal(other.vectors, self.vectors))
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.modulus, self.vectors.tobytes()))

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def elements(self):
        """Iterate over every vector of the subspace (small dimensions only)."""
        p = self.modulus
        for coeffs in np.ndindex(*([p] * self.dim)):
            yield (np.asarray(coeffs, dtype=np.int64) @ self.vectors) % p if self.dim else np.zeros(
                self.ambient_dim, dtype=np.int64
            )

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        if self.dim == 0:
            return np.zeros(self.ambient_dim, dtype=np.int64)
        c = rng.integers(0, self.modulus, size=self.dim)
        return (c @ self.vectors) % self.modulus


def _matrix(m) -> tuple[np.ndarray, int]:
    if isinstance(m, MatrixGFp):
        return m.entries, m.modulus
    raise TypeError("expected MatrixGFp")


def kernel_basis(m: MatrixGFp) -> SubspaceBasis:
    a, p = _matrix(m)
    return SubspaceBasis(a.shape[1], p, nullspace_array(a, p))


def image_basis(m: MatrixGFp) -> SubspaceBasis:
    """Column space of ``m`` (the image of ``v -> m @ v``)."""
    a, p = _matrix(m)
    return SubspaceBasis(a.shape[0], p, a.T)


def _same_space(s1: SubspaceBasis, s2: SubspaceBasis):
    if s1.modulus != s2.modulus:
        raise ModulusError("subspaces over different fields")
    if s1.ambient_dim != s2.ambient_dim:
        raise ValueError(f"ambient dimensions differ: {s1.ambient_dim} != {s2.ambient_dim}")


def intersect(s1: SubspaceBasis, s2: SubspaceBasis) -> SubspaceBasis:
    _same_space(s1, s2)
    p, n = s1.modulus, s1.ambient_dim
    if s1.dim == 0 or s2.dim == 0:
        return SubspaceBasis(n, p)
    # a @ V1 == b @ V2  <=>  [a | b] @ [V1; -V2] == 0
    stacked = np.concatenate([s1.vectors, (-s2.vectors) % p], axis=0)
    combos = nullspace_array(stacked.T, p)
    return SubspaceBasis(n, p, (combos[:, : s1.dim] @ s1.vectors) % p)


def subspace_sum(s1: SubspaceBasis, s2: SubspaceBasis) -> SubspaceBasis:
    _same_space(s1, s2)
    return SubspaceBasis(s1.ambient_dim, s1.modulus, np.concatenate([s1.vectors, s2.vectors]))


def contains(s: SubspaceBasis, v) -> bool:
    p = s.modulus
    v = as_array(v, p).reshape(-1)
    if v.shape[0] != s.ambient_dim:
        raise ValueError("vector has wrong length for subspace")
    if not v.any():
        return True
    if s.dim == 0:
        return False
    return rank_array(np.vstack([s.vectors, v]), p) == s.dim


def is_subspace(small: SubspaceBasis, big: SubspaceBasis) -> bool:
    _same_space(small, big)
    return all(contains(big, v) for v in small.vectors)


def quotient_dim(s_big: SubspaceBasis, s_small: SubspaceBasis) -> int:
    if not is_subspace(s_small, s_big):
        raise ValueError("quotient_dim: second subspace is not contained in the first")
    return s_big.dim - s_small.dim


def coordinates_in(s: SubspaceBasis, v) -> np.ndarray | None:
    """Coefficients ``c`` with ``c @ s.vectors == v``, or ``None``."""
    p = s.modulus
    return solve_array(s.vectors.T, as_array(v, p).reshape(-1), p)


def matpow(m: np.ndarray, k: int, p: int) -> np.ndarray:
    n = m.shape[0]
    result = np.eye(n, dtype=np.int64)
    base = m % p
    while k:
        if k & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        k >>= 1
    return result
