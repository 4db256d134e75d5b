"""Brute-force reference implementations.

Everything here works on plain Python integers and nested tuples, enumerates
all field elements it quantifies over, and uses nothing from ``rlr`` beyond
the raw structure constants handed in.
"""

from __future__ import annotations

from itertools import product


def vectors(p: int, d: int):
    return list(product(range(p), repeat=d))


def add(u, v, p):
    return tuple((a + b) % p for a, b in zip(u, v))


def scale(c, v, p):
    return tuple(c * a % p for a in v)


def bilinear(t, u, v, p):
    """``sum u_i v_j t[i][j][k]`` for a rank-3 nested table."""
    d = len(t[0][0])
    out = [0] * d
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                if vj:
                    for k in range(d):
                        out[k] += ui * vj * t[i][j][k]
    return tuple(x % p for x in out)


def apply(M, v, p):
    """Matrix (list of rows) times column vector."""
    return tuple(sum(r * x for r, x in zip(row, v)) % p for row in M)


def matmul(M, N, p):
    cols = list(zip(*N))
    return tuple(tuple(sum(a * b for a, b in zip(row, c)) % p for c in cols) for row in M)


def matadd(M, N, p):
    return tuple(tuple((a + b) % p for a, b in zip(r, s)) for r, s in zip(M, N))


def zero_matrix(n):
    return tuple((0,) * n for _ in range(n))


def all_matrices(p: int, n: int):
    for flat in product(range(p), repeat=n * n):
        yield tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n))


# -- derivations -------------------------------------------------------------


def is_derivation(mult, D, p) -> bool:
    """Leibniz on every pair of algebra elements."""
    d = len(mult)
    for a in vectors(p, d):
        for b in vectors(p, d):
            lhs = apply(D, bilinear(mult, a, b, p), p)
            rhs = add(bilinear(mult, apply(D, a, p), b, p), bilinear(mult, a, apply(D, b, p), p), p)
            if lhs != rhs:
                return False
    return True


def brute_derivations(mult, p):
    """Set of every derivation matrix of the algebra with table ``mult``."""
    return {D for D in all_matrices(p, len(mult)) if is_derivation(mult, D, p)}


# -- p-maps through faithful matrix realizations -------------------------------


def matrix_pth_power(mats, coords, p):
    """``x^[p]`` for ``x = sum coords_i mats_i`` read off from the associative
    p-th power, assuming ``mats`` spans a restricted subalgebra of gl_n."""
    n = len(mats[0])
    X = zero_matrix(n)
    for c, M in zip(coords, mats):
        X = matadd(X, tuple(tuple(c * a % p for a in r) for r in M), p)
    P = X
    for _ in range(p - 1):
        P = matmul(P, X, p)
    return decompose(mats, P, p)


def decompose(mats, P, p):
    """Coordinates of ``P`` in the span of ``mats`` (by exhaustive search)."""
    for coords in vectors(p, len(mats)):
        n = len(P)
        X = zero_matrix(n)
        for c, M in zip(coords, mats):
            X = matadd(X, tuple(tuple(c * a % p for a in r) for r in M), p)
        if X == P:
            return coords
    raise ValueError("matrix power leaves the span")


def witt_operators(p: int):
    """``e_i = X^(i+1) d/dX`` acting on ``K[X]/(X^p)`` with basis ``1, X, ..., X^(p-1)``.

    Returned as matrices acting on coefficient columns.
    """
    mats = []
    for i in range(-1, p - 1):
        M = [[0] * p for _ in range(p)]
        for m in range(p):  # X^m -> m X^(m+i)
            k = m + i
            if 0 <= k < p and m % p:
                M[k][m] = m % p
        mats.append(tuple(tuple(r) for r in M))
    return mats


def commutator_table(mats, p):
    """Structure constants of the bracket ``[M_i, M_j]`` in the basis ``mats``."""
    n = len(mats)
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            C = matadd(matmul(mats[i], mats[j], p), tuple(tuple(-a % p for a in r) for r in matmul(mats[j], mats[i], p)), p)
            row.append(decompose(mats, C, p))
        table.append(row)
    return table


# -- characteristic 2 Lie-Rinehart cocycles -----------------------------------


class Char2RLR:
    """Plain-integer copy of a characteristic 2 restricted Lie-Rinehart algebra.

    ``mult[i][j]``, ``bracket[i][j]``: products of basis vectors; ``pmap[i]``:
    image of the i-th basis vector; ``act[a]``: matrix of ``e_a .`` on L;
    ``anchor[i]``: matrix of ``rho(x_i)`` on A.
    """

    def __init__(self, mult, bracket, pmap, act, anchor):
        self.mult, self.bracket, self.pmap = mult, bracket, pmap
        self.act, self.anchor = act, anchor
        self.dA, self.dL = len(mult), len(bracket)
        self.A = vectors(2, self.dA)
        self.L = vectors(2, self.dL)

    def br(self, x, y):
        return bilinear(self.bracket, x, y, 2)

    def smul(self, a, x):
        out = (0,) * self.dL
        for c, M in zip(a, self.act):
            if c:
                out = add(out, apply(M, x, 2), 2)
        return out

    def amul(self, a, b):
        return bilinear(self.mult, a, b, 2)

    def quad(self, basis_images, bilin, x):
        """``sum x_i^2 q(e_i) + sum_{i<j} x_i x_j b(e_i, e_j)``."""
        out = (0,) * len(basis_images[0])
        for i, xi in enumerate(x):
            if xi:
                out = add(out, basis_images[i], 2)
                for j in range(i + 1, len(x)):
                    if x[j]:
                        out = add(out, bilin(self.unit(i), self.unit(j)), 2)
        return out

    def unit(self, i):
        return tuple(int(k == i) for k in range(self.dL))

    def square(self, x):
        return self.quad(self.pmap, self.br, x)

    def rho(self, x):
        M = zero_matrix(self.dA)
        for c, R in zip(x, self.anchor):
            if c:
                M = matadd(M, R, 2)
        return M


def lin_matrix(images, x, dA):
    """``sum x_i images[i]`` for a list of matrices."""
    M = zero_matrix(dA)
    for c, T in zip(x, images):
        if c:
            M = matadd(M, T, 2)
    return M


def is_z2_lr(R: Char2RLR, mu_xy, omega, theta) -> bool:
    """Membership of ``(mu, omega, theta)`` in ``Z^2_LR`` for ``dim L = 2``.

    ``mu_xy = mu(x_1, x_2)``; ``omega`` the images of the basis vectors;
    ``theta`` the matrices of ``theta(x_1), theta(x_2)``.
    """
    dA = R.dA

    def mu(u, v):
        # alternating bilinear with mu(x1, x2) = mu_xy
        c = (u[0] * v[1] + u[1] * v[0]) % 2
        return scale(c, mu_xy, 2)

    def om(u):
        return R.quad(omega, mu, u)

    def th(u):
        return lin_matrix(theta, u, dA)

    def comm(M, N):
        return matadd(matmul(M, N, 2), matmul(N, M, 2), 2)

    # theta takes values in Der(A)
    for T in theta:
        if not is_derivation(R.mult, T, 2):
            return False
    for a in R.A:
        La = tuple(tuple(r) for r in zip(*[R.amul(a, tuple(int(k == j) for k in range(dA))) for j in range(dA)]))
        for x in R.L:
            # theta(ax) = a theta(x)
            if th(R.smul(a, x)) != matmul(La, th(x), 2):
                return False
            # omega(ax) = a^2 omega(x) + theta(ax)(a) x
            lhs = om(R.smul(a, x))
            rhs = add(R.smul(R.amul(a, a), om(x)), R.smul(apply(th(R.smul(a, x)), a, 2), x), 2)
            if lhs != rhs:
                return False
            for y in R.L:
                # mu(x, ay) = a mu(x, y) + theta(x)(a) y
                lhs = mu(x, R.smul(a, y))
                rhs = add(R.smul(a, mu(x, y)), R.smul(apply(th(x), a, 2), y), 2)
                if lhs != rhs:
                    return False
    for x in R.L:
        for y in R.L:
            # Chevalley-Eilenberg cocycle
            for z in R.L:
                s = (0,) * R.dL
                for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
                    s = add(s, add(R.br(u, mu(v, w)), mu(R.br(u, v), w), 2), 2)
                if any(s):
                    return False
            # restricted quadratic part
            s = add(add(R.br(x, mu(x, y)), R.br(y, om(x)), 2), add(mu(R.square(x), y), mu(R.br(x, y), x), 2), 2)
            if any(s):
                return False
            # alpha(x, y) = rho(mu(x,y)) + [rho x, theta y] + [theta x, rho y] + theta([x, y])
            a_ = matadd(matadd(R.rho(mu(x, y)), comm(R.rho(x), th(y)), 2), matadd(comm(th(x), R.rho(y)), th(R.br(x, y)), 2), 2)
            if any(any(r) for r in a_):
                return False
        # beta(x) = theta(x^[2]) + rho(omega(x)) + [rho x, theta x]
        b_ = matadd(matadd(th(R.square(x)), R.rho(om(x)), 2), comm(R.rho(x), th(x)), 2)
        if any(any(r) for r in b_):
            return False
    return True


def brute_z2_lr(R: Char2RLR):
    """Every ``Z^2_LR`` member of a 2-dimensional example, theta ranging over all matrices."""
    out = set()
    Ls = vectors(2, R.dL)
    mats = list(all_matrices(2, R.dA))
    # every candidate outside Der(A) x Der(A) fails the first test of is_z2_lr
    ders = [T for T in mats if is_derivation(R.mult, T, 2)]
    for mu_xy in Ls:
        for w1 in Ls:
            for w2 in Ls:
                for t1 in ders:
                    for t2 in ders:
                        if is_z2_lr(R, mu_xy, (w1, w2), (t1, t2)):
                            out.add((mu_xy, (w1, w2), (t1, t2)))
    return out
