"""Exact integer matrix algebra: Smith normal form, kernels, lattice arithmetic.

All matrices are numpy arrays with dtype=object so entries are unbounded
Python ints; SNF intermediates blow up well past 64 bits even at modest rank.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def intmat(rows) -> np.ndarray:
    """Build a 2-d object-dtype integer matrix from nested sequences."""
    a = np.array(rows, dtype=object)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    elif a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    return a


def zeros(m: int, n: int) -> np.ndarray:
    a = np.empty((m, n), dtype=object)
    a[:] = 0
    return a


def identity(n: int) -> np.ndarray:
    a = zeros(n, n)
    for i in range(n):
        a[i, i] = 1
    return a


def mat_eq(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and bool(np.equal(a, b).all())


def is_zero(a: np.ndarray) -> bool:
    return a.size == 0 or bool(np.equal(a, 0).all())


@dataclass(frozen=True)
class SNFResult:
    """left @ matrix @ right == diag(diagonal); transforms unimodular.

    left_inv and right_inv are the tracked inverses of the transforms;
    they make column-space and solving computations cheap.
    """

    diagonal: tuple
    left: np.ndarray
    right: np.ndarray
    left_inv: np.ndarray
    right_inv: np.ndarray

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _pivot(M, t):
    # smallest nonzero absolute value, ties broken row-major: deterministic
    best = None
    m, n = M.shape
    for i in range(t, m):
        for j in range(t, n):
            v = M[i, j]
            if v != 0:
                a = -v if v < 0 else v
                if best is None or a < best[0]:
                    best = (a, i, j)
                    if a == 1:
                        return best[1], best[2]
    return (best[1], best[2]) if best else None


def smith_normal_form(matrix) -> SNFResult:
    """Smith normal form over the integers with full transform tracking."""
    A = intmat(matrix).copy()
    m, n = A.shape
    L, Li = identity(m), identity(m)
    R, Ri = identity(n), identity(n)

    def row_op(i, j, q):
        # row_i -= q * row_j ; inverse op applied to Li columns
        A[i, :] -= q * A[j, :]
        L[i, :] -= q * L[j, :]
        Li[:, j] += q * Li[:, i]

    def col_op(j, i, q):
        A[:, j] -= q * A[:, i]
        R[:, j] -= q * R[:, i]
        Ri[i, :] += q * Ri[j, :]

    def row_swap(i, j):
        A[[i, j], :] = A[[j, i], :]
        L[[i, j], :] = L[[j, i], :]
        Li[:, [i, j]] = Li[:, [j, i]]

    def col_swap(i, j):
        A[:, [i, j]] = A[:, [j, i]]
        R[:, [i, j]] = R[:, [j, i]]
        Ri[[i, j], :] = Ri[[j, i], :]

    t = 0
    while t < min(m, n):
        p = _pivot(A, t)
        if p is None:
            break
        i, j = p
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        piv = A[t, t]
        # reduce column t; a nonzero remainder is smaller than the pivot,
        # so restarting with a fresh pivot terminates
        clean = True
        for i in range(t + 1, m):
            if A[i, t] != 0:
                q = A[i, t] // piv
                if q:
                    row_op(i, t, q)
                if A[i, t] != 0:
                    clean = False
        if not clean:
            continue
        for j in range(t + 1, n):
            if A[t, j] != 0:
                q = A[t, j] // piv
                if q:
                    col_op(j, t, q)
                if A[t, j] != 0:
                    clean = False
        if not clean:
            continue
        # divisibility: pivot must divide every remaining entry
        fixed = False
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i, j] % piv != 0:
                    row_op(t, i, -1)  # add row i to row t, re-reduce
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        if A[t, t] < 0:
            A[t, :] = -A[t, :]
            L[t, :] = -L[t, :]
            Li[:, t] = -Li[:, t]
        t += 1

    diag = tuple(A[i, i] for i in range(min(m, n)))
    return SNFResult(diag, L, R, Li, Ri)


def rank(matrix) -> int:
    return smith_normal_form(matrix).rank


def kernel_basis(matrix) -> np.ndarray:
    """Columns form a basis of {x : A x = 0}; the lattice is saturated."""
    A = intmat(matrix)
    m, n = A.shape
    if n == 0:
        return zeros(0, 0)
    s = smith_normal_form(A)
    r = s.rank
    return s.right[:, r:].copy()


def solve_int(matrix, rhs) -> np.ndarray | None:
    """One integer solution X of A X = B, or None. B may be a matrix."""
    A = intmat(matrix)
    B = intmat(rhs)
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    s = smith_normal_form(A)
    m, n = A.shape
    Y = s.left @ B
    r = s.rank
    X = zeros(n, B.shape[1])
    for i in range(m):
        d = s.diagonal[i] if i < len(s.diagonal) else 0
        for k in range(B.shape[1]):
            v = Y[i, k]
            if d == 0:
                if v != 0:
                    return None
            else:
                if v % d != 0:
                    return None
                if i < n:
                    X[i, k] = v // d
    return s.right @ X


def column_space_basis(matrix) -> np.ndarray:
    """Basis (as columns) of the lattice spanned by the columns of A."""
    A = intmat(matrix)
    s = smith_normal_form(A)
    r = s.rank
    cols = []
    for i in range(r):
        cols.append(s.left_inv[:, i] * s.diagonal[i])
    if not cols:
        return zeros(A.shape[0], 0)
    return np.stack(cols, axis=1)


def lattice_contains(basis: np.ndarray, vectors) -> bool:
    """Do all columns of `vectors` lie in the column lattice of `basis`?"""
    V = intmat(vectors)
    if V.ndim == 1:
        V = V.reshape(-1, 1)
    if V.shape[1] == 0:
        return True
    if basis.shape[1] == 0:
        return is_zero(V)
    return solve_int(basis, V) is not None


def lattice_eq(b1: np.ndarray, b2: np.ndarray) -> bool:
    return lattice_contains(b1, b2) and lattice_contains(b2, b1)


def lattice_index(big: np.ndarray, small: np.ndarray):
    """Index [big : small] for sublattices of equal rank, else None."""
    X = solve_int(big, small)
    if X is None:
        return None
    s = smith_normal_form(X)
    if s.rank < big.shape[1] or big.shape[1] != small.shape[1]:
        return None
    idx = 1
    for d in s.diagonal:
        idx *= d
    return abs(idx) if idx else None


def saturation(basis: np.ndarray) -> np.ndarray:
    """Basis of (ℚ-span of the columns) ∩ ℤ^m."""
    B = intmat(basis)
    if B.shape[1] == 0:
        return B.copy()
    K = kernel_basis(B.T)  # columns y with B^T y = 0
    return kernel_basis(K.T)


def bareiss_det(matrix):
    """Fraction-free determinant; independent of the SNF path."""
    A = [list(map(int, row)) for row in intmat(matrix)]
    n = len(A)
    if n == 0:
        return 1
    assert all(len(r) == n for r in A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def is_unimodular(matrix) -> bool:
    A = intmat(matrix)
    return A.shape[0] == A.shape[1] and abs(bareiss_det(A)) == 1


@dataclass(frozen=True)
class FgAbelian:
    """Finitely generated abelian group ℤ^r / diag(relations)·ℤ^r.

    relation d_i == 0 marks a free coordinate, d_i > 0 a ℤ/d_i factor.
    """

    relations: tuple

    @property
    def ngens(self) -> int:
        return len(self.relations)

    @property
    def is_finite(self) -> bool:
        return all(d != 0 for d in self.relations)

    def order(self):
        if not self.is_finite:
            return None
        n = 1
        for d in self.relations:
            n *= d
        return n

    def reduce(self, vec):
        return tuple(
            int(v) % d if d else int(v) for v, d in zip(vec, self.relations)
        )

    def elements(self):
        if not self.is_finite:
            raise ValueError("infinite group")
        out = [()]
        for d in self.relations:
            out = [t + (k,) for t in out for k in range(d)]
        return out

    def relation_matrix(self) -> np.ndarray:
        n = self.ngens
        a = zeros(n, n)
        for i, d in enumerate(self.relations):
            a[i, i] = d
        return a


def cokernel_invariants(matrix, ambient_rank: int | None = None) -> tuple:
    """Elementary divisors of ℤ^m / (column span of A), 1-entries dropped.

    Trailing zeros mark free factors.
    """
    A = intmat(matrix)
    m = A.shape[0] if ambient_rank is None else ambient_rank
    s = smith_normal_form(A)
    divs = [d for d in s.diagonal if d not in (0, 1)]
    free = m - s.rank
    return tuple(divs) + (0,) * free
