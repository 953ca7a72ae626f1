"""
Exact integer and rational linear algebra.

Every matrix is a numpy array with dtype=object holding Python ints, so
products never overflow. The Smith normal form is computed by the
extended Euclidean algorithm with a minimal-absolute-value pivot, and the
result is re-multiplied and checked on every call.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
import sympy

from checks import CerfError


class MatrixError(CerfError):
    code = "MATRIX_ERROR"


def as_integer_matrix(rows: Iterable[Iterable[int]] | np.ndarray, ncols: int | None = None) -> np.ndarray:
    """Coerce to a 2-d object array of Python ints.

    An empty row list needs `ncols` to know its width.
    """
    if isinstance(rows, np.ndarray) and rows.ndim == 2:
        if rows.shape[0] == 0:
            return np.zeros((0, rows.shape[1]), dtype=object)
        data = [[int(v) for v in row] for row in rows.tolist()]
    else:
        data = [[int(v) for v in row] for row in rows]
    if not data:
        return np.zeros((0, ncols or 0), dtype=object)
    width = len(data[0])
    if any(len(row) != width for row in data):
        raise MatrixError("ragged integer matrix")
    out = np.empty((len(data), width), dtype=object)
    for i, row in enumerate(data):
        for j, v in enumerate(row):
            out[i, j] = v
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def to_lists(matrix: np.ndarray) -> list[list[int]]:
    return [[int(v) for v in row] for row in matrix.tolist()]


def determinant(matrix: np.ndarray) -> int:
    if matrix.shape[0] != matrix.shape[1]:
        raise MatrixError("determinant of a non-square matrix")
    if matrix.shape[0] == 0:
        return 1
    return int(sympy.Matrix(to_lists(matrix)).det())


def is_unimodular(matrix: np.ndarray) -> bool:
    return matrix.shape[0] == matrix.shape[1] and abs(determinant(matrix)) == 1


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


class SmithNormalForm:
    """U · M · V = D with D diagonal, d_i | d_{i+1}, U and V unimodular.

    Parameters
    ----------
    matrix: (m, n) integer matrix
    """

    def __init__(self, matrix) -> None:
        self.original = as_integer_matrix(matrix)
        self.D = self.original.copy()
        self.U = identity(self.num_rows)
        self.V = identity(self.num_cols)

    @property
    def num_rows(self) -> int:
        return self.original.shape[0]

    @property
    def num_cols(self) -> int:
        return self.original.shape[1]

    def compute(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        for s in range(min(self.num_rows, self.num_cols)):
            if not self._settle(s):
                break
        self._verify()
        return self.D, self.U, self.V

    def diagonal(self) -> list[int]:
        n = min(self.num_rows, self.num_cols)
        return [int(self.D[i, i]) for i in range(n)]

    def _settle(self, s: int) -> bool:
        """Put the s-th invariant factor at D[s, s]. False when the rest is zero."""
        while True:
            pivot = _min_abs_nonzero(self.D, s)
            if pivot is None:
                return False
            row, col = pivot
            self._swap_rows(s, row)
            self._swap_cols(s, col)

            clean = True
            for i in range(s + 1, self.num_rows):
                q = self.D[i, s] // self.D[s, s]
                if q:
                    self._add_row(i, s, -q)
                if self.D[i, s] != 0:
                    clean = False
            for j in range(s + 1, self.num_cols):
                q = self.D[s, j] // self.D[s, s]
                if q:
                    self._add_col(j, s, -q)
                if self.D[s, j] != 0:
                    clean = False
            if not clean:
                continue

            # divisibility: pull a non-divisible entry into row s and retry
            bad = self._non_divisible(s)
            if bad is not None:
                self._add_row(s, bad, 1)
                continue
            if self.D[s, s] < 0:
                self.D[s] *= -1
                self.U[s] *= -1
            return True

    def _non_divisible(self, s: int) -> int | None:
        pivot = self.D[s, s]
        for i in range(s + 1, self.num_rows):
            for j in range(s + 1, self.num_cols):
                if self.D[i, j] % pivot != 0:
                    return i
        return None

    def _swap_rows(self, a: int, b: int) -> None:
        if a != b:
            self.D[[a, b]] = self.D[[b, a]]
            self.U[[a, b]] = self.U[[b, a]]

    def _swap_cols(self, a: int, b: int) -> None:
        if a != b:
            self.D[:, [a, b]] = self.D[:, [b, a]]
            self.V[:, [a, b]] = self.V[:, [b, a]]

    def _add_row(self, target: int, source: int, k: int) -> None:
        """row[target] += k * row[source]"""
        self.D[target] = self.D[target] + k * self.D[source]
        self.U[target] = self.U[target] + k * self.U[source]

    def _add_col(self, target: int, source: int, k: int) -> None:
        """col[target] += k * col[source]"""
        self.D[:, target] = self.D[:, target] + k * self.D[:, source]
        self.V[:, target] = self.V[:, target] + k * self.V[:, source]

    def _verify(self) -> None:
        if not np.array_equal(self.U.dot(self.original).dot(self.V), self.D):
            raise MatrixError("Smith normal form failed U·M·V = D")
        diag = self.diagonal()
        off = self.D.copy()
        for i in range(len(diag)):
            off[i, i] = 0
        if np.count_nonzero(off):
            raise MatrixError("Smith normal form is not diagonal")
        nonzero = [d for d in diag if d != 0]
        if any(d < 0 for d in diag) or diag[: len(nonzero)] != nonzero:
            raise MatrixError("Smith normal form diagonal is not normalized")
        for a, b in zip(nonzero, nonzero[1:]):
            if b % a != 0:
                raise MatrixError(f"Smith normal form breaks divisibility: {a} does not divide {b}")


def _min_abs_nonzero(matrix: np.ndarray, s: int) -> tuple[int, int] | None:
    best = None
    for i in range(s, matrix.shape[0]):
        for j in range(s, matrix.shape[1]):
            v = matrix[i, j]
            if v != 0 and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
    if best is None:
        return None
    return best[1], best[2]


def smith_normal_form(matrix) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (D, U, V) with U·M·V = D."""
    return SmithNormalForm(matrix).compute()


def invariant_factors(matrix) -> list[int]:
    snf = SmithNormalForm(matrix)
    snf.compute()
    return snf.diagonal()


# ---------------------------------------------------------------------------
# Hermite normal form and row-span membership
# ---------------------------------------------------------------------------


def hermite_normal_form(matrix) -> np.ndarray:
    """Row-style Hermite normal form with zero rows dropped.

    Pivots are positive and entries above each pivot lie in [0, pivot).
    Two integer matrices have the same row lattice iff their forms agree.
    """
    H = as_integer_matrix(matrix).copy()
    m, n = H.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            live = [i for i in range(r, m) if H[i, c] != 0]
            if not live:
                break
            p = min(live, key=lambda i: abs(H[i, c]))
            if p != r:
                H[[r, p]] = H[[p, r]]
            others = [i for i in range(r + 1, m) if H[i, c] != 0]
            if not others:
                break
            for i in others:
                H[i] = H[i] - (H[i, c] // H[r, c]) * H[r]
        if H[r, c] == 0:
            continue
        if H[r, c] < 0:
            H[r] = -H[r]
        for i in range(r):
            H[i] = H[i] - (H[i, c] // H[r, c]) * H[r]
        r += 1
    return H[:r]


def row_coordinates(basis, vector: Sequence[int]) -> list[int] | None:
    """Integer c with c · basis = vector, or None when no such c exists."""
    B = as_integer_matrix(basis)
    m, n = B.shape
    x = np.array([int(v) for v in vector], dtype=object)
    if len(x) != n:
        raise MatrixError(f"vector length {len(x)} does not match basis width {n}")
    if m == 0:
        return [] if not any(x) else None
    D, U, V = smith_normal_form(B)
    xv = x.dot(V)
    w = [0] * m
    for i in range(n):
        d = D[i, i] if i < m else 0
        if d == 0:
            if xv[i] != 0:
                return None
            continue
        if xv[i] % d != 0:
            return None
        w[i] = xv[i] // d
    c = np.array(w, dtype=object).dot(U)
    return [int(v) for v in c]


# ---------------------------------------------------------------------------
# Rational null spaces and signatures
# ---------------------------------------------------------------------------


def rational_nullspace(matrix) -> list[list[Fraction]]:
    """Basis of the right null space of an integer matrix over Q (row vectors)."""
    M = as_integer_matrix(matrix)
    width = M.shape[1]
    if M.shape[0] == 0 or not np.count_nonzero(M):
        return [[Fraction(int(i == j)) for j in range(width)] for i in range(width)]
    rows = to_lists(M)
    basis = sympy.Matrix(rows).nullspace()
    out = []
    for vec in basis:
        out.append([Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in vec])
    return out


def symmetric_signature(matrix: Sequence[Sequence[Fraction | int]]) -> int:
    """Signature (#positive − #negative) of a symmetric rational matrix.

    Sylvester's law of inertia by exact congruence pivoting: a nonzero
    diagonal pivot is recorded and eliminated; when the diagonal vanishes
    but an off-diagonal entry S_ij does not, e_i ← e_i + e_j creates the
    pivot 2·S_ij.
    """
    S = [[Fraction(v) for v in row] for row in matrix]
    n = len(S)
    for row in S:
        if len(row) != n:
            raise MatrixError("signature of a non-square matrix")
    for i in range(n):
        for j in range(i):
            if S[i][j] != S[j][i]:
                raise MatrixError("signature of a non-symmetric matrix")

    signature = 0
    live = list(range(n))
    while live:
        k = next((i for i in live if S[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in live for j in live if i != j and S[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for t in range(n):
                S[i][t] += S[j][t]
            for t in range(n):
                S[t][i] += S[t][j]
            k = i
        pivot = S[k][k]
        signature += 1 if pivot > 0 else -1
        live.remove(k)
        for i in live:
            factor = S[i][k] / pivot
            if factor:
                for j in live:
                    S[i][j] -= factor * S[k][j]
        for i in live:
            S[i][k] = Fraction(0)
            S[k][i] = Fraction(0)
    return signature
