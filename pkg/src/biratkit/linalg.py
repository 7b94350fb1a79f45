"""Dense exact linear algebra over a :class:`FieldSpec`.

Prime fields with p < 2**31 are row-reduced with int64 numpy arrays; QQ and
larger primes fall back to Python integers/fractions.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

import numpy as np

from .field import FieldSpec

NUMPY_PRIME_LIMIT = 2**31
BLOCK_ROWS = 256


class Matrix:
    """Row-major matrix of raw field values."""

    def __init__(self, field: FieldSpec, rows: Sequence[Sequence], ncols: int = None):
        self.field = field
        self.rows = [[field.convert(v) for v in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")
        self.ncols = ncols

    @classmethod
    def raw(cls, field: FieldSpec, rows: List[list], ncols: int) -> "Matrix":
        m = cls.__new__(cls)
        m.field, m.rows, m.nrows, m.ncols = field, rows, len(rows), ncols
        return m

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def apply(self, v: Sequence) -> list:
        f = self.field
        out = []
        for r in self.rows:
            s = f.zero()
            for a, b in zip(r, v):
                if a and b:
                    s = f.add(s, f.mul(a, b))
            out.append(s)
        return out

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field})"


def _rref_python(field: FieldSpec, rows: List[list], ncols: int) -> Tuple[List[list], List[int]]:
    rows = [list(r) for r in rows]
    p = field.p
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        pr = [field.mul(v, inv) for v in rows[r]]
        rows[r] = pr
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                a = rows[i][c]
                if p:
                    rows[i] = [(x - a * y) % p for x, y in zip(rows[i], pr)]
                else:
                    rows[i] = [x - a * y for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _rref_numpy(p: int, rows: List[list], ncols: int) -> Tuple[np.ndarray, List[int]]:
    A = np.array(rows, dtype=np.int64).reshape(len(rows), ncols) % p
    return rref_mod_p(A, p)


def rref_mod_p(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form of an int64 array with entries in [0, p)."""
    nrows, ncols = A.shape
    if nrows > 2 * BLOCK_ROWS and float(p) * p * ncols < 2.0**53:
        return _rref_blocked(A, p)
    return _rref_dense(A, p)


def _rref_dense(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    A = A.copy()
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = A[r] * inv % p
        below = r + 1 + np.flatnonzero(A[r + 1 :, c])
        if below.size:
            A[below] = (A[below] - np.outer(A[below, c], A[r])) % p
        pivots.append(c)
        r += 1
    A = A[:r]
    # back substitution on the (small) echelon part
    for i in range(r - 1, -1, -1):
        c = pivots[i]
        above = np.flatnonzero(A[:i, c])
        if above.size:
            A[above] = (A[above] - np.outer(A[above, c], A[i])) % p
    return A, pivots


def _matmul_mod(X: np.ndarray, Y: np.ndarray, p: int) -> np.ndarray:
    """X @ Y mod p, exact in float64 while inner dimension * p^2 < 2^53."""
    Z = np.fmod(X.astype(np.float64) @ Y.astype(np.float64), p)
    return Z.astype(np.int64)


def _rref_blocked(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Row blocks are reduced against the current echelon form by one matrix
    product, then echelonized on their own and merged."""
    nrows, ncols = A.shape
    E = np.zeros((0, ncols), dtype=np.int64)
    pivots: List[int] = []
    for start in range(0, nrows, BLOCK_ROWS):
        B = A[start : start + BLOCK_ROWS]
        if pivots:
            B = (B - _matmul_mod(B[:, pivots], E, p)) % p
        B = B[np.any(B != 0, axis=1)]
        if not B.shape[0]:
            continue
        N, newpiv = _rref_dense(B, p)
        if not newpiv:
            continue
        if pivots:
            E = (E - _matmul_mod(E[:, newpiv], N, p)) % p
        E = np.vstack([E, N])
        pivots = pivots + newpiv
        order = np.argsort(pivots)
        E = E[order]
        pivots = [pivots[i] for i in order]
        if len(pivots) == ncols:
            break
    return E, pivots


def kernel_from_rref(field: FieldSpec, rref_rows, pivots: List[int], ncols: int) -> List[list]:
    """Canonical kernel basis: one vector per free column, in increasing order."""
    piv_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in piv_set:
            continue
        v = [field.zero()] * ncols
        v[f] = field.one()
        for i, c in enumerate(pivots):
            a = rref_rows[i][f]
            if a:
                v[c] = field.neg(field.convert(int(a)) if field.p else a)
        basis.append(v)
    return basis


def row_reduce(M: Matrix) -> Tuple[Matrix, int, List[list]]:
    """(rref, rank, kernel basis) of ``M``."""
    field = M.field
    if M.nrows == 0:
        return Matrix.raw(field, [], M.ncols), 0, kernel_from_rref(field, [], [], M.ncols)
    if field.p and field.p < NUMPY_PRIME_LIMIT:
        A, pivots = _rref_numpy(field.p, M.rows, M.ncols)
        rows = [[int(x) for x in row] for row in A]
    else:
        rows, pivots = _rref_python(field, M.rows, M.ncols)
    rank = len(pivots)
    kernel = kernel_from_rref(field, rows, pivots, M.ncols)
    return Matrix.raw(field, rows, M.ncols), rank, kernel


def rank(M: Matrix) -> int:
    return row_reduce(M)[1]


def kernel(M: Matrix) -> List[list]:
    return row_reduce(M)[2]


def solve_kernel_sparse(field: FieldSpec, rows: List[dict], ncols: int) -> List[list]:
    """Kernel of a matrix given as sparse rows ``{col: value}``."""
    if field.p and field.p < NUMPY_PRIME_LIMIT:
        A = np.zeros((len(rows), ncols), dtype=np.int64)
        for i, r in enumerate(rows):
            for c, v in r.items():
                A[i, c] = v
        if len(rows):
            R, pivots = rref_mod_p(A % field.p, field.p)
        else:
            R, pivots = A, []
        return kernel_from_rref(field, R, pivots, ncols)
    dense = [[r.get(c, field.zero()) for c in range(ncols)] for r in rows]
    R, pivots = _rref_python(field, dense, ncols)
    return kernel_from_rref(field, R, pivots, ncols)


def inverse(M: Matrix) -> Matrix:
    """Inverse of a square matrix; raises ValueError when singular."""
    n = M.nrows
    if n != M.ncols:
        raise ValueError("not square")
    f = M.field
    aug = Matrix.raw(f, [list(r) + [f.one() if i == j else f.zero() for j in range(n)] for i, r in enumerate(M.rows)], 2 * n)
    R, rk, _ = row_reduce(aug)
    if rk < n or any(not R.rows[i][i] for i in range(n)):
        raise ValueError("singular matrix")
    return Matrix.raw(f, [r[n:] for r in R.rows[:n]], n)
