"""Dense linear algebra over F_q on small constant matrices.

Matrices are lists of rows of element codes.  Everything here is scalar
Python; the batched numpy routines live in :mod:`acimat.rank`.
"""

from __future__ import annotations

from typing import Sequence

from .errors import DimensionMismatch, SingularMatrix
from .gf import Field

Mat = list[list[int]]


def zeros(m: int, n: int) -> Mat:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> Mat:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence[int]]) -> Mat:
    return [list(col) for col in zip(*M)]


def rref(F: Field, M: Sequence[Sequence[int]]) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    R = [list(row) for row in M]
    if not R:
        return R, []
    m, n = len(R), len(R[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def rank(F: Field, M: Sequence[Sequence[int]]) -> int:
    if not M or not M[0]:
        return 0
    return len(rref(F, M)[1])


def nullspace(F: Field, M: Sequence[Sequence[int]], ncols: int | None = None) -> Mat:
    """Basis of {x : M x = 0}, one basis vector per free column, ascending."""
    if not M:
        n = ncols or 0
        return identity(n)
    n = len(M[0])
    R, pivots = rref(F, M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = F.neg(R[i][f])
        basis.append(x)
    return basis


def left_kernel(F: Field, M: Sequence[Sequence[int]], nrows: int) -> Mat:
    """Basis of {t : t M = 0} for an ``nrows``-row matrix M (possibly 0 columns)."""
    if not M or not M[0]:
        return identity(nrows)
    return nullspace(F, transpose(M))


def matmul(F: Field, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Mat:
    if A and len(A[0]) != len(B):
        raise DimensionMismatch(f"{len(A)}x{len(A[0])} times {len(B)}x?")
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * n
        for a, brow in zip(row, B):
            if a:
                acc = [F.add(x, F.mul(a, y)) for x, y in zip(acc, brow)]
        out.append(acc)
    return out


def matvec(F: Field, A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [dot(F, row, v) for row in A]


def dot(F: Field, u: Sequence[int], v: Sequence[int]) -> int:
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = F.add(acc, F.mul(a, b))
    return acc


def inverse(F: Field, M: Sequence[Sequence[int]]) -> Mat:
    n = len(M)
    if any(len(row) != n for row in M):
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = [list(row) + e for row, e in zip(M, identity(n))]
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in R]


def is_nonsingular(F: Field, M: Sequence[Sequence[int]]) -> bool:
    n = len(M)
    return all(len(row) == n for row in M) and rank(F, M) == n


def extend_to_basis(F: Field, rows: Sequence[Sequence[int]], dim: int) -> Mat:
    """Unit vectors e_1, e_2, ... (in order) completing ``rows`` to a basis of F^dim.

    Only the added vectors are returned.
    """
    current = [list(r) for r in rows]
    rk = rank(F, current) if current else 0
    added = []
    for i in range(dim):
        if rk == dim:
            break
        e = [0] * dim
        e[i] = 1
        if rank(F, current + [e]) > rk:
            current.append(e)
            added.append(e)
            rk += 1
    return added


def block_diag(*blocks: Sequence[Sequence[int]]) -> Mat:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[off + i][off:off + len(row)] = list(row)
        off += len(b)
    return out
