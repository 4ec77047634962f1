"""Independent witness checks.

An ACI-matrix is a constant matrix plus one coefficient matrix per
variable.  ``T A Q`` is checked by multiplying each of those constant
matrices separately with numpy and comparing against the claimed result;
nothing here reuses the symbolic code path of ``apply_equivalence``.
"""

from __future__ import annotations

import numpy as np

from .aci import ACIMatrix, Equivalence
from .errors import VerificationFailed
from .gf import Field
from .rank import compile_matrix


def _matmul(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if F.is_prime_field:
        return (A @ B) % F.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = F.vadd(out, F.vmul(A[:, k, None], B[None, k, :]))
    return out


def _layers(A: ACIMatrix, variables: tuple[str, ...]) -> np.ndarray:
    C, names, coef = compile_matrix(A)
    out = np.zeros((1 + len(variables), A.m, A.n), dtype=np.int64)
    out[0] = C
    index = {v: k + 1 for k, v in enumerate(variables)}
    for k, v in enumerate(names):
        if v not in index:
            raise VerificationFailed(f"variable {v} appears only in the claimed result")
        out[index[v]] = coef[k]
    return out


def witness_holds(A: ACIMatrix, E: Equivalence, B: ACIMatrix) -> bool:
    """Whether ``B == T A Q`` exactly (every constant and coefficient matrix)."""
    F = A.field
    if B.field != F or E.T.field != F or B.shape != A.shape or E.m != A.m or E.n != A.n:
        return False
    T = np.array(E.T.rows, dtype=np.int64)
    variables = tuple(sorted(set(A.variables) | set(B.variables)))
    try:
        lhs, rhs = _layers(A, variables), _layers(B, variables)
    except VerificationFailed:
        return False
    perm = list(E.perm)
    return all(np.array_equal(_matmul(F, T, L)[:, perm], R) for L, R in zip(lhs, rhs))


def check_witness(A: ACIMatrix, E: Equivalence, B: ACIMatrix, what: str = "witness") -> None:
    if not witness_holds(A, E, B):
        raise VerificationFailed(f"{what} does not reproduce the claimed matrix")


def zero_region(B: ACIMatrix, rows: range, cols: range) -> bool:
    return all(B.entry(i, j).is_zero for i in rows for j in cols)


def check_decomposition(A: ACIMatrix, D) -> None:
    """Witness, zero block and block tags of a :class:`BlockDecomposition`."""
    from .decompose import is_unit_upper_triangular
    from .aci import submatrix

    check_witness(A, D.witness, D.matrix, "decomposition witness")
    M = D.matrix
    m, n = M.shape
    if D.r is not None and not zero_region(M, range(m - D.r, m), range(D.s)):
        raise VerificationFailed("claimed zero block is not identically zero")
    for blk in (D.B, D.C):
        if blk is None:
            continue
        sub = submatrix(M, range(*blk.rows), range(*blk.cols))
        if blk.tag == "triangular" and not is_unit_upper_triangular(sub):
            raise VerificationFailed(f"block at {blk.rows}x{blk.cols} is not unit upper triangular")
    if D.C is not None and D.B is None and D.case == "iii" and D.C.rows[1] != m:
        raise VerificationFailed("C must sit at the bottom")
    if D.B is not None and D.C is not None:
        # C's rows are zero in every column left of C
        if not zero_region(M, range(*D.C.rows), range(D.C.cols[0])):
            raise VerificationFailed("rows of C are not zero left of C")
