"""Zero blocks via constant left kernels of column subsets.

A constant row vector t kills a set S of columns identically (as
polynomials) iff it is orthogonal to every generator of those columns: the
constant column and each variable's coefficient column.  Putting a kernel
basis in the last r rows of T and the columns S first yields
``T A Q = [A11 A12; 0_{r x s} A22]``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .aci import ACIMatrix, Equivalence, apply_equivalence, column_subset_kernel_input, make_equivalence, submatrix
from .errors import SubsetBudgetExceeded


def constant_left_kernel(A: ACIMatrix, S: Sequence[int]) -> list[list[int]]:
    """Basis of ``{t in F^m : t A[:, S] == 0 as polynomials}``."""
    G = column_subset_kernel_input(A, S)
    return linalg.left_kernel(A.field, G, A.m)


def _subset_ranks(A: ACIMatrix, subsets: list[tuple[int, ...]]) -> np.ndarray:
    from .rank import batch_rank

    gens = [np.array(A.generators(j), dtype=np.int64).T for j in range(A.n)]
    width = max(sum(gens[j].shape[1] for j in S) for S in subsets)
    batch = np.zeros((len(subsets), A.m, width), dtype=np.int64)
    for b, S in enumerate(subsets):
        G = np.concatenate([gens[j] for j in S], axis=1)
        batch[b, :, :G.shape[1]] = G
    return batch_rank(A.field, batch)


def zero_block_search(
    A: ACIMatrix, rho: int, subset_limit: int
) -> Optional[tuple[int, int, tuple[int, ...], list[list[int]]]]:
    """First column subset S (by size, then lexicographic) whose left kernel has
    dimension r >= 1 with ``(m - r) + (n - |S|) == rho``.

    Returns ``(r, s, S, kernel_basis)`` or None.
    """
    m, n = A.shape
    if 2**n > subset_limit:
        raise SubsetBudgetExceeded(2**n, subset_limit)
    for s in range(1, n + 1):
        # need rank(G_S) = m - r = rho - (n - s), with r >= 1
        target = rho - (n - s)
        if target < 0 or target > m - 1:
            continue
        subsets = list(combinations(range(n), s))
        ranks = _subset_ranks(A, subsets)
        hits = np.flatnonzero(ranks == target)
        if len(hits):
            S = subsets[int(hits[0])]
            K = constant_left_kernel(A, S)
            return m - target, s, S, K
    return None


def split_equivalence(A: ACIMatrix, S: Sequence[int], K: list[list[int]]) -> Equivalence:
    """T = [unit-vector completion; K], columns S moved to the front."""
    top = linalg.extend_to_basis(A.field, K, A.m)
    rest = [j for j in range(A.n) if j not in S]
    return make_equivalence(A.field, top + K, list(S) + rest)


def split_matrix(A: ACIMatrix, r: int, s: int, S, K):
    """The split witness and the diagonal blocks A11, A22 (None when void)."""
    E = split_equivalence(A, S, K)
    B = apply_equivalence(A, E)
    m, n = A.shape
    A11 = submatrix(B, range(m - r), range(s)) if r < m else None
    A22 = submatrix(B, range(m - r, m), range(s, n)) if s < n else None
    return E, A11, A22
