"""Rank sets of ACI-matrices: the set of ranks of all completions.

Two engines:

* :func:`rank_set_exhaustive` enumerates every completion in canonical
  mixed-radix order (variables sorted, first variable most significant) and
  row-reduces them in numpy batches.
* :func:`rank_set` first looks for an equivalent block form
  ``[A11 A12; 0 A22]`` whose zero block matches the rank of one probe
  completion; if both diagonal blocks have constant full rank the whole
  matrix is constant, otherwise it falls back to enumeration.  Both engines
  return identical rank sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import linalg
from .aci import ACIMatrix, ConstantMatrix
from .errors import BudgetExceeded
from .gf import Field

DEFAULT_COMPLETION_BUDGET = 2**22
DEFAULT_SUBSET_BUDGET = 2**16
_BATCH_ELEMENTS = 2**20


@dataclass(frozen=True)
class RankSummary:
    rank_set: tuple[int, ...]
    completions_examined: int
    method: str
    parts: tuple["RankSummary", ...] = ()

    @property
    def mrank(self) -> int:
        return self.rank_set[0]

    @property
    def Mrank(self) -> int:
        return self.rank_set[-1]

    @property
    def constant(self) -> Optional[int]:
        return self.rank_set[0] if len(self.rank_set) == 1 else None


def rank_constant(M: ConstantMatrix) -> int:
    return linalg.rank(M.field, M.rows)


# -- batched machinery ------------------------------------------------------

def compile_matrix(A: ACIMatrix) -> tuple[np.ndarray, tuple[str, ...], np.ndarray]:
    """Constant part (m, n), sorted variables, coefficient tensor (V, m, n)."""
    variables = A.variables
    index = {v: k for k, v in enumerate(variables)}
    C = np.zeros((A.m, A.n), dtype=np.int64)
    coef = np.zeros((len(variables), A.m, A.n), dtype=np.int64)
    for i, row in enumerate(A.rows):
        for j, f in enumerate(row):
            C[i, j] = f.const
            for v, c in f.terms:
                coef[index[v], i, j] = c
    return C, variables, coef


def completion_values(F: Field, nvars: int, lo: int, hi: int) -> np.ndarray:
    """Rows ``lo..hi-1`` of the mixed-radix enumeration of F^nvars."""
    idx = np.arange(lo, hi, dtype=np.int64)
    vals = np.empty((hi - lo, nvars), dtype=np.int64)
    for v in range(nvars - 1, -1, -1):
        vals[:, v] = idx % F.q
        idx //= F.q
    return vals


def evaluate_batch(F: Field, C: np.ndarray, coef: np.ndarray, vals: np.ndarray) -> np.ndarray:
    B = vals.shape[0]
    m, n = C.shape
    if coef.shape[0] == 0:
        return np.broadcast_to(C, (B, m, n)).copy()
    if F.is_prime_field:
        M = vals @ coef.reshape(coef.shape[0], m * n)
        return (M.reshape(B, m, n) + C) % F.p
    M = np.broadcast_to(C, (B, m, n)).copy()
    for v in range(coef.shape[0]):
        if coef[v].any():
            M = F.vadd(M, F.vmul(coef[v][None, :, :], vals[:, v, None, None]))
    return M


def eliminate_batch(F: Field, M: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Row-reduce every matrix of a (B, m, n) batch.

    Returns ``(ranks, R, used)`` where ``R`` is the reduced batch and
    ``used[b, i]`` marks the pivot rows of matrix b.  Rows that are not
    pivot rows end up zero, so the pivot rows form a basis of the row space.
    """
    M = np.array(M, dtype=np.int64, copy=True)
    B, m, n = M.shape
    used = np.zeros((B, m), dtype=bool)
    ranks = np.zeros(B, dtype=np.int64)
    ar = np.arange(B)
    for c in range(n):
        col = M[:, :, c]
        cand = (col != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = cand.argmax(axis=1)
        pivrow = M[ar, piv, :]
        pinv = F.vinv(col[ar, piv])
        factor = F.vmul(col, pinv[:, None])
        factor[ar, piv] = 0
        factor[~has] = 0
        M = F.vsub(M, F.vmul(factor[:, :, None], pivrow[:, None, :]))
        used[ar[has], piv[has]] = True
        ranks += has
    return ranks, M, used


def batch_rank(F: Field, M: np.ndarray) -> np.ndarray:
    B, m, n = M.shape
    if m < n:
        M = np.transpose(M, (0, 2, 1))
    return eliminate_batch(F, M)[0]


def completion_count(A: ACIMatrix) -> int:
    return A.field.q ** len(A.variables)


def iter_completion_batches(
    A: ACIMatrix, limit: int = DEFAULT_COMPLETION_BUDGET, first: int = 0
) -> Iterator[np.ndarray]:
    """Yield the completions of A as (B, m, n) code arrays in canonical order.

    ``first`` > 0 makes the first batch that small, so predicates that can
    stop early pay little for it.
    """
    total = completion_count(A)
    if total > limit:
        raise BudgetExceeded(total, limit)
    C, variables, coef = compile_matrix(A)
    step = max(1, _BATCH_ELEMENTS // (A.m * A.n))
    lo = 0
    size = min(first, step) if first else step
    while lo < total:
        hi = min(total, lo + size)
        yield evaluate_batch(A.field, C, coef, completion_values(A.field, len(variables), lo, hi))
        lo = hi
        size = min(step, size * 4)


# -- engines ----------------------------------------------------------------

def rank_set_exhaustive(A: ACIMatrix, limit: int = DEFAULT_COMPLETION_BUDGET) -> RankSummary:
    full = set(range(min(A.m, A.n) + 1))
    seen: set[int] = set()
    examined = 0
    for M in iter_completion_batches(A, limit):
        ranks = batch_rank(A.field, M)
        examined += len(ranks)
        seen.update(int(r) for r in np.unique(ranks))
        if seen == full:
            break
    return RankSummary(tuple(sorted(seen)), examined, "exhaustive")


def has_constant_rank(A: ACIMatrix, rho: int, limit: int = DEFAULT_COMPLETION_BUDGET) -> bool:
    """Whether every completion of A has rank ``rho`` (stops at the first miss)."""
    if rho > min(A.m, A.n) or rho < 0:
        return False
    for M in iter_completion_batches(A, limit, first=64):
        if (batch_rank(A.field, M) != rho).any():
            return False
    return True


def probe_rank(A: ACIMatrix) -> int:
    """Rank of the completion sending every variable to 0."""
    return rank_constant(A.constant_part())


def rank_set(
    A: ACIMatrix,
    limit: int = DEFAULT_COMPLETION_BUDGET,
    subset_limit: int = DEFAULT_SUBSET_BUDGET,
) -> RankSummary:
    """Exact rank set, splitting along a zero block when one certifies the probe rank."""
    from .kernel import split_matrix, zero_block_search

    rho0 = probe_rank(A)
    if 2**A.n > subset_limit or A.is_constant:
        return rank_set_exhaustive(A, limit)
    found = zero_block_search(A, rho0, subset_limit)
    if found is None:
        return rank_set_exhaustive(A, limit)
    r, s, S, K = found
    _, A11, A22 = split_matrix(A, r, s, S, K)
    parts = []
    ok = True
    if A11 is not None:
        sub = rank_set(A11, limit, subset_limit)
        parts.append(sub)
        ok = sub.constant == A.m - r
    if ok and A22 is not None:
        sub = rank_set(A22, limit, subset_limit)
        parts.append(sub)
        ok = sub.constant == A.n - s
    if ok:
        examined = 1 + sum(p.completions_examined for p in parts)
        return RankSummary((rho0,), examined, "decomposed", tuple(parts))
    ex = rank_set_exhaustive(A, limit)
    return RankSummary(ex.rank_set, ex.completions_examined, "exhaustive")


def constant_rank(A: ACIMatrix, limit: int = DEFAULT_COMPLETION_BUDGET) -> Optional[int]:
    return rank_set(A, limit).constant
