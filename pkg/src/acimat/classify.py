"""Constant-rank classifications: reducibility, augmentability, full-rank flavors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .aci import ACIMatrix, delete_column, delete_row
from .errors import BudgetExceeded, NotConstantRank
from .gf import Field
from .rank import (
    DEFAULT_COMPLETION_BUDGET,
    completion_values,
    eliminate_batch,
    has_constant_rank,
    iter_completion_batches,
    rank_set,
)

DEFAULT_VECTOR_BUDGET = 2**20
_SPAN_ELEMENTS = 2**22


def _require_constant(A: ACIMatrix, rho: int, limit: int) -> None:
    if not has_constant_rank(A, rho, limit):
        raise NotConstantRank(f"matrix does not have constant rank {rho}")


def is_column_irreducible(
    A: ACIMatrix, rho: int, check: bool = True, limit: int = DEFAULT_COMPLETION_BUDGET
) -> tuple[bool, Optional[int]]:
    """(True, None) if no column can be deleted keeping constant rank rho,
    else (False, first deletable column)."""
    if check:
        _require_constant(A, rho, limit)
    if A.n == 1:
        # deleting the only column leaves rank 0
        return (rho != 0, None if rho else 0)
    for j in range(A.n):
        if has_constant_rank(delete_column(A, j), rho, limit):
            return False, j
    return True, None


def is_row_irreducible(
    A: ACIMatrix, rho: int, check: bool = True, limit: int = DEFAULT_COMPLETION_BUDGET
) -> tuple[bool, Optional[int]]:
    if check:
        _require_constant(A, rho, limit)
    if A.m == 1:
        return (rho != 0, None if rho else 0)
    for i in range(A.m):
        if has_constant_rank(delete_row(A, i), rho, limit):
            return False, i
    return True, None


def projective_count(q: int, m: int) -> int:
    return (q**m - 1) // (q - 1)


def index_to_vector(q: int, m: int, idx: int) -> tuple[int, ...]:
    return tuple((idx // q ** (m - 1 - i)) % q for i in range(m))


def column_space_union(A: ACIMatrix, rho: int, limit: int = DEFAULT_COMPLETION_BUDGET) -> np.ndarray:
    """Boolean mask over F^m (index = base-q number, first coordinate most
    significant) of vectors lying in the column space of some completion."""
    F = A.field
    q, m = F.q, A.m
    weights = q ** np.arange(m - 1, -1, -1, dtype=np.int64)
    combos = completion_values(F, rho, 0, q**rho)
    marked = np.zeros(q**m, dtype=bool)
    marked[0] = True
    for M in iter_completion_batches(A, limit):
        ranks, R, used = eliminate_batch(F, np.transpose(M, (0, 2, 1)))
        if (ranks != rho).any():
            raise NotConstantRank(f"a completion has rank {int(ranks[ranks != rho][0])}, not {rho}")
        if rho == 0:
            continue
        basis = R[used].reshape(len(ranks), rho, m)
        step = max(1, _SPAN_ELEMENTS // (len(combos) * m))
        for lo in range(0, len(basis), step):
            b = basis[lo:lo + step]
            span = np.zeros((len(b), len(combos), m), dtype=np.int64)
            for k in range(rho):
                span = F.vadd(span, F.vmul(combos[None, :, k, None], b[:, None, k, :]))
            marked[(span * weights).sum(axis=-1).ravel()] = True
    return marked


def find_augmenting_vector(
    A: ACIMatrix,
    rho: int,
    check: bool = True,
    limit: int = DEFAULT_COMPLETION_BUDGET,
    vector_limit: int = DEFAULT_VECTOR_BUDGET,
) -> Optional[tuple[int, ...]]:
    """First v (zero, then projective representatives ascending) with
    ``rank_set([A v]) == {rho + 1}``, or None.

    [A v] has rank rho + 1 at a completion exactly when v is outside that
    completion's column space, so the augmenting vectors are the complement
    of the union of all column spaces.
    """
    if check:
        _require_constant(A, rho, limit)
    F, m = A.field, A.m
    if rho >= m:
        return None
    need = projective_count(F.q, m)
    if need > vector_limit:
        raise BudgetExceeded(need, vector_limit, what="projective vectors")
    marked = column_space_union(A, rho, limit)
    free = np.flatnonzero(~marked)
    if not len(free):
        return None
    # the least index of a scalar class has leading nonzero coordinate 1
    return index_to_vector(F.q, m, int(free[0]))


def augmenting_transform(F: Field, v: tuple[int, ...]) -> list[list[int]]:
    """Nonsingular T with ``T v = e_1``: first row the lexicographically least
    functional with value 1 on v, then a basis of the annihilator of v."""
    m = len(v)
    last = max(i for i in range(m) if v[i])
    t = [0] * m
    t[last] = F.inv(v[last])
    return [t] + linalg.nullspace(F, [list(v)])


@dataclass(frozen=True)
class Classification:
    rank_set: tuple[int, ...]
    constant: Optional[int]
    full_rank: Optional[bool] = None
    square_fr: Optional[bool] = None
    minimal_fr: Optional[bool] = None
    maximal_fr: Optional[bool] = None
    row_reducible: Optional[bool] = None
    column_reducible: Optional[bool] = None
    irreducible: Optional[bool] = None
    column_augmentable: Optional[bool] = None
    completely_irreducible: Optional[bool] = None
    reducible_row: Optional[int] = None
    reducible_column: Optional[int] = None
    augmenting_vector: Optional[tuple[int, ...]] = None


def classify(
    A: ACIMatrix,
    limit: int = DEFAULT_COMPLETION_BUDGET,
    vector_limit: int = DEFAULT_VECTOR_BUDGET,
    rows: bool = True,
) -> Classification:
    """Every flag of a constant-rank matrix; flags stay None if A is not constant.

    ``rows=False`` skips the row-reducibility scan (row flags and
    ``irreducible`` stay None).
    """
    rs = rank_set(A, limit).rank_set
    if len(rs) != 1:
        return Classification(rs, None)
    rho = rs[0]
    m, n = A.shape
    if rho == 0:
        return Classification(rs, 0, *([False] * 9))
    col_irr, col_w = is_column_irreducible(A, rho, check=False, limit=limit)
    v = find_augmenting_vector(A, rho, check=False, limit=limit, vector_limit=vector_limit)
    row_red = row_w = irreducible = None
    if rows:
        row_irr, row_w = is_row_irreducible(A, rho, check=False, limit=limit)
        row_red = not row_irr
        irreducible = row_irr and col_irr
    return Classification(
        rank_set=rs,
        constant=rho,
        full_rank=rho == min(m, n),
        square_fr=rho == m == n,
        minimal_fr=rho == m < n and col_irr,
        maximal_fr=rho == n < m and v is None,
        row_reducible=row_red,
        column_reducible=not col_irr,
        irreducible=irreducible,
        column_augmentable=v is not None,
        completely_irreducible=col_irr and v is None,
        reducible_row=row_w,
        reducible_column=col_w,
        augmenting_vector=v,
    )


def is_completely_irreducible(A: ACIMatrix, rho: int, limit: int = DEFAULT_COMPLETION_BUDGET) -> bool:
    col_irr, _ = is_column_irreducible(A, rho, check=False, limit=limit)
    return col_irr and find_augmenting_vector(A, rho, check=False, limit=limit) is None
