"""Affine subspaces of F^m as ACI-matrix columns.

Column j of the matrix parametrizes V_j = base_j + span(directions_j) with
its own variables, so a completion is a choice of one point per subspace and
its rank is the dimension of the span of those points together with the
origin.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from . import linalg
from .aci import ACIMatrix, AffineForm, to_code
from .errors import BudgetExceeded, DimensionMismatch, EmptySelection
from .gf import Field
from .rank import DEFAULT_COMPLETION_BUDGET, RankSummary, rank_set


@dataclass(frozen=True)
class AffineSubspace:
    """``base + span(directions)``; dependent directions are reduced to a basis.

    ``reduced`` records whether that happened.
    """

    field: Field
    base: tuple[int, ...]
    directions: tuple[tuple[int, ...], ...] = ()
    reduced: bool = field(default=False, compare=False)

    @classmethod
    def make(cls, F: Field, base: Sequence[int], directions: Sequence[Sequence[int]] = ()) -> "AffineSubspace":
        base = tuple(to_code(F, x) for x in base)
        dirs = [tuple(to_code(F, x) for x in d) for d in directions]
        if any(len(d) != len(base) for d in dirs):
            raise DimensionMismatch("directions must live in the same F^m as the base point")
        kept = []
        for d in dirs:
            # greedy: keep a direction if it raises the rank of the kept set
            if linalg.rank(F, kept + [list(d)]) > len(kept):
                kept.append(list(d))
        return cls(F, base, tuple(tuple(d) for d in kept), len(kept) < len(dirs))

    @property
    def ambient(self) -> int:
        return len(self.base)

    @property
    def dim(self) -> int:
        return len(self.directions)

    def points(self):
        F = self.field
        for coeffs in product(range(F.q), repeat=self.dim):
            p = list(self.base)
            for c, d in zip(coeffs, self.directions):
                p = [F.add(x, F.mul(c, y)) for x, y in zip(p, d)]
            yield p


def subspaces_to_aci(subspaces: Sequence[AffineSubspace]) -> ACIMatrix:
    """Column j is ``base_j + sum_k x{j}d{k} * direction_k`` (1-based j, k)."""
    if not subspaces:
        raise EmptySelection("need at least one subspace")
    F = subspaces[0].field
    m = subspaces[0].ambient
    if any(S.ambient != m for S in subspaces) or any(S.field != F for S in subspaces):
        raise DimensionMismatch("all subspaces must lie in the same F^m")
    cols = []
    for j, S in enumerate(subspaces, 1):
        names = [f"x{j}d{k}" for k in range(1, S.dim + 1)]
        cols.append([
            AffineForm(S.base[i], tuple(sorted((v, d[i]) for v, d in zip(names, S.directions) if d[i])))
            for i in range(m)
        ])
    return ACIMatrix(F, tuple(tuple(col[i] for col in cols) for i in range(m)))


def span_dim_set(subspaces: Sequence[AffineSubspace], limit: int = DEFAULT_COMPLETION_BUDGET) -> RankSummary:
    """``{dim <0, P_1, ..., P_n> : P_j in V_j}`` as a rank set."""
    return rank_set(subspaces_to_aci(subspaces), limit)


def span_dim_set_bruteforce(subspaces: Sequence[AffineSubspace], limit: int = 2**16) -> tuple[int, ...]:
    """Direct enumeration over point tuples; independent of the ACI machinery."""
    F = subspaces[0].field
    total = 1
    for S in subspaces:
        total *= F.q ** S.dim
    if total > limit:
        raise BudgetExceeded(total, limit, what="point tuples")
    dims = {linalg.rank(F, list(pts)) for pts in product(*(list(S.points()) for S in subspaces))}
    return tuple(sorted(dims))
