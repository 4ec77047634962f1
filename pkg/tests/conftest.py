"""Shared brute-force oracles.

These deliberately avoid the numpy engines: plain Python loops over every
completion, scalar field operations and textbook Gaussian elimination.
"""

from itertools import product

import pytest

from acimat.gf import GF


def oracle_rank(F, rows):
    M = [list(r) for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = F.inv(M[rank][c])
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = F.mul(M[i][c], inv)
                M[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def oracle_completions(A):
    """Yield every completion as a list of rows of field codes."""
    F = A.field
    names = A.variables
    for vals in product(range(F.q), repeat=len(names)):
        env = dict(zip(names, vals))
        rows = []
        for i in range(A.m):
            row = []
            for j in range(A.n):
                e = A.entry(i, j)
                x = e.const
                for v, c in e.terms:
                    x = F.add(x, F.mul(c, env[v]))
                row.append(x)
            rows.append(row)
        yield rows


def oracle_rank_set(A):
    return tuple(sorted({oracle_rank(A.field, M) for M in oracle_completions(A)}))


def oracle_column_space_union(A):
    """Set of all vectors lying in the column space of some completion."""
    F = A.field
    covered = set()
    for M in oracle_completions(A):
        cols = [[M[i][j] for i in range(A.m)] for j in range(A.n)]
        for coeffs in product(range(F.q), repeat=A.n):
            v = [0] * A.m
            for c, col in zip(coeffs, cols):
                if c:
                    v = [F.add(a, F.mul(c, b)) for a, b in zip(v, col)]
            covered.add(tuple(v))
    return covered


def oracle_augmentable(A, rho):
    """Some v with rank([M v]) = rho + 1 for every completion M."""
    covered = oracle_column_space_union(A)
    return any(v not in covered for v in product(range(A.field.q), repeat=A.m))


@pytest.fixture(params=[2, 3, 4, 5, 7, 8, 9])
def field(request):
    return GF(request.param)
