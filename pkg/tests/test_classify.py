import random
from itertools import product

import pytest

from acimat.aci import augment, delete_column, submatrix
from acimat.classify import (
    augmenting_transform, classify, find_augmenting_vector, index_to_vector, is_column_irreducible,
    is_row_irreducible, projective_count,
)
from acimat.corpus import load_matrix
from acimat.decompose import gen_constant_rank, maximal_gadget, minimal_gadget
from acimat.errors import BudgetExceeded, NotConstantRank
from acimat.gf import GF
from acimat.linalg import matvec
from acimat.io import parse_matrix

from conftest import oracle_augmentable, oracle_rank_set


def _oracle_flags(A):
    rs = oracle_rank_set(A)
    assert len(rs) == 1
    rho = rs[0]
    col_red = any(oracle_rank_set(delete_column(A, j)) == (rho,) for j in range(A.n)) if A.n > 1 else rho == 0
    row_red = any(oracle_rank_set(submatrix(A, [i for i in range(A.m) if i != k], range(A.n))) == (rho,)
                  for k in range(A.m)) if A.m > 1 else rho == 0
    aug = rho < A.m and oracle_augmentable(A, rho)
    return rho, col_red, row_red, aug


def test_flags_against_brute_force():
    rng = random.Random(3)
    seen = 0
    while seen < 60:
        q = rng.choice([2, 3])
        m, n = rng.randint(2, 4), rng.randint(2, 4)
        A = gen_constant_rank(m, n, rng.randint(1, min(m, n)), GF(q), rng.randrange(10**6), max_vars=4)
        rho, col_red, row_red, aug = _oracle_flags(A)
        c = classify(A)
        assert c.constant == rho
        assert c.column_reducible == col_red
        assert c.row_reducible == row_red
        assert c.column_augmentable == aug
        assert c.completely_irreducible == (not col_red and not aug)
        assert c.minimal_fr == (rho == m < n and not col_red)
        assert c.maximal_fr == (rho == n < m and not aug)
        if c.augmenting_vector is not None:
            assert oracle_rank_set(augment(A, c.augmenting_vector)) == (rho + 1,)
        seen += 1


def test_augmenting_vector_is_lex_least_projective():
    A = load_matrix("example1.4ii-A")
    v = find_augmenting_vector(A, 3)
    assert v == (1, 0, 1, 0, 0)
    for w in product(range(2), repeat=5):
        if any(w) and w < v:
            assert oracle_rank_set(augment(A, w)) != (4,)


def test_projective_enumeration():
    for q, m in ((2, 3), (3, 3), (4, 2), (5, 2)):
        vecs = [index_to_vector(q, m, k) for k in range(q**m)]
        assert len(set(vecs)) == q**m and vecs == sorted(vecs)
        reps = [v for v in vecs if any(v) and next(x for x in v if x) == 1]
        assert len(reps) == projective_count(q, m) == (q**m - 1) // (q - 1)


def test_augmenting_transform_maps_to_e1():
    for q in (2, 3, 4, 5):
        F = GF(q)
        rng = random.Random(q)
        for _ in range(20):
            v = tuple(rng.randrange(q) for _ in range(4))
            if not any(v):
                continue
            T = augmenting_transform(F, v)
            assert matvec(F, T, v) == [1, 0, 0, 0]


def test_single_row_or_column():
    A = parse_matrix("field 2 [ 1 ; x ]")
    assert is_column_irreducible(A, 1) == (True, None)
    # dropping row 1 leaves [x], which vanishes at x = 0; dropping row 2 leaves [1]
    ok, w = is_row_irreducible(A, 1)
    assert not ok and w == 1


def test_non_constant_leaves_flags_unset():
    A = parse_matrix("field 2 [ x, 1 ; 0, 1 ]")
    c = classify(A)
    assert c.rank_set == (1, 2) and c.constant is None and c.minimal_fr is None
    with pytest.raises(NotConstantRank):
        is_column_irreducible(A, 2)


def test_zero_matrix():
    c = classify(parse_matrix("field 3 [ 0, 0 ]"))
    assert c.constant == 0 and not c.full_rank and not c.completely_irreducible


def test_vector_budget():
    A = maximal_gadget(GF(2), ["x1", "x2", "x3"])
    with pytest.raises(BudgetExceeded):
        find_augmenting_vector(A, 3, vector_limit=3)


def test_gadgets_small():
    assert classify(minimal_gadget(GF(2), ["x1", "x2", "x3"])).minimal_fr
    assert classify(maximal_gadget(GF(2), ["x1", "x2", "x3"])).maximal_fr


def test_rows_false_skips_row_scan():
    c = classify(load_matrix("E"), rows=False)
    assert c.row_reducible is None and c.irreducible is None and c.constant == 5
