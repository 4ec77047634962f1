import random

import pytest
from hypothesis import given, settings, strategies as st

from acimat.aci import random_aci
from acimat.errors import ACISyntaxError, UnknownFieldElement
from acimat.gf import GF
from acimat.io import parse_document, parse_matrix, serialize_matrix, serialize_subspaces


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9, 16, 25, 27]), st.integers(1, 4), st.integers(1, 4),
       st.integers(0, 6), st.integers(0, 10**6))
def test_round_trip(q, m, n, nv, seed):
    A = random_aci(GF(q), m, n, nv, random.Random(seed), density=0.6)
    text = serialize_matrix(A)
    assert parse_matrix(text) == A
    assert serialize_matrix(parse_matrix(text)) == text


def test_extension_coefficients():
    A = parse_matrix("field 9\n[ g:21*x + g:1, 2 ; g:10 - x, 0 ]")
    F = A.field
    # g:21 is 2g + 1: digits lowest first are (1, 2)
    assert A.entry(0, 0).coef("x") == F.from_digits([1, 2])
    assert A.entry(0, 0).const == F.from_digits([1, 0])
    assert A.entry(1, 0).coef("x") == F.neg(1)
    # g:1 is the prime-subfield 1 and is written plainly
    assert serialize_matrix(A) == "field 9\n[ g:21*x+1, 2 ; 2*x+g:10, 0 ]"


def test_integers_reduce_mod_p():
    A = parse_matrix("field 3 [ 4, -1 ]")
    assert A.rows[0][0].const == 1 and A.rows[0][1].const == 2


def test_comments_and_whitespace():
    doc = parse_document("# id\n# note\nfield 2\n[ x ,1;\n  0 , y ]  # trailing\n")
    assert doc.comments == ["id", "note", "trailing"]
    assert doc.matrix.shape == (2, 2)


@pytest.mark.parametrize("text, line, col", [
    ("[ x ]", 1, 1),
    ("field 2\n[ x, ]", 2, 6),
    ("field 2\n[ x ; 1, 0 ]", 2, 12),
    ("field 6 [ 1 ]", 1, 7),
    ("field 2 [ x $ ]", 1, 13),
])
def test_syntax_errors_carry_positions(text, line, col):
    with pytest.raises(ACISyntaxError) as info:
        parse_matrix(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_unknown_field_element():
    with pytest.raises(UnknownFieldElement):
        parse_matrix("field 4 [ g:12 ]")
    with pytest.raises(UnknownFieldElement):
        parse_matrix("field 5 [ g:1 ]")


def test_subspace_documents():
    text = "field 3\nsubspace [1, 0] + [0, 1]\nsubspace [2, 2]"
    doc = parse_document(text)
    assert [s.base for s in doc.subspaces] == [[1, 0], [2, 2]]
    assert serialize_subspaces(doc.field, doc.subspaces) == text


def test_explicit_modpoly():
    A = parse_matrix("field 4 modpoly 1 1 1 [ g:10 ]")
    assert A.field.modpoly == (1, 1, 1)
    assert parse_matrix(serialize_matrix(A)) == A
