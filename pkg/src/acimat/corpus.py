"""Reference matrices with their known facts.

Each matrix lives in ``corpus_data/<id>.aci`` (the io text format); the facts
are listed here and are always re-derived by :func:`check_fact`, never
trusted.  Provenance tags: ``PAPER`` (asserted by the source literature),
``TRIVIAL`` (immediate from the definitions) and ``DERIVED`` (computed by an
independent check).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Any, Optional

from .aci import ACIMatrix, apply_equivalence, augment, delete_column, make_equivalence, submatrix
from .classify import classify
from .io import parse_document

PAPER, TRIVIAL, DERIVED = "PAPER", "TRIVIAL", "DERIVED"


@dataclass(frozen=True)
class Fact:
    claim: str
    expected: Any
    provenance: str
    note: str = ""


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    description: str
    facts: tuple[Fact, ...]
    blocks: Optional[tuple[int, int]] = None  # (rows, cols) of A11 for block compositions

    @property
    def matrix(self) -> ACIMatrix:
        return load_matrix(self.id)


@lru_cache(maxsize=None)
def load_text(entry_id: str) -> str:
    path = resources.files("acimat") / "corpus_data" / f"{entry_id}.aci"
    if not path.is_file():
        raise KeyError(f"no corpus entry {entry_id!r}")
    return path.read_text()


@lru_cache(maxsize=None)
def load_matrix(entry_id: str) -> ACIMatrix:
    return parse_document(load_text(entry_id)).matrix


def _e(i: int, m: int) -> list[int]:
    return [1 if k == i else 0 for k in range(m)]


# row_4 += row_1 and row_7 += row_1
_E_TO_F = [[1 if c == r else 0 for c in range(7)] for r in range(7)]
_E_TO_F[3][0] = 1
_E_TO_F[6][0] = 1


def _entries() -> list[CorpusEntry]:
    out = []
    for q in (2, 3, 4):
        out.append(CorpusEntry(f"example1.3i-q{q}", f"2x{q + 1} minimal full rank gadget over F_{q}", (
            Fact("constant_rank", 2, PAPER, "minimal full rank has constant rank 2"),
            Fact("minimal_fr", True, PAPER, "stated minimal full rank for every q"),
        )))
    for q in (2, 3):
        out.append(CorpusEntry(f"example1.3ii-q{q}", f"{2 * q}x{q + 1} maximal full rank gadget over F_{q}", (
            Fact("constant_rank", q + 1, PAPER, "maximal full rank has constant rank q+1"),
            Fact("maximal_fr", True, PAPER, "stated maximal full rank for every q"),
        )))
    out += [
        CorpusEntry("example1.4i-A", "3x5 minimal full rank matrix over F_2", (
            Fact("rank_set", [3], PAPER, "all 2^5 completions have rank 3"),
            Fact("completions", 32, PAPER, "admits 2^5 completions"),
            Fact("column_reducible", False, PAPER, "deleting any column admits a rank-2 completion"),
            Fact("minimal_fr", True, PAPER, "so A is minimal full rank"),
        )),
        CorpusEntry("example1.4ii-A", "5x3 constant rank 3 matrix; unit vectors do not augment it", (
            Fact("constant_rank", 3, PAPER, "all 2^4 completions have rank 3"),
            Fact("completions", 16, PAPER, "2^4 completions"),
            *(Fact("augmented_rank_set", {"v": _e(i, 5), "rank_set": [3, 4]}, PAPER,
                   f"[A e_{i + 1}] has rank set {{3, 4}}") for i in range(5)),
            Fact("augmented_rank_set", {"v": [1, 0, 1, 1, 0], "rank_set": [4]}, PAPER,
                 "augmenting by (1,0,1,1,0) gives constant rank 4"),
            Fact("maximal_fr", False, PAPER, "not maximal full rank"),
            Fact("column_augmentable", True, PAPER, "some vector augments the rank"),
        )),
        CorpusEntry("sec2.2-A", "7x7 matrix of constant rank 5 with 10 variables", (
            Fact("constant_rank", 5, PAPER, "constant rank 5"),
            Fact("completions", 1024, PAPER, "2^10 completions"),
            Fact("probe_rank", 5, PAPER, "the all-zeros completion has rank 5"),
            Fact("zero_block", [5, 4], PAPER, "zero block of size 5x4"),
            Fact("decomposition_case", "iv-a", PAPER, "B minimal and C maximal full rank"),
            Fact("block_tags", ["minimal_fr", "maximal_fr"], PAPER, "B minimal and C maximal full rank"),
            Fact("core_rank", 5, DERIVED, "core of the same constant rank"),
        )),
        CorpusEntry("sec2.2-A11p", "2x4 upper-left block of the rearranged 7x7 matrix", (
            Fact("constant_rank", 2, PAPER, "constant rank 2"),
            Fact("completions", 32, PAPER, "2^5 completions"),
            Fact("deletable_column", 2, PAPER, "its y4 column is dropped to reach the minimal block"),
        )),
        CorpusEntry("sec2.2-A22p", "5x3 lower-right block of the rearranged 7x7 matrix", (
            Fact("constant_rank", 3, PAPER, "constant rank 3"),
            Fact("completions", 16, PAPER, "2^4 completions"),
            Fact("maximal_fr", False, PAPER, "not maximal full rank"),
            Fact("column_reducible", False, DERIVED, "each single-column deletion has rank set {2}"),
        )),
        CorpusEntry("sec2.2-A22p-aug", "the 5x3 block augmented by e_1", (
            Fact("rank_set", [4], PAPER, "rank set {4}"),
        )),
        CorpusEntry("sec2.2-B", "2x3 minimal full rank block", (
            Fact("minimal_fr", True, PAPER, "minimal full rank"),
        )),
        CorpusEntry("sec2.2-C", "4x3 maximal full rank block", (
            Fact("constant_rank", 3, PAPER, "rank set {3}"),
            Fact("maximal_fr", True, PAPER, "no augmenting vector, so maximal full rank"),
        )),
        CorpusEntry("P", "4x3 partial matrix of constant rank 3", (
            Fact("constant_rank", 3, PAPER, "constant rank 3"),
            Fact("irreducible", True, PAPER, "irreducible"),
            Fact("no_square_submatrix", 3, PAPER, "no 3x3 submatrix of constant rank 3"),
            Fact("maximal_fr", True, DERIVED, "classifier verdict; not asserted by the source"),
        )),
        CorpusEntry("A2", "3x4 partial matrix of constant rank 3", (
            Fact("constant_rank", 3, PAPER, "constant rank q+1 = 3"),
            Fact("no_square_submatrix", 3, PAPER, "no 3x3 submatrix of constant rank 3"),
            Fact("minimal_fr", True, PAPER, "minimal full rank"),
        )),
        CorpusEntry("E", "7x5 irreducible partial matrix of constant rank 5", (
            Fact("constant_rank", 5, PAPER, "constant rank 5"),
            Fact("irreducible", True, PAPER, "irreducible"),
            Fact("completely_irreducible", False, PAPER, "equivalent to the row reducible F"),
            Fact("core_rank", 5, DERIVED, "a verified core exists"),
        )),
        CorpusEntry("F", "E with row 1 added to rows 4 and 7", (
            Fact("constant_rank", 5, PAPER, "equivalent to E"),
            Fact("equivalent_via", {"source": "E", "T": _E_TO_F, "perm": list(range(5))}, PAPER,
                 "row_4 += row_1, row_7 += row_1"),
            Fact("deletable_row", 1, PAPER, "deleting row 1 keeps constant rank 5"),
            Fact("row_reducible", True, PAPER, "row reducible"),
        )),
        CorpusEntry("Eprime", "[x; 1+x]", (
            Fact("constant_rank", 1, PAPER, "constant rank one"),
            Fact("irreducible", True, PAPER, "irreducible"),
        )),
        CorpusEntry("Fprime", "[x; 1]", (
            Fact("constant_rank", 1, PAPER, "constant rank one"),
            Fact("equivalent_via", {"source": "Eprime", "T": [[1, 0], [1, 1]], "perm": [0]}, TRIVIAL,
                 "row_2 -= row_1"),
            Fact("row_reducible", True, PAPER, "row reducible"),
        )),
        CorpusEntry("case-ii", "square full rank over minimal full rank", (
            Fact("constant_rank", 5, PAPER, "any completion has rank 5"),
            Fact("deletable_column", 2, PAPER, "deleting the second column keeps constant rank 5"),
            Fact("completely_irreducible", False, PAPER, "not completely irreducible"),
            Fact("table_case", "ii", TRIVIAL, "square over minimal"),
        ), blocks=(2, 2)),
        CorpusEntry("case-v", "minimal full rank over minimal full rank", (
            Fact("constant_rank", 5, PAPER, "any completion has rank 5"),
            Fact("deletable_column", 1, PAPER, "deleting the first column keeps constant rank 5"),
            Fact("completely_irreducible", False, PAPER, "not completely irreducible"),
            Fact("table_case", "v", TRIVIAL, "minimal over minimal"),
        ), blocks=(2, 3)),
        CorpusEntry("case-viii", "maximal full rank over minimal full rank", (
            Fact("constant_rank", None, PAPER, "no constant rank"),
            Fact("rank_set", [5, 6], PAPER, "completions of rank 5 and of rank 6"),
            Fact("table_case", "viii", TRIVIAL, "maximal over minimal"),
        ), blocks=(4, 3)),
    ]
    return out


@lru_cache(maxsize=None)
def corpus_instances() -> tuple[CorpusEntry, ...]:
    return tuple(_entries())


def corpus_ids() -> list[str]:
    return [e.id for e in corpus_instances()]


def get_entry(entry_id: str) -> CorpusEntry:
    for e in corpus_instances():
        if e.id == entry_id:
            return e
    raise KeyError(f"no corpus entry {entry_id!r}")


def split_blocks(entry: CorpusEntry) -> tuple[ACIMatrix, ACIMatrix, ACIMatrix]:
    """(A11, A12, A22) of a block-composed entry."""
    A = entry.matrix
    r, c = entry.blocks
    return (submatrix(A, range(r), range(c)),
            submatrix(A, range(r), range(c, A.n)),
            submatrix(A, range(r, A.m), range(c, A.n)))


_CLASS_FLAGS = {
    "minimal_fr", "maximal_fr", "square_fr", "irreducible", "completely_irreducible",
    "column_augmentable", "row_reducible", "column_reducible",
}


def evaluate_claim(entry: CorpusEntry, fact: Fact, cache: Optional[dict] = None) -> Any:
    """Recompute the value a fact talks about."""
    from .decompose import canonical_decomposition, compose_blocks, extract_core
    from .rank import has_constant_rank, probe_rank, rank_set, rank_set_exhaustive

    cache = {} if cache is None else cache
    A = entry.matrix
    claim = fact.claim

    def memo(key, fn):
        if key not in cache:
            cache[key] = fn()
        return cache[key]

    if claim == "rank_set":
        return list(memo("rank", lambda: rank_set_exhaustive(A)).rank_set)
    if claim == "constant_rank":
        return memo("rank", lambda: rank_set_exhaustive(A)).constant
    if claim == "completions":
        return memo("rank", lambda: rank_set_exhaustive(A)).completions_examined
    if claim == "probe_rank":
        return probe_rank(A)
    if claim in _CLASS_FLAGS:
        return getattr(memo("class", lambda: classify(A)), claim)
    if claim == "augmented_rank_set":
        return {"v": fact.expected["v"], "rank_set": list(rank_set_exhaustive(augment(A, fact.expected["v"])).rank_set)}
    if claim == "deletable_column":
        return fact.expected if has_constant_rank(delete_column(A, fact.expected - 1), rank_set(A).constant) else None
    if claim == "deletable_row":
        keep = [i for i in range(A.m) if i != fact.expected - 1]
        return fact.expected if has_constant_rank(submatrix(A, keep, range(A.n)), rank_set(A).constant) else None
    if claim == "no_square_submatrix":
        k = fact.expected
        hit = any(has_constant_rank(submatrix(A, rows, cols), k)
                  for rows in combinations(range(A.m), k) for cols in combinations(range(A.n), k))
        return None if hit else k
    if claim == "zero_block":
        D = memo("dec", lambda: canonical_decomposition(A))
        return [D.r, D.s]
    if claim == "decomposition_case":
        return memo("dec", lambda: canonical_decomposition(A)).case
    if claim == "block_tags":
        D = memo("dec", lambda: canonical_decomposition(A))
        return [b.tag if b else "absent" for b in (D.B, D.C)]
    if claim == "core_rank":
        return extract_core(A).rank
    if claim == "equivalent_via":
        spec = fact.expected
        src = load_matrix(spec["source"])
        ok = apply_equivalence(src, make_equivalence(A.field, spec["T"], spec["perm"])) == A
        return spec if ok else None
    if claim == "table_case":
        A11, A12, A22 = split_blocks(entry)
        return compose_blocks(A11, A22, filler=A12).case
    raise ValueError(f"unknown claim {claim!r}")


def check_fact(entry: CorpusEntry, fact: Fact, cache: Optional[dict] = None) -> tuple[bool, Any]:
    actual = evaluate_claim(entry, fact, cache)
    return actual == fact.expected, actual
