"""End-to-end acceptance checks; each test prints one PASS/FAIL line."""

import os
import random
import time

import pytest

from acimat.aci import (
    ZERO, ACIMatrix, apply_equivalence, augment, from_constant, make_equivalence, random_aci, rename, submatrix,
)
from acimat.classify import classify
from acimat.cli import main
from acimat.corpus import corpus_ids, get_entry, load_matrix, split_blocks
from acimat.decompose import (
    COMPOSITION_TABLE, canonical_decomposition, compose_blocks, extract_core, gen_constant_rank, maximal_gadget,
    minimal_gadget,
)
from acimat.gf import GF
from acimat.rank import has_constant_rank, rank_set, rank_set_exhaustive
from acimat.verify import check_decomposition, check_witness, witness_holds

from test_cli import GOLDEN, GOLDEN_RUNS


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail
    return emit


def test_criterion_1_headline_rank(report):
    A = load_matrix("sec2.2-A")
    t0 = time.perf_counter()
    ex = rank_set_exhaustive(A)
    dec = rank_set(A)
    elapsed = time.perf_counter() - t0
    parts = sorted(p.completions_examined for p in dec.parts)
    ok = (ex.rank_set == (5,) and ex.completions_examined == 1024 and dec.rank_set == (5,)
          and dec.method == "decomposed" and parts == [16, 32] and elapsed < 1.0)
    report(1, ok, f"exhaustive {ex.rank_set} over {ex.completions_examined}; "
                  f"decomposed {dec.rank_set} via blocks {parts}; {elapsed:.3f}s")


def test_criterion_2_decomposition(report):
    A = load_matrix("sec2.2-A")
    t0 = time.perf_counter()
    D = canonical_decomposition(A)
    check_decomposition(A, D)
    elapsed = time.perf_counter() - t0
    M = D.matrix
    zero = all(M.entry(i, j).is_zero for i in range(A.m - D.r, A.m) for j in range(D.s))

    def dims(b):
        return (b.rows[1] - b.rows[0], b.cols[1] - b.cols[0])

    ok = (D.case == "iv-a" and (D.r, D.s) == (5, 4) and D.B.tag == "minimal_fr" and dims(D.B) == (2, 3)
          and D.C.tag == "maximal_fr" and dims(D.C) == (4, 3) and zero and witness_holds(A, D.witness, M)
          and elapsed < 10)
    report(2, ok, f"case {D.case}, (r, s) = ({D.r}, {D.s}), B {D.B.tag} {dims(D.B)}, "
                  f"C {D.C.tag} {dims(D.C)}, zero block {zero}; {elapsed:.3f}s")


def test_criterion_3_augmentation_trap(report):
    A = load_matrix("example1.4ii-A")
    units = [rank_set_exhaustive(augment(A, [int(k == i) for k in range(5)])).rank_set for i in range(5)]
    special = rank_set_exhaustive(augment(A, [1, 0, 1, 1, 0])).rank_set
    c = classify(A)
    wit = c.augmenting_vector
    wit_ok = wit is not None and rank_set_exhaustive(augment(A, wit)).rank_set == (4,)
    ok = all(u == (3, 4) for u in units) and special == (4,) and c.maximal_fr is False and wit_ok
    report(3, ok, f"e_i rank sets {units}; (1,0,1,1,0) gives {special}; maximal_fr {c.maximal_fr}, witness {wit}")


def test_criterion_4_gadgets(report):
    t0 = time.perf_counter()
    verdicts = {}
    for q in (2, 3, 4):
        verdicts[f"minimal q={q}"] = classify(minimal_gadget(GF(q), [f"x{i}" for i in range(1, q + 2)])).minimal_fr
    for q in (2, 3):
        verdicts[f"maximal q={q}"] = classify(maximal_gadget(GF(q), [f"x{i}" for i in range(1, q + 2)])).maximal_fr
    # the stored corpus files must agree with the builders
    for q in (2, 3, 4):
        verdicts[f"corpus minimal q={q}"] = classify(load_matrix(f"example1.3i-q{q}")).minimal_fr
    for q in (2, 3):
        verdicts[f"corpus maximal q={q}"] = classify(load_matrix(f"example1.3ii-q{q}")).maximal_fr
    elapsed = time.perf_counter() - t0
    ok = all(v is True for v in verdicts.values()) and elapsed < 60
    report(4, ok, f"{verdicts}; {elapsed:.2f}s")


def test_criterion_5_partial_matrices(report):
    P = load_matrix("P")
    cp = classify(P)
    subs = [has_constant_rank(submatrix(P, [i for i in range(4) if i != k], range(3)), 3) for k in range(4)]
    A2 = load_matrix("A2")
    ca = classify(A2)
    ok = (cp.constant == 3 and cp.irreducible is True and P.shape == (4, 3) and not any(subs)
          and ca.constant == 3 and ca.minimal_fr is True)
    report(5, ok, f"P rank {cp.constant}, irreducible {cp.irreducible}, 3x3 constant-rank-3 flags {subs}; "
                  f"A2 rank {ca.constant}, minimal_fr {ca.minimal_fr}")


def test_criterion_6_core(report):
    E = load_matrix("E")
    T = [[1 if c == r else 0 for c in range(7)] for r in range(7)]
    T[3][0] = T[6][0] = 1
    F = apply_equivalence(E, make_equivalence(E.field, T, range(5)))
    ce, cf = classify(E), classify(F)
    K = extract_core(E)
    M = apply_equivalence(E, K.witness)
    check_witness(E, K.witness, M, "core witness")
    core_ok = submatrix(M, range(*K.rows), range(*K.cols)) == K.core
    ck = classify(K.core, rows=False)
    ok = (ce.constant == 5 and ce.irreducible is True and F == load_matrix("F") and cf.row_reducible is True
          and cf.reducible_row == 0 and ce.completely_irreducible is False and core_ok
          and ck.constant == 5 and ck.completely_irreducible is True)
    report(6, ok, f"E rank {ce.constant}, irreducible {ce.irreducible}, completely_irreducible "
                  f"{ce.completely_irreducible}; F row reducible at row {cf.reducible_row + 1}; "
                  f"core {K.core.shape} rank {ck.constant} completely irreducible {ck.completely_irreducible}")


def _blocks(kind, seed):
    """Paper blocks and generated blocks of the given full-rank kind."""
    F = GF(2)
    if kind == "square":
        return [from_constant(F, [[1]]), gen_constant_rank(2, 2, 2, F, seed),
                gen_constant_rank(3, 3, 3, F, seed + 1, max_vars=4)]
    if kind == "minimal":
        return [load_matrix("sec2.2-B"), load_matrix("example1.3i-q2"), load_matrix("A2")]
    return [load_matrix("sec2.2-C"), load_matrix("example1.3ii-q2"), load_matrix("P")]


def _disjoint(A, prefix):
    return rename(A, {v: f"{prefix}{k + 1}" for k, v in enumerate(A.variables)})


def test_criterion_7_composition_table(report):
    rng = random.Random(7)
    results = {}
    failures = []
    for (k11, k22), (case, predicted) in sorted(COMPOSITION_TABLE.items(), key=lambda kv: kv[1][0]):
        if predicted is not True:
            continue
        checked = 0
        for A11 in _blocks(k11, rng.randrange(1000)):
            for A22 in _blocks(k22, rng.randrange(1000)):
                for filler in ("zeros", "random"):
                    c = compose_blocks(_disjoint(A11, "a"), _disjoint(A22, "b"), filler=filler,
                                       seed=rng.randrange(10**6))
                    if rank_set(c.matrix).constant is None:
                        failures.append((case, "no constant rank"))
                        continue
                    v = classify(c.matrix, rows=False)
                    if v.constant != min(A11.shape) + min(A22.shape) or not v.completely_irreducible:
                        failures.append((case, A11.shape, A22.shape, filler))
                    checked += 1
        results[case] = checked
    for cid, want in (("case-ii", False), ("case-v", False)):
        c = classify(load_matrix(cid))
        if c.completely_irreducible is not want:
            failures.append((cid, c.completely_irreducible))
    viii = rank_set_exhaustive(load_matrix("case-viii"))
    if viii.constant is not None:
        failures.append(("case-viii", viii.rank_set))
    for cid in ("case-ii", "case-v", "case-viii"):
        A11, A12, A22 = split_blocks(get_entry(cid))
        if compose_blocks(A11, A22, filler=A12).case != cid.split("-")[1]:
            failures.append((cid, "table lookup"))
    ok = not failures and len(results) == 6
    report(7, ok, f"completely irreducible instances per case {results}; ii/v not completely irreducible; "
                  f"viii rank set {viii.rank_set}; failures {failures}")


def _lemma_pair(rng, F):
    """Random block upper triangular matrix with its shape parameters."""
    m, n = rng.randint(2, 5), rng.randint(2, 5)
    r, s = rng.randint(1, m - 1), rng.randint(1, n - 1)
    if not (m - r <= s and n - s <= r):
        return None
    A11 = (gen_constant_rank(m - r, s, m - r, F, rng.randrange(10**6), max_vars=2) if rng.random() < 0.6
           else random_aci(F, m - r, s, rng.randint(0, 2), rng))
    A22 = (gen_constant_rank(r, n - s, n - s, F, rng.randrange(10**6), max_vars=2) if rng.random() < 0.6
           else random_aci(F, r, n - s, rng.randint(0, 2), rng))
    A11, A22 = _disjoint(A11, "a"), _disjoint(A22, "b")
    A12 = _disjoint(random_aci(F, m - r, n - s, rng.randint(0, 2), rng), "c")
    rows = [a + b for a, b in zip(A11.rows, A12.rows)]
    rows += [(ZERO,) * s + b for b in A22.rows]
    return ACIMatrix(F, tuple(rows)), A11, A22, m, n, r, s


def test_criterion_8_property_suite(report):
    t0 = time.perf_counter()
    rng = random.Random(2024)
    stats = dict(generated=0, random=0, witnesses=0, lemma=0, lemma_constant=0, large_field=0, large_field_random=0)
    failures = []
    while stats["generated"] < 220:
        q = rng.choice([2, 3, 4, 5])
        F = GF(q)
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        rho = rng.randint(1, min(m, n))
        A = gen_constant_rank(m, n, rho, F, rng.randrange(10**6))
        if q ** len(A.variables) > 2**14:
            failures.append(("too many variables", A.shape))
        ex = rank_set_exhaustive(A)
        if ex.rank_set != (rho,) or rank_set(A).rank_set != ex.rank_set:
            failures.append(("rank", q, A.shape, rho, ex.rank_set))
        D = canonical_decomposition(A)
        try:
            check_decomposition(A, D)
            stats["witnesses"] += 1
        except AssertionError as exc:
            failures.append(("witness", str(exc)))
        stats["generated"] += 1
    while stats["random"] < 200:
        q = rng.choice([2, 3, 4, 5])
        F = GF(q)
        nv = rng.randint(0, 6)
        while q**nv > 2**14:
            nv -= 1
        A = random_aci(F, rng.randint(1, 6), rng.randint(1, 6), nv, rng, density=rng.choice([0.3, 0.6]))
        if rank_set(A).rank_set != rank_set_exhaustive(A).rank_set:
            failures.append(("decomposed vs exhaustive", A.shape))
        stats["random"] += 1
    while stats["lemma"] < 200:
        F = GF(rng.choice([2, 3]))
        got = _lemma_pair(rng, F)
        if got is None:
            continue
        A, A11, A22, m, n, r, s = got
        whole = rank_set_exhaustive(A).rank_set == ((m - r) + (n - s),)
        parts = (rank_set_exhaustive(A11).rank_set == (m - r,) and rank_set_exhaustive(A22).rank_set == (n - s,))
        if whole != parts:
            failures.append(("lemma", A.shape, r, s, whole, parts))
        stats["lemma"] += 1
        stats["lemma_constant"] += whole
    while stats["large_field"] < 60:
        p = rng.choice([5, 7])
        F = GF(p)
        n = rng.randint(1, 4 if p == 5 else 5)
        m = rng.randint(1, min(p, 5))
        rho = rng.randint(1, min(m, n))
        if p < max(m, n + 1):
            continue
        if stats["large_field"] % 2:
            # plain random matrices that happen to have constant rank
            A = random_aci(F, m, n, rng.randint(1, 3), rng, density=0.4)
            if rank_set_exhaustive(A).constant in (None, 0):
                continue
            stats["large_field_random"] += 1
        else:
            A = gen_constant_rank(m, n, rho, F, rng.randrange(10**6), max_vars=3)
        D = canonical_decomposition(A)
        check_decomposition(A, D)
        tags = [b.tag for b in (D.B, D.C) if b is not None]
        if any(t != "triangular" for t in tags):
            failures.append(("large field", p, A.shape, rho, tags))
        stats["large_field"] += 1
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 300
    report(8, ok, f"{stats}; failures {failures[:5]}; {elapsed:.1f}s")


def test_criterion_9_determinism(report, capsys):
    mismatches = []
    for cid in corpus_ids():
        outs = []
        for _ in range(2):
            code = main(["classify", f"corpus:{cid}"])
            outs.append((code, capsys.readouterr().out))
        if outs[0] != outs[1] or outs[0][0] != 0:
            mismatches.append(cid)
    golden_bad = []
    for name, argv in sorted(GOLDEN_RUNS.items()):
        cwd = os.getcwd()
        os.chdir(GOLDEN.parent)
        try:
            main(argv)
        finally:
            os.chdir(cwd)
        if capsys.readouterr().out != (GOLDEN / name).read_text():
            golden_bad.append(name)
    ok = not mismatches and not golden_bad
    report(9, ok, f"{len(corpus_ids())} corpus reports byte-identical across runs (mismatches {mismatches}); "
                  f"{len(GOLDEN_RUNS)} golden files (mismatches {golden_bad})")
