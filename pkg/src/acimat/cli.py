"""Command line front end: ``acimat <subcommand> <input> [flags]``.

Inputs are a path to a ``.aci`` file or ``corpus:<id>``.  Exit status is 0 on
success, 1 when an analysis fails (budget, precondition, verification) and 2
on usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import corpus
from .aci import apply_equivalence, submatrix
from .classify import DEFAULT_VECTOR_BUDGET, classify
from .decompose import canonical_decomposition, extract_core, gen_constant_rank
from .errors import ACIError, ParseError, VerificationFailed
from .geometry import AffineSubspace, span_dim_set, subspaces_to_aci
from .gf import GF
from .io import Analysis, Document, emit_report, parse_document, serialize_matrix
from .rank import DEFAULT_COMPLETION_BUDGET, DEFAULT_SUBSET_BUDGET, rank_set, rank_set_exhaustive
from .verify import check_decomposition, check_witness


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-completions", type=int, default=DEFAULT_COMPLETION_BUDGET, metavar="N")
    common.add_argument("--budget-vectors", type=int, default=DEFAULT_VECTOR_BUDGET, metavar="N")
    common.add_argument("--budget-subsets", type=int, default=DEFAULT_SUBSET_BUDGET, metavar="N")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--verify", action="store_true", help="re-check every witness by direct multiplication")
    common.add_argument("--format", choices=("structured", "text"), default="structured")
    common.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="acimat", description="Exact analysis of ACI-matrices over finite fields.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("rank", "rank set of all completions"),
        ("classify", "full-rank and irreducibility flags"),
        ("decompose", "canonical block decomposition with witness"),
        ("core", "completely irreducible core with witness"),
        ("geometry", "span dimensions of a list of affine subspaces"),
    ):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("input", help="path to a .aci file or corpus:<id>")
        if name == "rank":
            sp.add_argument("--exhaustive", action="store_true", help="enumerate every completion")
    sp = sub.add_parser("corpus", parents=[common], help="list corpus entries or re-check one entry's facts")
    sp.add_argument("id", nargs="?")
    sp = sub.add_parser("gen", parents=[common], help="random matrix of a given constant rank")
    sp.add_argument("m", type=int)
    sp.add_argument("n", type=int)
    sp.add_argument("rank", type=int)
    sp.add_argument("--field", type=int, default=2, metavar="Q")
    sp.add_argument("--gadget", choices=("minimal", "maximal"))
    sp.add_argument("--max-vars", type=int)
    sp.add_argument("--no-equivalence", action="store_true", help="keep the block layout visible")
    return p


def load_input(spec: str) -> tuple[Document, str]:
    if spec.startswith("corpus:"):
        entry_id = spec[len("corpus:"):]
        try:
            return parse_document(corpus.load_text(entry_id)), spec
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
    try:
        with open(spec, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {spec}: {exc.strerror}") from exc
    return parse_document(text), spec


def _matrix(doc: Document, spec: str):
    if doc.matrix is None:
        raise UsageError(f"{spec} holds subspaces, not a matrix")
    return doc.matrix


def run_command(args) -> str:
    if args.command == "corpus":
        return _corpus(args)
    if args.command == "gen":
        return _gen(args)

    doc, source = load_input(args.input)
    if args.command == "geometry":
        if doc.subspaces is None:
            raise UsageError(f"{source} holds a matrix, not subspaces")
        spaces = [AffineSubspace.make(doc.field, s.base, s.directions) for s in doc.subspaces]
        A = subspaces_to_aci(spaces)
        R = span_dim_set(spaces, args.budget_completions)
        extra = {"span_dimensions": list(R.rank_set),
                 "reduced_subspaces": [k + 1 for k, S in enumerate(spaces) if S.reduced]}
        return emit_report(Analysis(A, source, rank=R, extra=extra), args.format)

    A = _matrix(doc, source)
    if args.command == "rank":
        if args.exhaustive:
            R = rank_set_exhaustive(A, args.budget_completions)
        else:
            R = rank_set(A, args.budget_completions, args.budget_subsets)
        return emit_report(Analysis(A, source, rank=R), args.format)
    if args.command == "classify":
        c = classify(A, args.budget_completions, args.budget_vectors)
        R = rank_set(A, args.budget_completions, args.budget_subsets)
        return emit_report(Analysis(A, source, rank=R, classification=c), args.format)
    if args.command == "decompose":
        D = canonical_decomposition(A, args.budget_completions, args.budget_vectors, args.budget_subsets)
        if args.verify:
            check_decomposition(A, D)
        return emit_report(Analysis(A, source, decomposition=D), args.format)
    if args.command == "core":
        K = extract_core(A, args.budget_completions, args.budget_vectors, args.budget_subsets)
        if args.verify:
            check_decomposition(A, K.decomposition)
            M = apply_equivalence(A, K.witness)
            check_witness(A, K.witness, M, "core witness")
            if submatrix(M, range(*K.rows), range(*K.cols)) != K.core:
                raise VerificationFailed("core is not the top-left block of the witnessed matrix")
        return emit_report(Analysis(A, source, core=K), args.format)
    raise UsageError(f"unknown command {args.command}")


def _corpus(args) -> str:
    import json

    if args.id is None:
        if args.format == "text":
            return "\n".join(f"{e.id}  {e.description}" for e in corpus.corpus_instances())
        return json.dumps({"schema": 1, "entries": [{"id": e.id, "description": e.description}
                                                    for e in corpus.corpus_instances()]}, indent=2)
    try:
        entry = corpus.get_entry(args.id)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc
    cache: dict = {}
    facts = []
    failed = 0
    for f in entry.facts:
        ok, actual = corpus.check_fact(entry, f, cache)
        failed += not ok
        facts.append({"claim": f.claim, "expected": f.expected, "actual": actual,
                      "provenance": f.provenance, "note": f.note, "ok": ok})
    report = emit_report(Analysis(entry.matrix, f"corpus:{entry.id}",
                                  extra={"description": entry.description, "facts": facts}), args.format)
    if failed:
        raise VerificationFailed(f"{failed} corpus fact(s) did not re-derive\n{report}")
    return report


def _gen(args) -> str:
    F = GF(args.field)
    A = gen_constant_rank(args.m, args.n, args.rank, F, args.seed, gadget=args.gadget,
                          max_vars=args.max_vars, equivalence=not args.no_equivalence)
    R = rank_set_exhaustive(A, args.budget_completions) if args.verify else None
    if R is not None and R.rank_set != (args.rank,):
        raise VerificationFailed(f"generated matrix has rank set {R.rank_set}")
    extra = {"generator": {"m": args.m, "n": args.n, "rank": args.rank, "field": args.field,
                           "seed": args.seed, "gadget": args.gadget},
             "text": serialize_matrix(A)}
    return emit_report(Analysis(A, None, rank=R, extra=extra), args.format)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = run_command(args)
    except (ParseError, UsageError) as exc:
        print(f"acimat: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ACIError as exc:
        print(f"acimat: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
