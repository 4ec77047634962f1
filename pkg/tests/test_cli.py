import json
import os
from pathlib import Path

import pytest

from acimat.cli import main
from acimat.corpus import corpus_ids

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("ACIMAT_UPDATE_GOLDEN") == "1"

GOLDEN_RUNS = {
    "rank-sec2.2-A.json": ["rank", "corpus:sec2.2-A"],
    "rank-exhaustive-sec2.2-A.json": ["rank", "corpus:sec2.2-A", "--exhaustive"],
    "classify-example1.4ii-A.txt": ["classify", "corpus:example1.4ii-A", "--format", "text"],
    "classify-P.json": ["classify", "corpus:P"],
    "classify-case-viii.json": ["classify", "corpus:case-viii"],
    "decompose-sec2.2-A.json": ["decompose", "corpus:sec2.2-A", "--verify"],
    "decompose-sec2.2-A.txt": ["decompose", "corpus:sec2.2-A", "--format", "text"],
    "core-E.json": ["core", "corpus:E", "--verify"],
    "core-sec2.2-A.json": ["core", "corpus:sec2.2-A"],
    "geometry-lines.json": ["geometry", "data/lines.aci"],
    "gen-5-4-3-q3.json": ["gen", "5", "4", "3", "--field", "3", "--seed", "7", "--verify"],
    "corpus-list.txt": ["corpus", "--format", "text"],
    "corpus-F.json": ["corpus", "F"],
}


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden_reports(capsys, monkeypatch, name):
    monkeypatch.chdir(Path(__file__).parent)
    code, out, err = run(capsys, GOLDEN_RUNS[name])
    assert code == 0, err
    path = GOLDEN / name
    if UPDATE:
        path.write_text(out)
    assert out == path.read_text()


@pytest.mark.parametrize("entry_id", corpus_ids())
def test_rank_reports_are_byte_stable(capsys, entry_id):
    first = run(capsys, ["rank", f"corpus:{entry_id}"])
    second = run(capsys, ["rank", f"corpus:{entry_id}"])
    assert first == second and first[0] == 0


def test_rank_headline(capsys):
    code, out, _ = run(capsys, ["rank", "corpus:sec2.2-A"])
    data = json.loads(out)
    assert code == 0 and data["rank"]["rank_set"] == [5] and data["schema"] == 1


def test_classify_trap(capsys):
    code, out, _ = run(capsys, ["classify", "corpus:example1.4ii-A"])
    cls = json.loads(out)["classification"]
    assert cls["maximal_fr"] is False and cls["column_augmentable"] is True


def test_syntax_error_exits_2(capsys, tmp_path):
    bad = tmp_path / "badfile.aci"
    bad.write_text("field 2\n[ x, ; 1 ]")
    code, out, err = run(capsys, ["decompose", str(bad)])
    assert code == 2 and out == "" and "SyntaxError" in err


def test_missing_file_and_unknown_corpus_exit_2(capsys, tmp_path):
    assert run(capsys, ["rank", str(tmp_path / "none.aci")])[0] == 2
    assert run(capsys, ["rank", "corpus:nope"])[0] == 2
    assert run(capsys, ["frobnicate"])[0] == 2
    assert run(capsys, ["geometry", "corpus:E"])[0] == 2


def test_budget_exceeded_exits_1(capsys):
    code, _, err = run(capsys, ["rank", "corpus:sec2.2-A", "--exhaustive", "--budget-completions", "100"])
    assert code == 1 and "BudgetExceeded" in err
    assert run(capsys, ["classify", "corpus:example1.3ii-q3", "--budget-vectors", "10"])[0] == 1


def test_not_constant_exits_1(capsys):
    code, _, err = run(capsys, ["decompose", "corpus:case-viii"])
    assert code == 1 and "NotConstantRank" in err


def test_gen_is_seeded(capsys):
    a = run(capsys, ["gen", "4", "5", "3", "--field", "2", "--seed", "3"])
    b = run(capsys, ["gen", "4", "5", "3", "--field", "2", "--seed", "3"])
    assert a == b and a[0] == 0
    assert run(capsys, ["gen", "2", "2", "2", "--gadget", "minimal"])[0] == 1


def test_output_flag(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, ["rank", "corpus:Eprime", "--output", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["rank"]["rank_set"] == [1]


def test_file_input(capsys, tmp_path):
    f = tmp_path / "m.aci"
    f.write_text("field 5\n[ x, 1 ; 0, 1 ]\n")
    code, out, _ = run(capsys, ["rank", str(f), "--format", "text"])
    assert code == 0 and "rank_set: [1, 2]" in out
