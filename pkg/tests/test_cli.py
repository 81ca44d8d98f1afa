from __future__ import annotations

import json
import subprocess
import sys

import pytest

from schubiso.cli import main
from schubiso.documents import load_datum, parse_datum


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_check_chain_triple(capsys, data_dir):
    code, out, _ = run(capsys, "--json", "check", data_dir / "a4_chain.json", data_dir / "b4_chain.json")
    assert code == 0
    assert json.loads(out) == {
        "verdict": "isomorphic",
        "tau": {"1": "4", "2": "3", "3": "2", "4": "1"},
        "witness_word": ["4", "3", "2", "1"],
    }


def test_check_exit_codes(capsys, data_dir, tmp_path):
    code, out, _ = run(capsys, "check", "--json", data_dir / "m2_21_p2.json", data_dir / "m3_21_p2.json")
    assert code == 1 and json.loads(out)["verdict"] == "not_isomorphic"
    code, _, _ = run(capsys, "check", data_dir / "m2_12.json", data_dir / "m2_12.json")
    assert code == 0
    a3 = {"cartan": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]], "word": ["1", "2", "3"], "parabolic": ["1", "2"]}
    c3 = {"cartan": [[2, -1, 0], [-1, 2, -2], [0, -1, 2]], "word": ["1", "2", "3"], "parabolic": ["1", "2"]}
    (tmp_path / "a3.json").write_text(json.dumps(a3))
    (tmp_path / "c3.json").write_text(json.dumps(c3))
    code, out, _ = run(capsys, "check", "--json", tmp_path / "a3.json", tmp_path / "c3.json")
    assert code == 2 and json.loads(out) == {"verdict": "unknown", "reason": "beyond_theorem_scope"}


def test_check_human_output(capsys, data_dir):
    code, out, _ = run(capsys, "check", data_dir / "m1_12_p1.json", data_dir / "m1_21_p2.json")
    assert code == 0
    assert out.splitlines()[0].startswith("isomorphic:")


def test_strict_input_and_normalize(capsys, data_dir):
    printed = data_dir / "b4_chain_end_parabolic.json"
    code, out, err = run(capsys, "--json", "check", data_dir / "a4_chain.json", printed)
    assert code == 3 and out == "" and "minimal coset representative" in err
    code, out, err = run(capsys, "--json", "--normalize", "check", data_dir / "a4_chain.json", printed)
    assert code == 1 and json.loads(out)["witness"] == "dimension"
    assert "warning" in err


def test_non_reduced_word(capsys, tmp_path):
    doc = {"cartan": [[2, -1], [-1, 2]], "word": ["1", "2", "2"], "parabolic": []}
    (tmp_path / "d.json").write_text(json.dumps(doc))
    code, out, err = run(capsys, "interval", tmp_path / "d.json")
    assert code == 3 and out == "" and "not reduced" in err
    code, out, _ = run(capsys, "--normalize", "--json", "interval", tmp_path / "d.json")
    assert code == 0 and [r["word"] for r in json.loads(out)] == [[], ["1"]]


@pytest.mark.parametrize(
    "content, message",
    [
        ("{not json", "invalid JSON"),
        ('{"cartan": [[2, -2], [-2, 2]], "word": ["1"]}', "bond product"),
        ('{"cartan": [[2, -1], [-1, 2]], "word": ["7"]}', "7"),
        ('{"word": ["1"]}', "cartan"),
    ],
)
def test_bad_documents(capsys, tmp_path, content, message):
    (tmp_path / "d.json").write_text(content)
    code, out, err = run(capsys, "--json", "interval", tmp_path / "d.json")
    assert code == 3 and out == ""
    assert message in err


def test_missing_file(capsys, tmp_path):
    code, out, err = run(capsys, "check", tmp_path / "nope.json", tmp_path / "nope.json")
    assert code == 3 and out == "" and err.startswith("error:")


def test_surfaces(capsys):
    code, out, _ = run(capsys, "surfaces", "--verify")
    assert code == 0
    assert "7 classes, 13 data" in out
    for label in ("P1xP1", "P2", "Sigma1", "Sigma2", "Sigma3", "ConeOverConic", "G2Exceptional"):
        assert label in out
    code, out, _ = run(capsys, "surfaces", "--json")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 14
    records = [json.loads(x) for x in lines[1:]]
    for rec in records:
        d, warnings = parse_datum(rec["datum"])
        assert not warnings and d.dimension == 2


def test_cohomology(capsys, data_dir):
    code, out, _ = run(capsys, "cohomology", data_dir / "m2_21_p2.json", "-g", "1", "-e", "1")
    assert code == 0 and out.strip() == "2·σ[s2,s1]"
    code, out, _ = run(capsys, "--json", "cohomology", data_dir / "m1_12.json", "-g", "2")
    assert json.loads(out)["product"] == {"2": 1}
    code, _, err = run(capsys, "cohomology", data_dir / "m2_21_p2.json", "-g", "2")
    assert code == 3 and "parabolic" in err
    code, _, err = run(capsys, "cohomology", data_dir / "m2_21_p2.json", "-g", "1", "-e", "1,2")
    assert code == 3


def test_interval(capsys, data_dir):
    code, out, _ = run(capsys, "interval", data_dir / "m1_12_p1.json")
    assert code == 0 and len(out.splitlines()) == 2 + 3
    code, out, _ = run(capsys, "--json", "interval", data_dir / "m1_12_p1.json")
    assert json.loads(out) == [
        {"word": [], "length": 0, "degree": 0},
        {"word": ["2"], "length": 1, "degree": 2},
        {"word": ["1", "2"], "length": 2, "degree": 4},
    ]


def test_roots(capsys, data_dir):
    code, out, _ = run(capsys, "--json", "roots", data_dir / "m2_12.json")
    assert code == 0
    roots = json.loads(out)["positive_roots"]
    assert len(roots) == 4
    code, out, _ = run(capsys, "roots", "--type", "G2")
    assert code == 0 and len(out.splitlines()) == 2 + 6
    code, _, err = run(capsys, "roots")
    assert code == 3 and err
    code, _, err = run(capsys, "roots", "--type", "Q7")
    assert code == 3


def test_enumerate_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "--json", "enumerate", "--max-rank", "2", "--max-length", "3")
    assert code == 0
    lines = out.splitlines()
    header = json.loads(lines[0])
    assert header["params"] == {"max_rank": 2, "max_length": 3}
    assert header["data"] == len(lines) - 1
    for i, line in enumerate(lines[1:]):
        path = tmp_path / f"{i}.json"
        path.write_text(line)
        d, warnings = load_datum(path)
        assert not warnings and json.loads(line) == d.to_json()


def test_enumerate_classify(capsys):
    code, out, _ = run(capsys, "enumerate", "--max-rank", "3", "--max-length", "3", "--classify")
    assert code == 0 and "undecided pairs" in out
    code, out, _ = run(capsys, "--json", "enumerate", "--max-rank", "2", "--max-length", "2", "--classify")
    assert json.loads(out.splitlines()[0])["data"] == 14
    code, _, err = run(capsys, "enumerate", "--max-rank", "5")
    assert code == 3 and "limited" in err


def test_module_entry_point(data_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "schubiso", "--json", "check", str(data_dir / "m1_21.json"), str(data_dir / "m2_21.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["verdict"] == "not_isomorphic"
