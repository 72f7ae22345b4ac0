import json

import pytest

from dp468 import spg
from dp468.cli import main
from dp468.configs.catalog import default_catalog
from dp468.generate import realize

C4 = "spg 1\nn 4\n" + "".join(f"rot {v} {(v + 1) % 4} {(v - 1) % 4}\n" for v in range(4)) + "outer 0 1\n"


@pytest.fixture
def clean(tmp_path):
    path = tmp_path / "clean.spg"
    assert main(["gen", "--n", "30", "--seed", "2", "--out", str(path)]) == 0
    return path


def test_check_c4_exits_1(tmp_path, capsys):
    p = tmp_path / "c4.spg"
    p.write_text(C4)
    assert main(["check", str(p)]) == 1
    assert "forbidden 4-cycle" in capsys.readouterr().out


def test_input_errors_exit_2(tmp_path):
    assert main(["check", str(tmp_path / "missing.spg")]) == 2
    p = tmp_path / "dup.spg"
    p.write_text(C4.replace("rot 1", "rot 0 1 3\nrot 1"))
    assert main(["check", str(p)]) == 2
    assert main(["nonsense"]) == 2
    assert main(["verify-kernel", "z-9"]) == 2


def test_check_flags_generated_instance(clean, capsys):
    # generated instances are not minimal counterexamples: 2-vertices inside are expected
    assert main(["check", str(clean)]) == 1
    assert "degree 2" in capsys.readouterr().out


def test_clean_instance(clean, capsys):
    assert main(["solve", str(clean)]) == 0
    assert main(["solve", str(clean), "--extend-boundary", "--samples", "5"]) == 0
    assert main(["classify", str(clean), "--json"]) == 0
    assert main(["match", str(clean)]) == 0


def test_count_matches_library(tmp_path, capsys):
    from dp468.generate import generate
    from dp468.solver import count
    sg = generate(14, 0)
    path = tmp_path / "small.spg"
    spg.save(sg, path)
    capsys.readouterr()
    assert main(["solve", str(path), "--count"]) == 0
    assert int(capsys.readouterr().out) == count(sg)


def test_discharge_report(tmp_path, capsys):
    pat = default_catalog().instantiate("b-1")
    path = tmp_path / "b1.spg"
    spg.save(realize(pat, 0).sg, path)
    out = tmp_path / "rep.json"
    code = main(["discharge", str(path), "--report", str(out)])
    doc = json.loads(out.read_text())
    assert set(doc) == {"ledger", "claims", "structure", "witness"}
    assert code == (0 if all(c["pass"] for c in doc["claims"]) else 1)
    assert doc["witness"]["pass"]
    assert main(["match", str(path)]) == 1


def test_reports_are_byte_identical(clean, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["discharge", str(clean), "--report", str(a)])
    main(["discharge", str(clean), "--report", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_verify_kernel_lemmas(capsys):
    assert main(["verify-kernel", "lemma7"]) == 0
    assert "lemma7: PASS" in capsys.readouterr().out
    assert main(["verify-kernel", "lemma8", "--max-k", "2"]) == 0
    assert main(["verify-kernel", "b-1", "--max-k", "1"]) == 0


def test_gen_to_stdout(capsys):
    assert main(["gen", "--n", "20", "--seed", "1", "--boundary", "9"]) == 0
    sg = spg.parse(capsys.readouterr().out)
    assert sg.graph.outer.length == 9
