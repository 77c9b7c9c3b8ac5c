import csv
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from lattcert.cli import FAILED, OK, PARSE, PRECONDITION, RESOURCE, main, parse_config_text
from lattcert.constructions import validate_schema

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_split_primes(capsys):
    code, out, _ = run(capsys, "split-primes", "t^3-5t^2+6t-1", "--bound", "50")
    doc = json.loads(out)
    assert code == OK
    assert doc["primes"] == [13, 29, 41, 43] and doc["ramified"] == [7]
    assert doc["config"]["params"] == {"poly": "t^3-5t^2+6t-1", "bound": 50}


def test_split_primes_coefficient_form(capsys):
    # a leading minus sign needs "--" so argparse does not read it as an option
    code, out, _ = run(capsys, "split-primes", "--bound", "50", "--", "-1,6,-5,1")
    assert code == OK and json.loads(out)["primes"][:3] == [13, 29, 41]
    code, out, _ = run(capsys, "split-primes", "t-1", "--bound", "10")
    assert code == OK and json.loads(out)["primes"] == [2, 3, 5, 7]


@pytest.mark.parametrize("argv, expected", [
    (["split-primes", "t^2", "--bound", "10"], PRECONDITION),
    (["split-primes", "t^^2", "--bound", "10"], PARSE),
    (["split-primes"], PARSE),
    (["bogus"], PARSE),
    (["example", "--precision", "2"], PRECONDITION),
    (["example", "--precision", "0"], PRECONDITION),
    (["dl", "degree", "--d", "3", "--n", "2,2"], PARSE),
    (["growth", "--a", "gamma:x", "--b", "trivial"], PARSE),
])
def test_exit_codes(capsys, argv, expected):
    assert run(capsys, *argv)[0] == expected


def test_example(capsys, tmp_path):
    out_file = tmp_path / "cert.json"
    code, out, _ = run(capsys, "example", "--out", str(out_file))
    assert code == OK and out == ""
    doc = json.loads(out_file.read_text())
    assert validate_schema(doc) == []
    assert doc["overall"] == "Verified" and doc["passed"] == 9
    assert doc["config"]["precision"] == 10


def test_example_perturbed_writes_failed_certificate(capsys, tmp_path):
    out_file = tmp_path / "cert.json"
    code, _, _ = run(capsys, "example", "--poly", "t^3-5t^2+6t-2", "--out", str(out_file))
    assert code == FAILED
    assert json.loads(out_file.read_text())["overall"] == "Failed"


def test_output_is_byte_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "certify", str(CONFIGS / "pair_n2.conf"), "--out", str(a))
    run(capsys, "certify", str(CONFIGS / "pair_n2.conf"), "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("name, expected", [
    ("pair_n2.conf", OK), ("sl2_half.json", OK), ("sl2_rotation.conf", FAILED), ("torus_example.conf", OK),
])
def test_certify_shipped_configs(capsys, name, expected):
    code, out, _ = run(capsys, "certify", str(CONFIGS / name))
    assert code == expected
    doc = json.loads(out)
    assert validate_schema(doc) == []
    if name == "sl2_rotation.conf":
        failed = [i["name"] for i in doc["checklist"] if i["status"] == "failed"]
        assert "infinite order" in failed
    if name == "torus_example.conf":
        assert doc["group"]["rank"] == 4


def test_certify_builtin_data_and_errors(capsys, tmp_path):
    cfg = tmp_path / "t.conf"
    cfg.write_text("construction = torus\ndata = builtin:example\n")
    assert run(capsys, "certify", str(cfg))[0] == OK
    cfg.write_text("construction = nothing\n")
    assert run(capsys, "certify", str(cfg))[0] == PARSE
    cfg.write_text("construction = sl2\nmatrix = 1,2;3\n")
    assert run(capsys, "certify", str(cfg))[0] == PARSE
    cfg.write_text("construction = pair\nn = 1\n")
    assert run(capsys, "certify", str(cfg))[0] == PRECONDITION
    assert run(capsys, "certify", str(tmp_path / "missing.conf"))[0] == PARSE


def test_parse_config_text():
    assert parse_config_text("# c\na = 1\nb = x # y\n") == {"a": "1", "b": "x"}
    assert parse_config_text('{"a": 1}') == {"a": 1}


def test_dl_degree(capsys):
    code, out, _ = run(capsys, "dl", "degree", "--d", "2", "--n", "2")
    assert code == OK and json.loads(out)["degree"] == 4
    code, out, _ = run(capsys, "dl", "degree", "--d", "2", "--n", "2,3")
    assert json.loads(out)["degree"] == 5


def test_dl_ball_csv(capsys, tmp_path):
    path = tmp_path / "edges.csv"
    code, out, _ = run(capsys, "dl", "ball", "--d", "2", "--n", "2", "--radius", "3", "--csv", str(path))
    doc = json.loads(out)
    assert code == OK and doc["sphere_sizes"] == [1, 4, 10, 24]
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["source_id", "target_id"]
    assert len(rows) - 1 == doc["edges"]
    assert rows[1][0].count("|") == 1


def test_dl_ball_cap(capsys):
    assert run(capsys, "dl", "ball", "--d", "3", "--n", "3", "--radius", "6", "--cap", "1000")[0] == RESOURCE


def test_dl_orbit(capsys):
    code, out, _ = run(capsys, "dl", "orbit", "--group", "lamplighter", "--q", "2", "--radius", "6")
    doc = json.loads(out)
    assert code == OK
    assert doc["coverage_constant"] == 0 and doc["orbit_within_graph_ball"]
    code, out, _ = run(capsys, "dl", "orbit", "--q", "2", "--radius", "6", "--generators", "standard")
    assert json.loads(out)["coverage_constant"] > 0


def test_dl_conditions(capsys):
    code, out, _ = run(capsys, "dl", "conditions", "--d", "3", "--q", "3")
    assert code == OK and json.loads(out)["index"]["values"] == [3, 3, 3]


def test_growth(capsys, tmp_path):
    path = tmp_path / "growth.csv"
    code, out, _ = run(capsys, "growth", "--a", "gamma:2", "--b", "lamplighter:2:2", "--radius", "8",
                       "--csv", str(path))
    assert code == OK
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for name in ("a", "b"):
        sizes = [int(r["ball_size"]) for r in rows if r["group"] == name]
        assert len(sizes) == 9 and all(x < y for x, y in zip(sizes, sizes[1:]))


def test_growth_trivial(capsys):
    code, out, _ = run(capsys, "growth", "--a", "trivial", "--b", "trivial", "--radius", "3")
    assert code == OK
    assert {r["ball_size"] for r in json.loads(out)["table"]} == {1}


def test_growth_cap(capsys):
    assert run(capsys, "growth", "--a", "gamma:2", "--b", "trivial", "--radius", "12", "--cap", "500")[0] == RESOURCE


def test_output_dir_override(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("LATTCERT_OUTPUT_DIR", str(tmp_path / "outdir"))
    code, _, _ = run(capsys, "dl", "degree", "--out", "deg.json")
    assert code == OK
    assert json.loads((tmp_path / "outdir" / "deg.json").read_text())["degree"] == 4


def test_console_script():
    exe = shutil.which("lattcert")
    cmd = [exe] if exe else [sys.executable, "-m", "lattcert.cli"]
    proc = subprocess.run(cmd + ["dl", "degree", "--d", "3", "--n", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["degree"] == 12
