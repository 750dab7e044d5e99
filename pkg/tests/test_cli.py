"""Command line driver: verbs, exit codes, machine readable output."""

import json
import os.path

import pytest

from bmt import Matroid, canonical_form, circuit, parse_bmat, pg, sag, serialize_bmat
from bmt.cli import _build_parser, main


@pytest.fixture()
def c5_file(tmp_path):
    path = tmp_path / "c5.bmat"
    path.write_text(serialize_bmat(Matroid(4, circuit(5).bits)))
    return str(path)


@pytest.fixture()
def pg3_file(tmp_path):
    path = tmp_path / "pg3.bmat"
    path.write_text(serialize_bmat(pg(3)))
    return str(path)


def test_check_member_default_props(c5_file, capsys):
    assert main(["check", c5_file]) == 0
    out = capsys.readouterr().out
    assert out == "triangle: none\ni4: none\n"


def test_check_witness_line_and_exit_code(pg3_file, capsys):
    assert main(["check", pg3_file]) == 1
    out = capsys.readouterr().out
    assert "triangle: 1 2 3" in out


def test_check_chi_is_informational(c5_file, capsys):
    assert main(["check", "--props", "chi", c5_file]) == 0
    assert capsys.readouterr().out == "chi: 2\n"


def test_check_all_props(c5_file, capsys):
    props = "triangle,i4,i3,ai4,affine,oddcircuit,chi"
    assert main(["check", "--props", props, c5_file]) == 1
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "triangle: none"
    assert out[1] == "i4: none"
    assert out[2].startswith("i3: ")
    assert out[3].startswith("ai4: ")
    assert out[4].startswith("affine: no (odd circuit")
    assert out[5].startswith("oddcircuit: ")
    assert out[6] == "chi: 2"


def test_check_json(pg3_file, capsys):
    assert main(["--json", "check", pg3_file]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["dim"] == 3
    assert doc["props"]["triangle"]["pass"] is False
    assert doc["props"]["triangle"]["witness"]["points"] == [1, 2, 3]


def test_check_unknown_prop_is_usage_error(c5_file, capsys):
    assert main(["check", "--props", "bogus", c5_file]) == 2


def test_check_missing_file(capsys):
    assert main(["check", "definitely-not-here.bmat"]) == 2


def test_check_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.bmat"
    path.write_text("BMAT9 dim=3\npoints=1\n")
    assert main(["check", str(path)]) == 2


def test_decompose_member_line(c5_file, capsys):
    assert main(["decompose", c5_file]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "DoubledSag k=0 n=3"


def test_decompose_not_member(pg3_file, capsys):
    assert main(["decompose", pg3_file]) == 1
    out = capsys.readouterr().out
    assert "NotMember triangle: 1 2 3" in out


def test_decompose_json_member(c5_file, capsys):
    assert main(["--json", "decompose", c5_file]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["outcome"] == "doubled_sag"
    assert doc["doublings"] == 0
    assert doc["sag"] == 3
    # The flag only appears when the input does not span its space.
    assert "rank_deficient" not in doc
    assert doc["certificate"]["base"] == {"kind": "sag", "n": 3}


def test_decompose_json_not_member(pg3_file, capsys):
    assert main(["--json", "decompose", pg3_file]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc == {
        "outcome": "not_member",
        "witness": {"kind": "triangle", "points": [1, 2, 3]},
    }


def test_decompose_build_canon_round_trip(tmp_path, c5_file, capsys):
    cert = tmp_path / "cert.json"
    rebuilt = tmp_path / "rebuilt.bmat"
    assert main(["decompose", c5_file, "-o", str(cert)]) == 0
    json.loads(cert.read_text())
    assert main(["build", str(cert), "-o", str(rebuilt)]) == 0
    capsys.readouterr()
    assert main(["canon", str(rebuilt)]) == 0
    canon_rebuilt = capsys.readouterr().out
    assert main(["canon", c5_file]) == 0
    canon_original = capsys.readouterr().out
    assert canon_rebuilt == canon_original


def test_decompose_affine_member(tmp_path, capsys):
    # The affine plane: a two step expansion chain.
    path = tmp_path / "ag3.bmat"
    path.write_text("BMAT1 dim=3\npoints=4 5 6 7\n")
    assert main(["decompose", str(path)]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "AffineChain steps=2"


def test_build_to_stdout(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    cert.write_text(
        '{"base": {"kind": "sag", "n": 3}, "steps": [], "map": [1, 2, 4, 8]}'
    )
    assert main(["build", str(cert)]) == 0
    m = parse_bmat(capsys.readouterr().out)
    assert m == sag(3)


def test_build_bad_certificate(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    cert.write_text('{"base": {"kind": "sag", "n": 3}, "steps": ["x"], "map": []}')
    assert main(["build", str(cert)]) == 2


def test_canon_output_is_canonical_bmat(c5_file, capsys):
    assert main(["canon", c5_file]) == 0
    m = parse_bmat(capsys.readouterr().out)
    assert m == canonical_form(Matroid(4, circuit(5).bits))[0]


def test_enumerate_table_and_json(capsys):
    assert main(["enumerate", "--dim", "4", "--class", "i4tf_nonaffine"]) == 0
    out = capsys.readouterr().out
    assert "class i4tf_nonaffine dim 4: 1 classes" in out
    assert main(["--json", "enumerate", "--dim", "3", "--class", "i4tf_affine"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["iso_classes"] == 5
    assert doc["representatives"][0] == []


def test_enumerate_writes_representatives(tmp_path, capsys):
    out = tmp_path / "reps"
    assert main(
        ["enumerate", "--dim", "4", "--class", "ai4", "--out", str(out)]
    ) == 0
    files = sorted(p.name for p in out.iterdir())
    assert "ai4-d4-report.json" in files
    bmats = [f for f in files if f.endswith(".bmat")]
    assert len(bmats) == 26
    report = json.loads((out / "ai4-d4-report.json").read_text())
    assert report["iso_classes"] == 26


def test_enumerate_usage_errors(capsys):
    assert main(["enumerate", "--dim", "9", "--class", "ai4"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "--dim", "4", "--class", "nope"])
    assert exc.value.code == 2


def test_random_writes_files(tmp_path, capsys, monkeypatch):
    out = tmp_path / "samples"
    rc = main(
        [
            "random",
            "--dim",
            "4",
            "--count",
            "3",
            "--seed",
            "9",
            "--class",
            "ai4",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3
    names = sorted(p.name for p in out.iterdir())
    assert names == [
        "random-ai4-d4-s9-0000.bmat",
        "random-ai4-d4-s9-0001.bmat",
        "random-ai4-d4-s9-0002.bmat",
    ]
    for name in names:
        parse_bmat((out / name).read_text())
    # Default output directory is the working directory.
    monkeypatch.chdir(tmp_path)
    rc = main(
        ["--json", "random", "--dim", "4", "--count", "1", "--seed", "1",
         "--class", "i4tf_affine"]
    )
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    # Paths keep their directory prefix, "." by default.
    assert [os.path.basename(p) for p in doc["files"]] == [
        "random-i4tf_affine-d4-s1-0000.bmat"
    ]
    assert (tmp_path / "random-i4tf_affine-d4-s1-0000.bmat").exists()


def test_random_usage_error(capsys):
    assert main(
        ["random", "--dim", "3", "--count", "1", "--seed", "1",
         "--class", "i4tf_nonaffine"]
    ) == 2


def test_selftest_quick(capsys):
    assert main(["selftest", "--level", "quick"]) == 0
    out = capsys.readouterr().out
    assert "all checks passed" in out
    assert main(["--json", "selftest", "--level", "quick"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] is True
    assert len(doc["checks"]) == 9


def test_threads_default_from_environment(monkeypatch):
    monkeypatch.setenv("BMT_THREADS", "3")
    args = _build_parser().parse_args(["enumerate", "--dim", "4", "--class", "ai4"])
    assert args.threads == 3
    monkeypatch.delenv("BMT_THREADS")
    args = _build_parser().parse_args(["selftest"])
    assert args.threads == 1
