import json
import subprocess
import sys
from fractions import Fraction

import pytest

from zukcheck.cli import build_parser, dump_json, main, run
from zukcheck.errors import InputError
from zukcheck.inputs import GRAPH, GROUP, build_graph, parse_input

from conftest import FIXTURES

GOLDEN = FIXTURES / "golden"
FIXTURE_NAMES = sorted(p.stem for p in FIXTURES.glob("*.json"))


def _opts(*argv):
    return build_parser().parse_args(["x", *argv])


def test_parse_group_document():
    spec = parse_input((FIXTURES / "z_pm1_pm2.json").read_bytes())
    assert spec.mode == GROUP and spec.group.describe() == "Z"
    assert [g.payload for g in spec.generators] == [(1,), (-1,), (2,), (-2,)]


def test_parse_graph_document():
    spec = parse_input((FIXTURES / "sl2_drawn.json").read_bytes())
    assert spec.mode == GRAPH and len(spec.labels) == 9 and len(spec.edges) == 12


def test_parse_big_integers():
    doc = {"group": {"kind": "free_abelian", "rank": 1}, "generators": [[10**60], [-(10**60)]]}
    spec = parse_input(json.dumps(doc))
    assert spec.generators[0].payload == (10**60,)


@pytest.mark.parametrize(
    "doc,match",
    [
        ('{"group": {"kind": "free_abelian", "rank": 1},\n "generators": [[1], [-1],]}', "line 2"),
        ('{"group": {"kind": "free", "rank": 1}, "generators": [[1]]}', "group.kind"),
        ('{"group": {"kind": "integer_matrix", "dim": 2, "det": 1}, "generators": [[[2, 0], [0, 1]]]}', r"generators\[0\].*determinant 2"),
        ('{"group": {"kind": "free_abelian", "rank": 2}, "generators": [[1]]}', r"generators\[0\]"),
        ('{"graph": {"labels": ["a", "a"], "edges": []}}', r"graph.labels\[1\]: duplicate"),
        ('{"graph": {"labels": ["a"], "edges": [["a"]]}}', r"graph.edges\[0\]"),
        ('{"graph": {"labels": [], "edges": []}, "group": {"kind": "cyclic", "modulus": 3}}', "exactly one"),
        ('{"grop": 1}', "unknown keys"),
        ('[1, 2]', "top level"),
        ('{"group": {"kind": "cyclic", "modulus": 3}, "generators": []}', "generators"),
        ('{"group": {"kind": "cyclic", "modulus": 3}, "generators": [1.5]}', r"generators\[0\]"),
    ],
)
def test_parse_errors(doc, match):
    with pytest.raises(InputError, match=match):
        parse_input(doc)


def test_parse_dot_document():
    spec = parse_input((GOLDEN / "z_pm1_pm2.dot").read_text())
    assert spec.mode == GRAPH and spec.labels == ("(1)", "(2)", "(-1)", "(-2)")


def test_symmetrize_flag():
    doc = '{"group": {"kind": "free_abelian", "rank": 1}, "generators": [[1], [2]]}'
    spec = parse_input(doc)
    with pytest.raises(InputError, match="not symmetric"):
        build_graph(spec)
    assert build_graph(spec, symmetrize=True).n == 4


def test_run_z_path_text_ends_with_verdict():
    spec = parse_input((FIXTURES / "z_pm1_pm2.json").read_bytes())
    res = run(spec, _opts())
    assert res.status == 0
    assert res.text.rstrip("\n").splitlines()[-1] == "verdict: boundary (λ₁ = 1/2 exactly)"


@pytest.mark.parametrize(
    "name,code",
    [("z_pm1_pm2", 3), ("cyclic4_k3", 0), ("sl2_listed", 3), ("z_pm1_edgeless", 3)],
)
def test_assert_holds_exit_codes(name, code, capsys):
    assert main([str(FIXTURES / f"{name}.json"), "--assert-holds"]) == code
    assert main([str(FIXTURES / f"{name}.json")]) == 0


def test_input_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"group": {"kind": "cyclic", "modulus": 4}, "generators": [1]}')
    assert main([str(bad)]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error[input]: ") and err.count("\n") == 1
    assert main([str(tmp_path / "missing.json")]) == 1


def test_internal_error_exit_code(capsys):
    assert main([str(FIXTURES / "z_pm1_pm2.json"), "--tolerance", "1e-300"]) == 2
    assert capsys.readouterr().err.startswith("error[internal]: ")


def test_numeric_mode(capsys):
    assert main([str(FIXTURES / "z_pm1_pm2.json"), "--numeric"]) == 0
    assert "verdict: undecided" in capsys.readouterr().out
    assert main([str(FIXTURES / "z_pm1_pm2.json"), "--numeric", "--assert-holds"]) == 1


def test_exact_mode(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main([str(FIXTURES / "z_pm1_pm2.json"), "--exact", "--json", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["numeric_spectrum"] is None and doc["cross_check"] is None
    assert doc["verdict"]["kind"] == "boundary"


def test_precision_flag(tmp_path, capsys):
    out = tmp_path / "r.json"
    args = [str(FIXTURES / "sl2_listed.json"), "--precision", "1/1000"]
    assert main([*args, "--exact", "--json", str(out)]) == 0
    lo, hi = json.loads(out.read_text())["lambda1"]["interval"]
    assert Fraction(hi) - Fraction(lo) <= Fraction(1, 1000)
    # interval midpoints that coarse cannot meet the default cross-check tolerance
    assert main(args) == 2


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_golden_outputs(name, tmp_path, capsys):
    j, c, d = tmp_path / "r.json", tmp_path / "c.txt", tmp_path / "g.dot"
    main([str(FIXTURES / f"{name}.json"), "--json", str(j), "--emit-charpoly", str(c), "--emit-dot", str(d)])
    out = capsys.readouterr().out
    assert out == (GOLDEN / f"{name}.report.txt").read_text()
    assert j.read_text() == (GOLDEN / f"{name}.report.json").read_text()
    charpoly = GOLDEN / f"{name}.charpoly.txt"
    assert c.exists() == charpoly.exists()
    if charpoly.exists():
        assert c.read_text() == charpoly.read_text()


def test_json_schema_fields():
    doc = json.loads((GOLDEN / "sl2_listed.report.json").read_text())
    for key in ("input_summary", "graph", "char_poly", "spectrum", "lambda1", "lambda1_vs_half", "verdict", "cross_check"):
        assert key in doc
    assert set(doc["graph"]) >= {"n", "edges", "degrees", "components"}
    assert set(doc["verdict"]) == {"kind", "reason", "conclusion"}
    assert "monic_coefficients" in doc["char_poly"]


def test_stamp(tmp_path, capsys):
    main([str(FIXTURES / "z_pm1_pm2.json"), "--stamp", "--json", str(tmp_path / "r.json")])
    assert capsys.readouterr().out.startswith("generated: ")
    assert "generated_at" in json.loads((tmp_path / "r.json").read_text())


def test_dot_round_trip_through_cli(tmp_path, capsys):
    dot = tmp_path / "g.dot"
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main([str(FIXTURES / "z_pm1_pm2.json"), "--emit-dot", str(dot), "--json", str(a)])
    main([str(dot), "--json", str(b)])
    ja, jb = json.loads(a.read_text()), json.loads(b.read_text())
    ja.pop("input_summary"), jb.pop("input_summary")
    assert ja == jb


def test_batch_matches_sequential(tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["--batch", str(FIXTURES), "--out-dir", str(out), "--jobs", "4"])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == len(FIXTURE_NAMES)
    for name in FIXTURE_NAMES:
        assert (out / f"{name}.report.txt").read_text() == (GOLDEN / f"{name}.report.txt").read_text()
        assert (out / f"{name}.report.json").read_text() == (GOLDEN / f"{name}.report.json").read_text()


def test_batch_and_input_are_exclusive():
    with pytest.raises(SystemExit):
        main(["x.json", "--batch", "."])


def test_module_entry_point_and_stdin():
    data = (FIXTURES / "cyclic4_k3.json").read_bytes()
    out = subprocess.run(
        [sys.executable, "-m", "zukcheck", "-", "--assert-holds"], input=data, capture_output=True, check=False
    )
    assert out.returncode == 0
    assert out.stdout.decode().rstrip().endswith("verdict: holds (λ₁ = 3/2 > 1/2)")


def test_dump_json_is_stable():
    doc = {"b": 1, "a": [1, 2]}
    assert dump_json(doc) == dump_json(dict(doc))
