import json
import subprocess
import sys

import jsonschema
import pytest

from resint.cli import main
from resint.errors import ParseError
from resint.groebner import BASIS_CACHE
from resint.problem import load_problem, load_schema, parse_problem
from conftest import ROOT


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_example4(fixture_path):
    pr = load_problem(fixture_path("example4.json"))
    R, Q, f = pr.build()
    assert R.names == ("x0", "x1", "x2", "x3", "x4", "x5")
    assert [str(q) for q in Q] == ["x0^2 + x1^2"]
    assert len(f) == 3 and pr.a["general"]["count"] == 3


def test_problem_round_trip(fixture_path):
    for name in ("example4.json", "example5.json", "linkage.json", "ex2ii_s3.json"):
        pr = load_problem(fixture_path(name))
        again = parse_problem(pr.to_json())
        assert again == pr


def test_bad_polynomial_reports_column():
    text = json.dumps({"ring": {"variables": ["x"]}, "ideal": ["x + $"]})
    with pytest.raises(ParseError) as e:
        parse_problem(text)
    assert e.value.column == 5 and "ideal[0]" in str(e.value)


def test_unknown_variable():
    text = json.dumps({"ring": {"variables": ["x"]}, "ideal": ["x*q"]})
    with pytest.raises(ParseError, match="q"):
        parse_problem(text)


def test_bad_json_position():
    with pytest.raises(ParseError) as e:
        parse_problem('{"ring": {"variables": ["x"]},\n "ideal": [x]}')
    assert e.value.line == 2


def test_parse_errors_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"ring": {"variables": ["x"], "characteristic": 12}, "ideal": ["x"]}))
    code, _out, err = run_cli(capsys, "colon", str(p))
    assert code == 2 and "not a prime" in err
    p.write_text("{not json")
    assert run_cli(capsys, "colon", str(p))[0] == 2
    assert run_cli(capsys, "colon", str(tmp_path / "missing.json"))[0] == 2


def test_certify_linkage_exit_0(fixture_path, capsys):
    code, out, err = run_cli(capsys, "certify", fixture_path("linkage.json"))
    assert code == 0
    rep = json.loads(out)
    assert rep["results"]["certify"]["issued"] and "certified" in err


@pytest.mark.slow
def test_certify_denied_exit_1(fixture_path, capsys):
    code, out, _err = run_cli(capsys, "certify", fixture_path("ex2ii_s3.json"))
    assert code == 1
    cert = json.loads(out)["results"]["certify"]
    assert not cert["issued"]
    assert any("r-minimality from height 2 fails at height 3" in d for d in cert["diagnostics"])
    # diagnostic mode keeps going and finds that the radicals differ as well
    checks = {c["name"]: c["passed"] for c in cert["checks"]}
    assert checks["tau in J"] and not checks["sqrt(tau) = sqrt(J)"]


def test_certify_stop_early(fixture_path, tmp_path, capsys):
    data = json.loads(open(fixture_path("ex2ii_s3.json")).read())
    data["options"] = {"stop_early": True}
    p = tmp_path / "early.json"
    p.write_text(json.dumps(data))
    code, out, _err = run_cli(capsys, "certify", str(p))
    cert = json.loads(out)["results"]["certify"]
    assert code == 1 and not cert["issued"]
    assert [c["name"] for c in cert["checks"]] == ["remaining checks"]


def test_resource_limit_exit_3(fixture_path, capsys):
    # a fresh process starts with no in-memory bases; earlier tests may have filled them
    BASIS_CACHE.clear()
    code, _out, err = run_cli(capsys, "colon", fixture_path("example5.json"), "--limit-degree", "1")
    assert code == 3 and "ResourceLimitError" in err


def test_reports_are_byte_identical(fixture_path, tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run_cli(capsys, "analyze", fixture_path("linkage.json"), "--out", str(a))[0] == 0
    assert run_cli(capsys, "analyze", fixture_path("linkage.json"), "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert not list(tmp_path.glob(".resint-*"))


def test_cache_hit_recorded(fixture_path, tmp_path, capsys):
    out = tmp_path / "r.json"
    run_cli(capsys, "colon", fixture_path("linkage.json"), "--out", str(out), "--with-runtime")
    first = json.loads(out.read_text())["runtime"]["cache"]
    run_cli(capsys, "colon", fixture_path("linkage.json"), "--out", str(out), "--with-runtime")
    second = json.loads(out.read_text())["runtime"]["cache"]
    assert first["hits"] == [] and first["misses"]
    assert second["hits"]
    run_cli(capsys, "colon", fixture_path("linkage.json"), "--out", str(out), "--with-runtime", "--no-cache")
    assert json.loads(out.read_text())["runtime"]["cache"] == {"enabled": False, "hits": [], "misses": []}


def test_char_override(fixture_path, capsys):
    code, out, _ = run_cli(capsys, "colon", fixture_path("linkage.json"), "--char", "7")
    assert code == 0
    assert json.loads(out)["problem"]["ring"]["characteristic"] == 7


def test_report_matches_schema(fixture_path, capsys):
    _code, out, _ = run_cli(capsys, "analyze", fixture_path("linkage.json"))
    rep = json.loads(out)
    jsonschema.validate(rep, load_schema("report-1.json"))
    assert rep["results"]["tau"]["mu"] == {"value": 3, "method": "minimal generators of a homogeneous ideal"}
    assert "runtime" not in rep


def test_docs_schemas_match_package():
    for name in ("problem-1.json", "report-1.json"):
        assert json.loads((ROOT / "docs" / name).read_text()) == load_schema(name)


def test_fixtures_validate(fixture_path):
    schema = load_schema()
    for p in (ROOT / "fixtures").glob("*.json"):
        jsonschema.validate(json.loads(p.read_text()), schema)


def test_oracle_subcommand(fixture_path, capsys):
    code, out, _ = run_cli(capsys, "oracle", "hilbert", fixture_path("linkage.json"), "--degree", "3")
    assert code == 0 and json.loads(out)["hilbert_function"] == [1, 0, 0, 0]
    code, out, _ = run_cli(capsys, "oracle", "membership", fixture_path("linkage.json"),
                           "--poly", "x^2*y - y^3")
    assert json.loads(out)["member"] is True
    code, out, _ = run_cli(capsys, "oracle", "determinant", fixture_path("ex2ii_s3.json"))
    assert code == 0 and json.loads(out)["determinant"]
    code, _out, _err = run_cli(capsys, "oracle", "determinant", fixture_path("example5.json"))
    assert code == 2


def test_console_script_help():
    res = subprocess.run([sys.executable, "-m", "resint.cli", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "certify" in res.stdout
