import json
import os
import subprocess
from pathlib import Path

import jsonschema
import pytest

ROOT = Path(__file__).resolve().parent.parent
BIN = os.environ.get("FINITUDE_BIN", str(ROOT / "build" / "finitude"))
SCHEMA = json.loads((ROOT / "docs" / "report.schema.json").read_text())
VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def run(*args, env=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, timeout=120, env=env)


def report(*args):
    p = run("--json", *args)
    data = json.loads(p.stdout)
    VALIDATOR.validate(data)
    return p, data


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(SCHEMA)


def test_corpus_reports_match_schema(tmp_path):
    p = run("corpus", str(ROOT / "corpus"), "--repeat", "--dump", str(tmp_path))
    assert p.returncode == 0, p.stdout + p.stderr
    dumps = sorted(tmp_path.glob("*.json"))
    assert len(dumps) >= 30
    for f in dumps:
        VALIDATOR.validate(json.loads(f.read_text()))


def test_quintic_is_not_representable():
    p, data = report("algebraic", "y^5+y-x")
    assert p.returncode == 1
    assert data["result"]["group"]["name"] == "S5"


def test_cube_root_tower():
    p, data = report("algebraic", "y^3-x", "--tower")
    assert p.returncode == 0
    assert data["result"]["verdicts"]["radicals"]["certificate"]["expression"] == "root(3, x)"


def test_syntax_error_goes_to_stderr():
    p = run("algebraic", "y^")
    assert p.returncode == 64
    assert p.stdout == ""
    assert "SyntaxError" in p.stderr and "position 2" in p.stderr


def test_json_error_report():
    p, data = report("algebraic", "y^")
    assert p.returncode == 64
    assert data["status"] == "error"
    assert data["error"]["position"] == 2


def test_integrate_partial_fractions():
    p, data = report("integrate", "1/(x^2-1)")
    assert p.returncode == 0
    lambdas = sorted(t["lambda"] for t in data["result"]["logs"])
    assert lambdas == ["-1/2", "1/2"]


def test_ode_witnesses():
    p, data = report("ode", "2", "0", "-1")
    assert p.returncode == 0
    assert sorted(data["result"]["witnesses"]) == ["-1", "1"]


def test_decompose_power():
    p, data = report("decompose", "x^6")
    assert p.returncode == 0
    assert data["result"]["chain"] == ["x^2", "x^3"]


def test_text_output_mentions_group():
    p = run("algebraic", "y^5+y-x")
    assert p.returncode == 1
    assert "S5" in p.stdout


@pytest.mark.parametrize("args", [[], ["frobnicate"], ["ode", "2", "0"], ["algebraic"], ["--set", "nope=1", "integrate", "x"]])
def test_usage_errors(args):
    assert run(*args).returncode == 64


def test_help_and_version():
    assert run("--help").returncode == 0
    v = run("--version")
    assert v.returncode == 0 and v.stdout.strip()


def test_config_file(tmp_path):
    cfg = tmp_path / "finitude.conf"
    cfg.write_text("# tighter tracking\ncontinuation_tol = 1e-12\nthreads = 1\n")
    p, data = report("--config", str(cfg), "algebraic", "y^2-x")
    assert p.returncode == 0
    assert data["config"]["continuation_tol"] == 1e-12
    cfg.write_text("continuation_tol = fast\n")
    assert run("--config", str(cfg), "algebraic", "y^2-x").returncode == 64


def test_thread_cap_from_environment():
    env = dict(os.environ, FINITUDE_THREADS="1")
    p = subprocess.run([BIN, "--json", "integrate", "x"], capture_output=True, text=True, env=env, timeout=60)
    assert json.loads(p.stdout)["config"]["threads"] == 1


def test_reruns_are_identical_except_timing():
    _, a = report("algebraic", "y^4-x*y-1", "--tower", "--k", "3")
    _, b = report("algebraic", "y^4-x*y-1", "--tower", "--k", "3")
    a.pop("timing")
    b.pop("timing")
    assert a == b
