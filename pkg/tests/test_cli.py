import io
import json

import pytest

from hyperarr.cli import EXIT_BUDGET, EXIT_MISMATCH, EXIT_PASS, EXIT_USAGE, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_example_passes():
    code, out = run("example", "plane-pencil-4")
    assert code == EXIT_PASS
    assert "PASS" in out and "CI type: expected [3, 3], got [3, 3]" in out


def test_unknown_example_is_usage_error():
    assert run("example", "nosuch")[0] == EXIT_USAGE


def test_extended_needs_tier_flag():
    assert run("example", "gen-ms")[0] == EXIT_USAGE


def test_bad_flags():
    assert run("example", "plane-pencil-2", "--char", "10")[0] == EXIT_USAGE
    assert run("example", "plane-pencil-2", "--budget-seconds", "-1")[0] == EXIT_USAGE
    assert run("frobnicate")[0] == EXIT_USAGE


def test_json_and_text_agree():
    _, text = run("example", "star-config-3-1")
    code, raw = run("example", "star-config-3-1", "--format", "json")
    data = json.loads(raw)
    assert code == data["exit"] == EXIT_PASS
    for v in data["reports"][0]["verdicts"]:
        assert f"{v['key']}: expected {v['expected']}, got {v['computed']}" in text


def test_budget_exit_code_in_strict_mode():
    assert run("example", "pencil-ci-4-2", "--budget-degree", "2", "--strict")[0] == EXIT_BUDGET
    assert run("example", "pencil-ci-4-2", "--budget-degree", "2")[0] == EXIT_PASS


def test_mismatch_exit_code(tmp_path):
    f = tmp_path / "s.json"
    f.write_text(json.dumps({"factors": ["x0", "x1"], "tasks": ["top"], "expect": {"deg X^top": 7}}))
    code, out = run("run", str(f))
    assert code == EXIT_MISMATCH and "[!!] deg X^top" in out


def test_run_file_errors(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"factors": ["x0",]}')
    assert run("run", str(f))[0] == EXIT_USAGE
    assert run("run", str(tmp_path / "missing.json"))[0] == EXIT_USAGE


def test_verify_engine():
    code, out = run("verify", "invariants")
    assert code == EXIT_PASS


def test_list():
    code, out = run("list", "--tier", "fast")
    assert code == EXIT_PASS and "plane-pencil-4" in out and "twc-5" not in out
    code, out = run("list", "--all")
    assert "kummer" in out and "(disabled)" in out


@pytest.mark.parametrize("order", ["lex", "grevlex"])
def test_order_flag(order):
    assert run("example", "pencil-ci-3-1", "--order", order)[0] == EXIT_PASS
