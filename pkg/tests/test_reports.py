"""Suite runner: config parsing, default corpus, stability, exit codes."""

import json
import os

import pytest

from plocal.config import limits_with, parse_config
from plocal.errors import ConfigError
from plocal.reports import default_runs, run_suite

SMALL_CONFIG = """\
# two cheap groups, a handful of verifiers
[run]
group = sym(4)
prime = 2
theorem = P2.4, P3.1, P3.4

[run]
group = sym(5)
prime = 2
theorem = p3.4, 4.7
t = (1,2)
"""


def test_default_runs_cover_the_corpus():
    runs = default_runs()
    assert len(runs) == 7
    assert runs[0] == {"group": "sym(3)", "prime": "3"}
    names = [r["group"] for r in runs]
    assert names == ["sym(3)", "sym(4)", "sym(5)", "alt(5)", "gl32", "m11", "m12"]
    m12 = runs[-1]
    assert m12["exploratory"] == "yes"
    listed = m12["theorem"].split(",")
    assert len(listed) == 15
    for skipped in ("P3.8", "P3.9", "P4.3"):
        assert skipped not in listed


def test_default_suite_is_green():
    result = run_suite(stable=True, jobs=4)
    assert result.exit_code == 0
    counts = result.summary()
    assert counts == {"pass": 79, "fail": 0, "not-applicable": 44, "error": 0}
    assert len(result.reports) == 123
    tail = result.to_text(stable=True).splitlines()[-1]
    assert tail == "suite: error=0  fail=0  not-applicable=44  pass=79  exit=0"


def test_small_config_runs_and_is_byte_stable():
    serial = run_suite(SMALL_CONFIG, stable=True, jobs=1)
    threaded = run_suite(SMALL_CONFIG, stable=True, jobs=3)
    assert serial.exit_code == threaded.exit_code == 0
    assert len(serial.reports) == 5
    assert serial.to_text(stable=True) == threaded.to_text(stable=True)
    assert serial.to_json(stable=True) == threaded.to_json(stable=True)
    # entry order follows the config, not completion order
    theorems = [run["theorem"] for run, _ in serial.reports]
    assert theorems == ["P2.4", "P3.1", "P3.4", "P3.4", "P4.7"]


def test_suite_json_shape():
    result = run_suite(SMALL_CONFIG, stable=True)
    doc = json.loads(result.to_json(stable=True))
    assert set(doc) == {"entries", "summary", "exit_code", "config"}
    assert doc["exit_code"] == 0
    assert doc["config"]["runs"] == 2
    assert doc["config"]["entries"] == 5
    entry = doc["entries"][0]
    assert entry["group"] == "sym(4)"
    assert entry["prime"] == 2
    assert entry["theorem"] == "P2.4"
    rep = entry["report"]
    assert rep["verdict"] == "pass"
    assert rep["timing_ms"] == 0.0


def test_suite_writes_artifacts(tmp_path):
    out = tmp_path / "reports"
    result = run_suite(SMALL_CONFIG, out_dir=str(out), stable=True)
    text = (out / "suite.txt").read_text()
    assert text == result.to_text(stable=True) + "\n"
    doc = json.loads((out / "suite.json").read_text())
    assert doc["summary"]["pass"] == 4
    assert doc["summary"]["not-applicable"] == 1
    assert os.path.exists(out / "suite.txt")


def test_empty_config_is_a_green_no_op():
    result = run_suite("# nothing to do\n")
    assert result.exit_code == 0
    assert result.reports == []
    assert result.summary() == {"pass": 0, "fail": 0, "not-applicable": 0, "error": 0}


def test_config_limit_settings_parse():
    limits, runs = parse_config("max_simplices = 50\nseed = 9\n[run]\ngroup = sym(3)\nprime = 3\n")
    assert limits.max_simplices == 50
    assert limits.seed == 9
    assert runs == [{"group": "sym(3)", "prime": "3"}]
    # max_order is the documented alias
    limits, _ = parse_config("max_order = 5000\n")
    assert limits.max_group_order == 5000


def test_config_errors():
    with pytest.raises(ConfigError, match="unknown section"):
        parse_config("[suite]\n")
    with pytest.raises(ConfigError, match="unknown setting"):
        parse_config("max_wibble = 3\n")
    with pytest.raises(ConfigError, match="needs an integer"):
        parse_config("max_simplices = lots\n")
    with pytest.raises(ConfigError, match="expected key = value"):
        parse_config("just some words\n")
    with pytest.raises(ConfigError, match="missing a group name"):
        run_suite("[run]\nprime = 2\n")
    with pytest.raises(ConfigError, match="non-integer prime"):
        run_suite("[run]\ngroup = sym(4)\nprime = two\n")
    with pytest.raises(ConfigError, match="needs a prime"):
        run_suite("[run]\ngroup = sym(4)\n")
    with pytest.raises(ConfigError, match="unknown theorem"):
        run_suite("[run]\ngroup = sym(4)\nprime = 2\ntheorem = P99.1\n")


def test_unknown_and_out_of_scope_groups_refused():
    with pytest.raises(ConfigError, match="sym\\("):
        run_suite("[run]\ngroup = nosuchgroup\nprime = 2\n")
    with pytest.raises(ConfigError, match="out of scope"):
        run_suite("[run]\ngroup = fi22\nprime = 2\n")


def test_capped_run_fails_the_suite():
    config = "max_simplices = 2\n[run]\ngroup = sym(5)\nprime = 2\ntheorem = P3.8\n"
    result = run_suite(config)
    assert result.exit_code == 1
    assert result.summary()["fail"] == 1
    (_, rep), = result.reports
    assert rep.verdict == "fail"
    assert any(s.name.startswith("resource-cap[") for s in rep.steps)


def test_explicit_limits_override_config_text():
    config = "max_simplices = 2\n[run]\ngroup = sym(5)\nprime = 2\ntheorem = P3.8\n"
    result = run_suite(config, limits=limits_with(max_simplices=200000))
    assert result.exit_code == 0
    assert result.summary()["pass"] == 1
