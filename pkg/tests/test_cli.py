import json

import pytest

from tracedcat.cli import (RunConfig, format_report, load_group, load_poset,
                           main, run_scenario)
from tracedcat.core import UsageError


def test_list_scenarios(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    for name in ("z-not-hopf", "sierpinski-join", "two-traces",
                 "diagonal-nonpreservation", "pfn-exception",
                 "group-algebra:c2", "mainthm-crosscheck:qc2",
                 "trace-meta:n", "laws:mat"):
        assert name in out


def test_run_z_not_hopf_json(tmp_path, capsys):
    out = tmp_path / "report.json"
    rc = main(["run", "z-not-hopf", "--seed", "1", "--cases", "25",
               "--max-size", "6", "--format", "json", "--out", str(out)])
    assert rc == 0
    payload = json.loads(out.read_text())
    assert payload["scenario"] == "z-not-hopf"
    assert payload["config"] == {"seed": 1, "cases": 25, "max_size": 6}
    assert payload["expected_match"] is True
    assert {s["verdict"] for s in payload["suites"]} == {"pass"}


def test_reports_byte_identical(tmp_path):
    cfg = RunConfig(seed=4, cases=20, max_size=3)
    one = format_report(run_scenario("two-traces", cfg), "json")
    two = format_report(run_scenario("two-traces", cfg), "json")
    assert one == two


def test_unknown_scenario_exit_code(capsys):
    assert main(["run", "does-not-exist"]) == 2
    assert "unknown scenario" in capsys.readouterr().err


def test_verdict_mismatch_exits_nonzero(monkeypatch, capsys):
    import tracedcat.cli as cli

    def fake(config):
        from tracedcat.laws import CheckReport
        return [("stub", CheckReport("stub", "mat", 1, "fail"))], False, "forced"

    monkeypatch.setitem(cli.SCENARIOS, "stub",
                        cli.Scenario("stub", "synthetic mismatch", fake))
    assert main(["run", "stub"]) == 1
    assert "expected_match: NO" in capsys.readouterr().out


def test_expected_failure_scenarios_report_cleanly():
    cfg = RunConfig(seed=0, cases=15, max_size=3)
    payload = run_scenario("sierpinski-join", cfg)
    assert payload["expected_match"] is True
    verdicts = {n: s["verdict"]
                for n, s in zip(payload["suite_names"], payload["suites"])}
    assert verdicts["traced_via_fix"] == "fail"
    payload = run_scenario("diagonal-nonpreservation", cfg)
    assert payload["expected_match"] is True


def test_load_poset(tmp_path):
    path = tmp_path / "sig.poset"
    path.write_text("# the two-point lattice\n"
                    "elements: bot top\n"
                    "le: bot top\n")
    poset = load_poset(str(path))
    assert poset.elements == ("bot", "top")
    assert poset.bottom() == 0 and poset.top() == 1

    bad = tmp_path / "bad.poset"
    bad.write_text("elements: a b\nle: a b\nle: b a\n")
    with pytest.raises(UsageError, match="antisymmetry"):
        load_poset(str(bad))

    junk = tmp_path / "junk.poset"
    junk.write_text("elements: a\nleq a a\n")
    with pytest.raises(UsageError, match="junk.poset:2"):
        load_poset(str(junk))


def test_load_group(tmp_path):
    path = tmp_path / "c2.group"
    path.write_text("elements: e s\n"
                    "mul: e e e\nmul: e s s\nmul: s e s\nmul: s s e\n")
    table = load_group(str(path))
    assert table.identity_label == "e"
    assert table.inverse("s") == "s"

    bad = tmp_path / "noassoc.group"
    els = "eabcd"
    square = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3],
              [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    lines = ["elements: " + " ".join(els)]
    for i in range(5):
        for j in range(5):
            lines.append(f"mul: {els[i]} {els[j]} {els[square[i][j]]}")
    bad.write_text("\n".join(lines) + "\n")
    with pytest.raises(UsageError, match="associativity fails on triple"):
        load_group(str(bad))


def test_group_algebra_scenario_accepts_file(tmp_path):
    path = tmp_path / "c2.group"
    path.write_text("elements: e s\n"
                    "mul: e e e\nmul: e s s\nmul: s e s\nmul: s s e\n")
    cfg = RunConfig(seed=5, cases=20, max_size=2)
    payload = run_scenario(f"group-algebra:{path}", cfg)
    assert payload["expected_match"] is True
