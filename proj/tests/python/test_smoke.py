import json

import pytest

import hydroham


def test_commands_listed():
    names = hydroham.commands()
    assert "check-ghs" in names
    assert "hierarchy" in names
    assert len(names) == 17


def test_expression_kernel_is_exact():
    assert hydroham.canonical_expr("1/u1 + 1/u1", 1) == "(2)/(v1)"
    assert hydroham.expr_mul("v1/v2", "v2/v1", 2) == "1"
    assert hydroham.expr_add("1/3", "1/6", 1) == "1/2"
    assert hydroham.expr_partial("1/v1", 1, 1) == "(-1)/(v1^2)"
    # canonical printing round-trips
    printed = hydroham.canonical_expr("(v1+v2)^2/(2*v1)", 2)
    assert hydroham.canonical_expr(printed, 2) == printed


def test_check_ghs_kdv():
    manifest = {
        "dimension": 1,
        "structure": {"g": [["v1"]], "gamma": [[["1/2"]]]},
    }
    report = hydroham.run("check-ghs", manifest)
    assert report["verdict"] == "pass"
    assert all(check["pass"] for check in report["checks"])


def test_check_gbhs_pencil_and_failure_reporting():
    pencil = {
        "dimension": 1,
        "structure0": {"g": [["1"]]},
        "structure1": {"g": [["v1"]], "gamma": [[["1/2"]]]},
    }
    assert hydroham.run("check-gbhs", pencil)["verdict"] == "pass"

    broken = json.loads(json.dumps(pencil))
    broken["structure1"]["V"] = [[["1"]]]
    report = hydroham.run("check-gbhs", broken)
    assert report["verdict"] == "fail"
    residuals = [r for c in report["checks"] for r in c["residuals"]]
    assert residuals, "failures must carry printable residuals"


def test_hierarchy_flows():
    manifest = {
        "dimension": 1,
        "structureConstants": [[["1"]]],
        "unit": ["1"],
        "pmax": 2,
    }
    report = hydroham.run("hierarchy", manifest)
    assert report["verdict"] == "pass"
    assert report["outputs"]["X(1,1)"] == '["1/2*v1^2"]'


def test_manifest_errors_are_raised():
    with pytest.raises(hydroham.ManifestError):
        hydroham.run("check-ghs", {"dimension": 1, "structure": {}})
    with pytest.raises(hydroham.ManifestError):
        hydroham.run("no-such-command", {"dimension": 1})
