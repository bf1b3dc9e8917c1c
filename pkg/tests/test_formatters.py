"""Tests for core/formatters.py"""
import json

import pytest

from bell_rogalski.core.config import CheckEntry, Report
from bell_rogalski.core.formatters import check_report, dumps, format_json, format_report, format_text


def _make_report(**kwargs):
    base = dict(
        command="validate",
        fingerprint="abc123",
        status="ok",
        result={"rank": 1, "name": "weyl", "breaks": [0, 2], "empty": []},
        trail=[CheckEntry("sigma commute", True).to_dict(), CheckEntry("p antisymmetric", False, "p_12 p_21 = 4").to_dict()],
    )
    base.update(kwargs)
    return Report(**base)


def test_format_json_structure():
    output = format_json(_make_report())
    assert output["command"] == "validate"
    assert output["trail"][1] == {"check": "p antisymmetric", "passed": False, "detail": "p_12 p_21 = 4"}
    assert "timing_seconds" not in output


def test_json_is_byte_stable():
    a = format_report(_make_report(result={"b": 1, "a": 2}))
    b = format_report(_make_report(result={"a": 2, "b": 1}))
    assert a == b
    assert a.endswith("}\n")
    assert json.loads(a)["result"] == {"a": 2, "b": 1}


def test_timing_rounded():
    output = format_json(_make_report(timing=0.123456))
    assert output["timing_seconds"] == 0.123


def test_format_text():
    output = format_text(_make_report())
    assert output.startswith("validate: ok\nfingerprint: abc123\n")
    assert "  breaks:\n    - 0\n    - 2\n" in output
    assert "  empty: []\n" in output
    assert "  - check: sigma commute\n" in output
    assert "    passed: false\n" in output


def test_unknown_format():
    with pytest.raises(ValueError):
        format_report(_make_report(), "yaml")


def test_emitted_reports_pass_schema():
    assert check_report(json.loads(format_report(_make_report(timing=1.5)))) == []


@pytest.mark.parametrize("payload,problem", [
    ([], "report must be a JSON object"),
    ({"command": "x", "fingerprint": "", "status": "ok", "result": {}}, "missing key 'trail'"),
    ({"command": "x", "fingerprint": "", "status": "maybe", "result": {}, "trail": []}, "unknown status 'maybe'"),
    ({"command": "x", "fingerprint": "", "status": "ok", "result": {}, "trail": [], "extra": 1}, "unexpected keys: extra"),
    ({"command": "x", "fingerprint": "", "status": "error", "result": {}, "trail": []}, "error reports must carry result.error"),
    ({"command": "x", "fingerprint": "", "status": "ok", "result": {}, "trail": [{"condition": "c", "result": "?"}]},
     "trail[0] verdict entry has result '?'"),
])
def test_check_report_problems(payload, problem):
    assert problem in check_report(payload)


def test_dumps_keeps_unicode():
    assert dumps({"sigma": "σ"}) == '{\n  "sigma": "σ"\n}'
