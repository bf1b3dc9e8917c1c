"""
core/formatters.py

Report formatters: json (canonical, byte-stable) and text (indented tree),
plus the schema check every emitted payload must pass.
"""
from __future__ import annotations

import json
from io import StringIO
from typing import Any

from .config import Report

FORMATS = ("json", "text")
STATUSES = ("ok", "failed", "error", "SIMPLE", "NOT_SIMPLE", "INCONCLUSIVE")


def format_json(report: Report) -> dict:
    """Return the structured dict that is serialised to standard output."""
    return report.to_dict()


def dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)


def _scalar_text(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _write_tree(buf: StringIO, value: Any, indent: int) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and item:
                buf.write(f"{pad}{key}:\n")
                _write_tree(buf, item, indent + 1)
            elif isinstance(item, (dict, list)):
                buf.write(f"{pad}{key}: {'{}' if isinstance(item, dict) else '[]'}\n")
            else:
                buf.write(f"{pad}{key}: {_scalar_text(item)}\n")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict) and item:
                # first key rides on the dash line
                lines = StringIO()
                _write_tree(lines, item, indent + 1)
                body = lines.getvalue().splitlines()
                buf.write(f"{pad}- {body[0].lstrip()}\n")
                for line in body[1:]:
                    buf.write(line + "\n")
            elif isinstance(item, list) and item and all(not isinstance(x, (dict, list)) for x in item):
                buf.write(f"{pad}- [{', '.join(_scalar_text(x) for x in item)}]\n")
            elif isinstance(item, list) and item:
                buf.write(f"{pad}-\n")
                _write_tree(buf, item, indent + 1)
            else:
                buf.write(f"{pad}- {_scalar_text(item) if not isinstance(item, (dict, list)) else '[]'}\n")
    else:
        buf.write(f"{pad}{_scalar_text(value)}\n")


def format_text(report: Report) -> str:
    d = report.to_dict()
    buf = StringIO()
    buf.write(f"{d['command']}: {d['status']}\n")
    buf.write(f"fingerprint: {d['fingerprint'] or '-'}\n")
    if "timing_seconds" in d:
        buf.write(f"timing_seconds: {d['timing_seconds']}\n")
    if d["result"]:
        buf.write("result:\n")
        _write_tree(buf, d["result"], 1)
    if d["trail"]:
        buf.write("trail:\n")
        _write_tree(buf, d["trail"], 1)
    return buf.getvalue()


def format_report(report: Report, fmt: str = "json") -> str:
    if fmt == "text":
        return format_text(report)
    if fmt == "json":
        return dumps(format_json(report)) + "\n"
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def check_report(payload: Any) -> list[str]:
    """Problems with a decoded report payload; empty when it matches the schema."""
    if not isinstance(payload, dict):
        return ["report must be a JSON object"]
    problems = []
    expected = {"command": str, "fingerprint": str, "status": str, "result": dict, "trail": list}
    for key, kind in expected.items():
        if key not in payload:
            problems.append(f"missing key {key!r}")
        elif not isinstance(payload[key], kind):
            problems.append(f"{key!r} must be of type {kind.__name__}")
    extra = set(payload) - set(expected) - {"timing_seconds"}
    if extra:
        problems.append(f"unexpected keys: {', '.join(sorted(extra))}")
    if isinstance(payload.get("status"), str) and payload["status"] not in STATUSES:
        problems.append(f"unknown status {payload['status']!r}")
    if "timing_seconds" in payload and not isinstance(payload["timing_seconds"], (int, float)):
        problems.append("'timing_seconds' must be a number")
    for k, entry in enumerate(payload.get("trail") or []):
        if not isinstance(entry, dict):
            problems.append(f"trail[{k}] must be an object")
            continue
        if "check" in entry:
            if not isinstance(entry.get("passed"), bool):
                problems.append(f"trail[{k}] check entry needs a boolean 'passed'")
        elif "condition" in entry:
            if entry.get("result") not in ("pass", "fail", "unknown"):
                problems.append(f"trail[{k}] verdict entry has result {entry.get('result')!r}")
        else:
            problems.append(f"trail[{k}] has neither 'check' nor 'condition'")
    if payload.get("status") == "error" and isinstance(payload.get("result"), dict):
        if "error" not in payload["result"]:
            problems.append("error reports must carry result.error")
    return problems
