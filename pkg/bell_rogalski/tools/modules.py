"""
tools/modules.py

Commands: breaks, classify, module-table, diagram

Simple weight modules on the orbit of a rational point.
"""
from __future__ import annotations

import logging
from typing import Any

from ..core.config import CheckEntry, RunConfig, checks_passed
from ..core.datafile import load_document, parse_point, write_text
from ..core.datum import BellRogalskiDatum
from ..core.diagram import diagram
from ..core.tgwa import TgwaDatum, from_tgwa
from ..core.weights import (
    axis_breaks,
    break_classes,
    classify,
    g_set,
    g_set_bruteforce,
    is_torsion_free,
    module_table,
    verify_module,
)

logger = logging.getLogger(__name__)


def _load(arguments: dict[str, Any]) -> BellRogalskiDatum:
    doc = load_document(str(arguments["file"]).strip())
    return from_tgwa(doc) if isinstance(doc, TgwaDatum) else doc


def _missing(arguments: dict[str, Any], *keys: str) -> dict | None:
    for key in keys:
        if arguments.get(key) is None or str(arguments[key]).strip() == "":
            return {"error": f"{key} is required"}
    return None


def handle_breaks(arguments: dict[str, Any]) -> dict:
    """
    Break offsets of the orbit of a point, per axis.

    Input schema:
        file    (str) required
        point   (str) required — `x=1,y=0`
        axis    (int) optional — 1-based; all axes when omitted
        window  (int) optional — fallback scan window

    Returns:
        {fingerprint, status, result: {base_point, torsion, axes: [...]}, trail: []}
    """
    if (err := _missing(arguments, "file", "point")) is not None:
        return err
    cfg = RunConfig.from_arguments(arguments)
    datum = _load(arguments)
    pt = parse_point(datum.ring, str(arguments["point"]))
    if arguments.get("axis") is not None:
        axis = int(arguments["axis"])
        if not 1 <= axis <= datum.n:
            return {"error": f"axis must be between 1 and {datum.n}"}
        found = [axis_breaks(datum, pt, axis - 1, cfg.window)]
    else:
        found = break_classes(datum, pt, cfg.window, cfg.max_workers)
    return {
        "fingerprint": datum.fingerprint,
        "status": "ok",
        "result": {
            "base_point": pt.to_text(),
            "torsion": is_torsion_free(datum, pt, cfg.window).to_dict(),
            "axes": [b.to_dict(pt, datum, cfg.window) for b in found],
        },
        "trail": [],
    }


def handle_classify(arguments: dict[str, Any]) -> dict:
    """
    All simple weight modules supported on the orbit of a point.

    Input schema:
        file    (str)  required
        point   (str)  required
        window  (int)  optional — offsets shown and checked (default BR_WINDOW)
        check   (bool) optional — compare the box rule with the ideal oracle

    Returns:
        {fingerprint, status, result: Classification, trail}
    """
    if (err := _missing(arguments, "file", "point")) is not None:
        return err
    cfg = RunConfig.from_arguments(arguments)
    datum = _load(arguments)
    pt = parse_point(datum.ring, str(arguments["point"]))
    result = classify(datum, pt, cfg.window, cfg.max_workers)
    logger.debug("%d descriptors on the orbit of %s", len(result.descriptors), pt.to_text())

    entries: list[CheckEntry] = []
    if arguments.get("check"):
        bad = result.partition_defects()
        entries.append(CheckEntry("supports partition the window", not bad, "; ".join(bad[:5])))
        box = set(g_set(datum, pt, cfg.window, result.breaks))
        oracle = set(g_set_bruteforce(datum, pt, cfg.window))
        diff = sorted(box ^ oracle)
        entries.append(CheckEntry(
            "G_m box rule agrees with B_-alpha B_alpha not in m",
            not diff,
            ", ".join(str(list(a)) for a in diff[:5]),
        ))
    return {
        "fingerprint": datum.fingerprint,
        "status": "ok" if checks_passed(entries) else "failed",
        "result": result.to_dict(),
        "trail": [e.to_dict() for e in entries],
    }


def handle_module_table(arguments: dict[str, Any]) -> dict:
    """
    Explicit basis and generator action of one simple module.

    Input schema:
        file          (str)  required
        point         (str)  required — any point of the orbit
        module        (int)  optional — 1-based descriptor index; default is the module through the point
        window        (int)  optional
        degree_bound  (int)  optional — bound of the b_alpha search
        verify        (bool) optional — run verify_module (default on)

    Returns:
        {fingerprint, status, result: ModuleTable, trail}
    """
    if (err := _missing(arguments, "file", "point")) is not None:
        return err
    cfg = RunConfig.from_arguments(arguments)
    datum = _load(arguments)
    pt = parse_point(datum.ring, str(arguments["point"]))
    result = classify(datum, pt, cfg.window, cfg.max_workers)
    if arguments.get("module") is not None:
        k = int(arguments["module"])
        if not 1 <= k <= len(result.descriptors):
            return {"error": f"module must be between 1 and {len(result.descriptors)}"}
        descriptor = result.descriptors[k - 1]
    else:
        origin = (0,) * datum.n
        descriptor = next(d for d in result.descriptors if d.contains(origin))
    table = module_table(datum, descriptor, cfg.window, cfg.degree_bound)
    entries = verify_module(table) if cfg.verify else []
    return {
        "fingerprint": datum.fingerprint,
        "status": "ok" if checks_passed(entries) else "failed",
        "result": table.to_dict(),
        "trail": [e.to_dict() for e in entries],
    }


def handle_diagram(arguments: dict[str, Any]) -> dict:
    """
    SVG and TikZ pictures of the orbit of a point (rank 1 and 2).

    Input schema:
        file    (str) required
        point   (str) required
        window  (int) optional
        svg     (str) optional — SVG output path
        tikz    (str) optional — TikZ output path

    Returns:
        {fingerprint, status, result: {rank, window, break_lines, boxes, table?, written}, trail: []}
    """
    if (err := _missing(arguments, "file", "point")) is not None:
        return err
    cfg = RunConfig.from_arguments(arguments)
    datum = _load(arguments)
    pt = parse_point(datum.ring, str(arguments["point"]))
    pic = diagram(datum, pt, cfg.window)
    result = pic.to_dict()
    written = {}
    if not pic.fallback:
        if arguments.get("svg"):
            written["svg"] = write_text(str(arguments["svg"]), pic.svg)
        if arguments.get("tikz"):
            written["tikz"] = write_text(str(arguments["tikz"]), pic.tikz)
    result["written"] = written
    return {"fingerprint": datum.fingerprint, "status": "ok", "result": result, "trail": []}
