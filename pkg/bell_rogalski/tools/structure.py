"""
tools/structure.py

Commands: tgwa, tensor, fixed-ring, gkdim

Constructions that turn one datum into another.  With `out` set, the
constructed datum is written as a datum file that loads back unchanged.
"""
from __future__ import annotations

import logging
from typing import Any

from ..core.config import CheckEntry, RunConfig, checks_passed
from ..core.datafile import (
    dump_datum,
    dump_tgwa,
    load_datum,
    load_document,
    load_lifts,
    parse_automorphism,
    parse_matrix,
    parse_scalars,
    write_text,
)
from ..core.morphisms import fixed_ring, gk_dimension, gk_dimension_tgwa
from ..core.tensor import TwistSpec, tensor_ring, twisted_tensor
from ..core.tgwa import TgwaDatum, round_trip_defects, tgwa_fingerprint, tgwa_to_datum_checked, to_tgwa

logger = logging.getLogger(__name__)


def _report(fingerprint: str, result: dict, entries: list[CheckEntry]) -> dict:
    result.pop("checks", None)
    return {
        "fingerprint": fingerprint,
        "status": "ok" if checks_passed(entries) else "failed",
        "result": result,
        "trail": [e.to_dict() for e in entries],
    }


def handle_tgwa(arguments: dict[str, Any]) -> dict:
    """
    Convert between Bell-Rogalski data and TGWA data of type (A_1)^n.

    Input schema:
        file       (str) required — datum file (to) or TGWA file (from)
        direction  (str) optional — "to" | "from"; inferred from the file when omitted
        out        (str) optional — write the converted datum here
        verify     (bool) optional — check the TGWA relations inside B (default on)

    Returns:
        {fingerprint, status, result: conversion | datum, trail}
    """
    path = str(arguments.get("file") or "").strip()
    if not path:
        return {"error": "file is required"}
    direction = arguments.get("direction")
    if direction not in (None, "to", "from"):
        return {"error": "direction must be 'to' or 'from'"}
    cfg = RunConfig.from_arguments(arguments)
    doc = load_document(path)
    is_tgwa = isinstance(doc, TgwaDatum)
    direction = direction or ("from" if is_tgwa else "to")
    logger.debug("tgwa %s: %s", direction, path)

    if direction == "to":
        if is_tgwa:
            return {"error": "direction 'to' needs a Bell-Rogalski datum file"}
        conv = to_tgwa(doc, verify=cfg.verify)
        result = conv.to_dict()
        entries = conv.checks
        if arguments.get("out"):
            result["written"] = write_text(str(arguments["out"]), dump_tgwa(conv.tgwa))
        return _report(doc.fingerprint, result, entries)

    if not is_tgwa:
        return {"error": "direction 'from' needs a TGWA file"}
    datum, entries = tgwa_to_datum_checked(doc)
    defects = round_trip_defects(doc)
    entries.append(CheckEntry("to_tgwa(from_tgwa(T)) = T", not defects, "; ".join(defects)))
    result = {"datum": datum.to_dict(), "source_fingerprint": tgwa_fingerprint(doc)}
    if arguments.get("out"):
        result["written"] = write_text(str(arguments["out"]), dump_datum(datum))
    return _report(datum.fingerprint, result, entries)


def handle_tensor(arguments: dict[str, Any]) -> dict:
    """
    Twisted tensor product of two data.

    Input schema:
        left    (str) required — datum file
        right   (str) required — datum file
        d       (str) optional — m x n twisting scalars, rows split by ';' (default all ones)
        lifts   (str) optional — YAML file with m + n lifted automorphisms of the tensor ring
        window  (int) optional — degree window of the checks (default BR_TENSOR_WINDOW)
        out     (str) optional — write the tensor datum here

    Returns:
        {fingerprint, status, result: TensorProduct, trail}
    """
    if not arguments.get("left") or not arguments.get("right"):
        return {"error": "left and right datum files are required"}
    cfg = RunConfig.from_arguments(arguments)
    left = load_datum(str(arguments["left"]))
    right = load_datum(str(arguments["right"]))
    twist = TwistSpec.untwisted(left.n, right.n)
    if arguments.get("d"):
        twist = TwistSpec(parse_matrix(str(arguments["d"]), left.n, right.n))
    if arguments.get("lifts"):
        ring = tensor_ring(left.ring, right.ring)[0]
        twist = TwistSpec(twist.d, load_lifts(str(arguments["lifts"]), ring))
    window = int(arguments.get("window") or cfg.tensor_window)
    tp = twisted_tensor(left, right, twist, window=window, verify=cfg.verify)
    result = tp.to_dict()
    if arguments.get("out"):
        result["written"] = write_text(str(arguments["out"]), dump_datum(tp.datum))
    return _report(tp.datum.fingerprint, result, tp.checks)


def handle_fixed_ring(arguments: dict[str, Any]) -> dict:
    """
    Fixed ring of the induced automorphism Phi_gamma as a new datum.

    Input schema:
        file    (str) required
        phi     (str) optional — `x=-x`; identity when omitted
        gamma   (str) optional — comma-separated scalars, each 1 or -1
        window  (int) optional — degree window of the component check (default 2)
        out     (str) optional — write the fixed datum here

    Returns:
        {fingerprint, status, result: FixedRing, trail}
    """
    path = str(arguments.get("file") or "").strip()
    if not path:
        return {"error": "file is required"}
    datum = load_datum(path)
    phi = parse_automorphism(datum.ring, str(arguments["phi"])) if arguments.get("phi") else None
    gamma = parse_scalars(str(arguments["gamma"]), datum.n) if arguments.get("gamma") else None
    window = int(arguments.get("window") or 2)
    fr = fixed_ring(datum, phi, gamma, window=window)
    result = fr.to_dict()
    if arguments.get("out"):
        result["written"] = write_text(str(arguments["out"]), dump_datum(fr.datum))
    return _report(fr.datum.fingerprint, result, fr.checks)


def handle_gkdim(arguments: dict[str, Any]) -> dict:
    """
    GK dimension with its hypothesis checklist.

    Input schema:
        file  (str) required — datum or TGWA file

    Returns:
        {fingerprint, status, result: {gk_dimension, bounds}, trail}
    """
    path = str(arguments.get("file") or "").strip()
    if not path:
        return {"error": "file is required"}
    doc = load_document(path)
    if isinstance(doc, TgwaDatum):
        gk, fingerprint = gk_dimension_tgwa(doc), tgwa_fingerprint(doc)
    else:
        gk, fingerprint = gk_dimension(doc), doc.fingerprint
    return _report(fingerprint, gk.to_dict(), gk.checks)
