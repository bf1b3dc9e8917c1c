"""
tools/algebra.py

Commands: validate, mul, ideal

Axiom checks of a datum file, products of graded elements and canonical
coefficient ideals.
"""
from __future__ import annotations

from typing import Any

from ..core.config import CheckEntry, RunConfig, checks_passed
from ..core.datafile import load_document, parse_degree, parse_graded
from ..core.datum import (
    BellRogalskiDatum,
    graded_containment_defects,
    has_scalar_units,
    iterate_decompose,
    multiply,
    validate,
)
from ..core.tgwa import TgwaDatum, from_tgwa, tgwa_fingerprint, validate_tgwa


def _entries(entries: list[CheckEntry]) -> list[dict]:
    return [e.to_dict() for e in entries]


def handle_validate(arguments: dict[str, Any]) -> dict:
    """
    Check every axiom of a datum (or TGWA) file.

    Input schema:
        file    (str)  required — datum or TGWA file
        check   (bool) optional — also run the graded-identity and decomposition suites
        window  (int)  optional — degree window of those suites (default 2)

    Returns:
        {fingerprint, status: ok|failed, result: {datum|tgwa, valid, scalar_units?}, trail}
    """
    path = str(arguments.get("file") or "").strip()
    if not path:
        return {"error": "file is required"}
    doc = load_document(path)

    if isinstance(doc, TgwaDatum):
        entries = validate_tgwa(doc)
        return {
            "fingerprint": tgwa_fingerprint(doc),
            "status": "ok" if checks_passed(entries) else "failed",
            "result": {"tgwa": doc.to_dict(), "valid": checks_passed(entries)},
            "trail": _entries(entries),
        }

    datum: BellRogalskiDatum = doc
    entries = validate(datum)
    if arguments.get("check") and checks_passed(entries):
        window = int(arguments.get("window") or 2)
        bad = graded_containment_defects(datum, window)
        entries.append(CheckEntry(
            f"I^(alpha) sigma^alpha(I^(beta)) in I^(alpha+beta), equal when signs agree, |alpha_i|, |beta_i| <= {window}",
            not bad,
            "; ".join(f"{list(a)}, {list(b)}" for a, b in bad[:5]),
        ))
        if datum.n >= 2:
            _, more = iterate_decompose(datum, window=window)
            entries.extend(more)
    valid = checks_passed(entries)
    return {
        "fingerprint": datum.fingerprint,
        "status": "ok" if valid else "failed",
        "result": {"datum": datum.to_dict(), "valid": valid, "scalar_units": has_scalar_units(datum)[0]},
        "trail": _entries(entries),
    }


def _require_datum(path: str) -> BellRogalskiDatum:
    doc = load_document(path)
    if isinstance(doc, TgwaDatum):
        return from_tgwa(doc)
    return doc


def handle_mul(arguments: dict[str, Any]) -> dict:
    """
    Multiply two graded elements of B.

    Input schema:
        file    (str)  required
        left    (str)  required — `deg:poly;deg:poly`, degrees comma-separated
        right   (str)  required
        verify  (bool) optional — check coefficient membership (default on)

    Returns:
        {fingerprint, status, result: {left, right, product, components, support}, trail: []}
    """
    path = str(arguments.get("file") or "").strip()
    if not path:
        return {"error": "file is required"}
    if not arguments.get("left") or not arguments.get("right"):
        return {"error": "left and right operands are required"}
    cfg = RunConfig.from_arguments(arguments)
    datum = _require_datum(path)
    x = parse_graded(datum, str(arguments["left"]), verify=cfg.verify)
    y = parse_graded(datum, str(arguments["right"]), verify=cfg.verify)
    z = multiply(x, y, verify=cfg.verify)
    return {
        "fingerprint": datum.fingerprint,
        "status": "ok",
        "result": {
            "left": x.to_text(),
            "right": y.to_text(),
            "product": z.to_text(),
            "components": z.to_list(),
            "support": [list(a) for a in z.support()],
            "membership_verified": cfg.verify,
        },
        "trail": [],
    }


def handle_ideal(arguments: dict[str, Any]) -> dict:
    """
    The canonical ideal I^(alpha), optionally with a membership query.

    Input schema:
        file      (str) required
        alpha     (str) required — comma-separated degree
        contains  (str) optional — polynomial to test for membership

    Returns:
        {fingerprint, status, result: {alpha, generators, groebner_basis, contains?}, trail: []}
    """
    path = str(arguments.get("file") or "").strip()
    if not path:
        return {"error": "file is required"}
    if arguments.get("alpha") is None:
        return {"error": "alpha is required"}
    datum = _require_datum(path)
    alpha = parse_degree(str(arguments["alpha"]), datum.n)
    I = datum.canonical_ideal(alpha)
    result: dict = {
        "alpha": list(alpha),
        "generators": I.to_text_list(),
        "groebner_basis": [g.to_text() for g in I.groebner()],
        "unit": I.is_unit(),
    }
    if arguments.get("contains"):
        f = datum.ring.parse(str(arguments["contains"]))
        result["contains"] = {"element": f.to_text(), "member": I.contains(f)}
    return {"fingerprint": datum.fingerprint, "status": "ok", "result": result, "trail": []}
