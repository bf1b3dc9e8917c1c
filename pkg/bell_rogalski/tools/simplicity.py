"""
tools/simplicity.py

Command: simplicity

Verdict SIMPLE | NOT_SIMPLE | INCONCLUSIVE with the trail of conditions it
was folded from.
"""
from __future__ import annotations

from typing import Any

from ..core.config import RunConfig
from ..core.datafile import load_document
from ..core.errors import UnsupportedError
from ..core.simplicity import hyperplane_condition, invariant_subring, simplicity_verdict
from ..core.tgwa import TgwaDatum, from_tgwa


def handle_simplicity(arguments: dict[str, Any]) -> dict:
    """
    Decide simplicity of B where the implemented criteria reach.

    Input schema:
        file  (str) required — datum or TGWA file
        kmax  (int) optional — bound of the hyperplane sweeps (default BR_KMAX)
        axis  (int) optional — 1-based; adds the full hyperplane table of that axis

    Returns:
        {fingerprint, status: SIMPLE|NOT_SIMPLE|INCONCLUSIVE, result, trail}
    """
    path = str(arguments.get("file") or "").strip()
    if not path:
        return {"error": "file is required"}
    cfg = RunConfig.from_arguments(arguments)
    doc = load_document(path)
    datum = from_tgwa(doc) if isinstance(doc, TgwaDatum) else doc
    if arguments.get("axis") is not None and not 1 <= int(arguments["axis"]) <= datum.n:
        return {"error": f"axis must be between 1 and {datum.n}"}

    verdict = simplicity_verdict(datum, cfg.kmax)
    result: dict = {"verdict": verdict.status, "rank": datum.n, "kmax": cfg.kmax}
    if verdict.unresolved:
        result["unresolved"] = verdict.unresolved
    try:
        result["invariant_subring"] = invariant_subring(datum).to_dict()
    except UnsupportedError as exc:
        result["invariant_subring"] = {"unsupported": str(exc)}
    if arguments.get("axis") is not None:
        result["hyperplane"] = hyperplane_condition(datum, int(arguments["axis"]) - 1, cfg.kmax).to_dict()
    return {
        "fingerprint": datum.fingerprint,
        "status": verdict.status,
        "result": result,
        "trail": [e.to_dict() for e in verdict.trail],
    }
