"""
core/datafile.py

YAML datum files.

The document is composed (not loaded) so every value keeps its source mark;
errors point at the offending node as `line L, column C`.  Grammar and
examples: docs/datum_format.md.
"""
from __future__ import annotations

import logging
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Optional, Union

import yaml

from .automorphism import Automorphism, WeightPoint
from .datum import BellRogalskiDatum, Degree, GradedElement, Matrix, to_matrix
from .errors import DatumError, ParseError, PointError, RingError
from .groebner import Ideal
from .poly import ORDERS, Polynomial, RingSpec, to_fraction
from .tgwa import TgwaDatum, eigenvalue_matrix

logger = logging.getLogger(__name__)

DATUM_KEYS = {"kind", "name", "description", "ring", "params", "sigma", "p", "H", "J", "assume"}
TGWA_KEYS = {"kind", "name", "description", "ring", "params", "sigma", "a", "mu", "gamma"}
_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


# ---------------------------------------------------------------------------
# Node access
# ---------------------------------------------------------------------------

def _error(node: Optional[yaml.Node], message: str) -> ParseError:
    if node is None:
        return ParseError(message)
    mark = node.start_mark
    return ParseError(message, line=mark.line + 1, column=mark.column + 1)


@contextmanager
def _at(node: yaml.Node) -> Iterator[None]:
    """Attach the node position to unlocated parse and ring errors raised inside."""
    try:
        yield
    except ParseError as exc:
        if exc.line is not None:
            raise
        raise _error(node, str(exc)) from exc
    except (RingError, PointError) as exc:
        raise _error(node, str(exc)) from exc


def compose(text: str) -> yaml.Node:
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        problem = getattr(exc, "problem", None) or str(exc)
        if mark is not None:
            raise ParseError(problem, line=mark.line + 1, column=mark.column + 1) from exc
        raise ParseError(problem) from exc
    if node is None:
        raise ParseError("empty document")
    return node


def _mapping(node: yaml.Node, label: str) -> dict[str, yaml.Node]:
    if not isinstance(node, yaml.MappingNode):
        raise _error(node, f"{label} must be a mapping")
    out: dict[str, yaml.Node] = {}
    for key, value in node.value:
        name = _scalar(key, f"key in {label}")
        if name in out:
            raise _error(key, f"duplicate key {name!r} in {label}")
        out[name] = value
    return out


def _sequence(node: yaml.Node, label: str) -> list[yaml.Node]:
    if not isinstance(node, yaml.SequenceNode):
        raise _error(node, f"{label} must be a list")
    return list(node.value)


def _scalar(node: yaml.Node, label: str) -> str:
    if not isinstance(node, yaml.ScalarNode):
        raise _error(node, f"{label} must be a single value")
    return str(node.value)


def _flag(node: yaml.Node, label: str) -> bool:
    value = _scalar(node, label).strip().lower()
    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    raise _error(node, f"{label} must be true or false, got {value!r}")


def _require(fields: dict[str, yaml.Node], root: yaml.Node, key: str) -> yaml.Node:
    if key not in fields:
        raise _error(root, f"missing required key {key!r}")
    return fields[key]


def _reject_unknown(fields: dict[str, yaml.Node], root: yaml.Node, allowed: set[str]) -> None:
    for key, node in fields.items():
        if key not in allowed:
            raise _error(node, f"unknown key {key!r} (expected one of {', '.join(sorted(allowed))})")


# ---------------------------------------------------------------------------
# Blocks
# ---------------------------------------------------------------------------

def parse_ring(node: yaml.Node) -> RingSpec:
    fields = _mapping(node, "ring")
    _reject_unknown(fields, node, {"variables", "invertible", "order"})
    names = [_scalar(v, "variable name").strip() for v in _sequence(_require(fields, node, "variables"), "ring.variables")]
    inverted: set[str] = set()
    if "invertible" in fields:
        inv_node = fields["invertible"]
        if isinstance(inv_node, yaml.ScalarNode) and _flag(inv_node, "ring.invertible"):
            inverted = set(names)
        elif isinstance(inv_node, yaml.SequenceNode):
            for v in inv_node.value:
                name = _scalar(v, "invertible variable").strip()
                if name not in names:
                    raise _error(v, f"invertible variable {name!r} is not a ring variable")
                inverted.add(name)
        elif not isinstance(inv_node, yaml.ScalarNode):
            raise _error(inv_node, "ring.invertible must be a list of names or true/false")
    order = "degrevlex"
    if "order" in fields:
        order = _scalar(fields["order"], "ring.order").strip()
        if order not in ORDERS:
            raise _error(fields["order"], f"unknown monomial order {order!r}")
    with _at(node):
        return RingSpec(tuple(names), tuple(n in inverted for n in names), order)


def parse_params(node: Optional[yaml.Node]) -> dict[str, Fraction]:
    if node is None:
        return {}
    out: dict[str, Fraction] = {}
    for name, value in _mapping(node, "params").items():
        if not name.isidentifier():
            raise _error(value, f"invalid parameter name {name!r}")
        with _at(value):
            out[name] = to_fraction(_scalar(value, f"params.{name}"))
    return out


def _polynomial(ring: RingSpec, node: yaml.Node, params: dict[str, Fraction], label: str) -> Polynomial:
    text = _scalar(node, label)
    with _at(node):
        return Polynomial.from_text(ring, text, params)


def _constant(ring: RingSpec, node: yaml.Node, params: dict[str, Fraction], label: str) -> Fraction:
    f = _polynomial(ring, node, params, label)
    if not f.is_constant():
        raise _error(node, f"{label} must be a rational constant, got {f}")
    return f.constant_value() if f else Fraction(0)


def _matrix(ring: RingSpec, node: yaml.Node, params: dict[str, Fraction], label: str, n: int) -> Matrix:
    rows = _sequence(node, label)
    if len(rows) != n:
        raise _error(node, f"{label} must have {n} rows, got {len(rows)}")
    out = []
    for i, row_node in enumerate(rows):
        row = _sequence(row_node, f"{label} row {i + 1}")
        if len(row) != n:
            raise _error(row_node, f"{label} row {i + 1} must have {n} entries, got {len(row)}")
        out.append([_constant(ring, c, params, f"{label}[{i + 1}][{k + 1}]") for k, c in enumerate(row)])
    return to_matrix(out)


def _images(ring: RingSpec, node: yaml.Node, label: str) -> dict[str, str]:
    out = {}
    for name, value in _mapping(node, label).items():
        if name not in ring.variables:
            raise _error(value, f"{label}: {name!r} is not a ring variable")
        out[name] = _scalar(value, f"{label}.{name}")
    return out


def _sigma(ring: RingSpec, node: yaml.Node, params: dict[str, Fraction]) -> tuple:
    out = []
    for i, s in enumerate(_sequence(node, "sigma")):
        images = _images(ring, s, f"sigma {i + 1}")
        with _at(s):
            out.append(Automorphism.from_images(ring, images, params))
    if not out:
        raise _error(node, "sigma must list at least one automorphism")
    return tuple(out)


def _ideals(ring: RingSpec, node: yaml.Node, params: dict[str, Fraction], label: str, n: int) -> tuple:
    items = _sequence(node, label)
    if len(items) != n:
        raise _error(node, f"{label} needs {n} ideals (one per automorphism), got {len(items)}")
    out = []
    for i, gens in enumerate(items):
        polys = [
            _polynomial(ring, g, params, f"{label}_{i + 1} generator")
            for g in _sequence(gens, f"{label}_{i + 1}")
        ]
        out.append(Ideal(ring, polys))
    return tuple(out)


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------

def document_kind(root: yaml.Node) -> str:
    fields = _mapping(root, "document")
    if "kind" in fields:
        kind = _scalar(fields["kind"], "kind").strip().lower()
        if kind not in ("datum", "tgwa"):
            raise _error(fields["kind"], f"unknown kind {kind!r} (expected datum or tgwa)")
        return kind
    return "tgwa" if "a" in fields else "datum"


def datum_from_node(root: yaml.Node) -> BellRogalskiDatum:
    fields = _mapping(root, "datum")
    _reject_unknown(fields, root, DATUM_KEYS)
    ring = parse_ring(_require(fields, root, "ring"))
    params = parse_params(fields.get("params"))
    sigma = _sigma(ring, _require(fields, root, "sigma"), params)
    n = len(sigma)
    p = _matrix(ring, fields["p"], params, "p", n) if "p" in fields else None
    H = _ideals(ring, _require(fields, root, "H"), params, "H", n)
    J = _ideals(ring, _require(fields, root, "J"), params, "J", n)
    assumptions = {}
    if "assume" in fields:
        for key, value in _mapping(fields["assume"], "assume").items():
            assumptions[key] = _flag(value, f"assume.{key}")
    name = _scalar(fields["name"], "name") if "name" in fields else ""
    try:
        return BellRogalskiDatum(
            ring, sigma,
            p if p is not None else to_matrix([[1] * n for _ in range(n)]),
            H, J, name=name, assumptions=assumptions,
        )
    except DatumError as exc:
        raise _error(root, str(exc)) from exc


def tgwa_from_node(root: yaml.Node) -> TgwaDatum:
    fields = _mapping(root, "tgwa")
    _reject_unknown(fields, root, TGWA_KEYS)
    ring = parse_ring(_require(fields, root, "ring"))
    params = parse_params(fields.get("params"))
    sigma = _sigma(ring, _require(fields, root, "sigma"), params)
    n = len(sigma)
    a_node = _require(fields, root, "a")
    a = [_polynomial(ring, x, params, "a_i") for x in _sequence(a_node, "a")]
    if len(a) != n:
        raise _error(a_node, f"a needs {n} elements (one per automorphism), got {len(a)}")
    mu = _matrix(ring, fields["mu"], params, "mu", n) if "mu" in fields else None
    gamma = _matrix(ring, fields["gamma"], params, "gamma", n) if "gamma" in fields else None
    name = _scalar(fields["name"], "name") if "name" in fields else ""
    try:
        if gamma is None:
            gamma = eigenvalue_matrix(sigma, a)
        if mu is None:
            mu = to_matrix([[1] * n for _ in range(n)])
        return TgwaDatum(ring, sigma, tuple(a), mu, gamma, name=name)
    except DatumError as exc:
        raise _error(root, str(exc)) from exc


def read_text(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from exc


def load_document(path: Union[str, Path]) -> Union[BellRogalskiDatum, TgwaDatum]:
    root = compose(read_text(path))
    kind = document_kind(root)
    logger.debug("loading %s as %s", path, kind)
    return tgwa_from_node(root) if kind == "tgwa" else datum_from_node(root)


def load_datum_text(text: str) -> BellRogalskiDatum:
    root = compose(text)
    if document_kind(root) != "datum":
        raise _error(root, "expected a Bell-Rogalski datum, found a TGWA datum")
    return datum_from_node(root)


def load_tgwa_text(text: str) -> TgwaDatum:
    root = compose(text)
    if document_kind(root) != "tgwa":
        raise _error(root, "expected a TGWA datum (key 'a' or kind: tgwa)")
    return tgwa_from_node(root)


def load_datum(path: Union[str, Path]) -> BellRogalskiDatum:
    return load_datum_text(read_text(path))


def load_tgwa(path: Union[str, Path]) -> TgwaDatum:
    return load_tgwa_text(read_text(path))


def load_lifts(path: Union[str, Path], ring: RingSpec) -> tuple[dict[str, str], ...]:
    """`lifts:` list of variable-image maps on the tensor ring (missing variables are fixed)."""
    root = compose(read_text(path))
    node = root
    if isinstance(root, yaml.MappingNode):
        fields = _mapping(root, "lifts file")
        _reject_unknown(fields, root, {"lifts"})
        node = _require(fields, root, "lifts")
    return tuple(_images(ring, s, f"lift {i + 1}") for i, s in enumerate(_sequence(node, "lifts")))


# ---------------------------------------------------------------------------
# Command-line values
# ---------------------------------------------------------------------------

def parse_degree(text: str, n: int) -> Degree:
    """`1,-2` -> (1, -2)."""
    try:
        alpha = tuple(int(x) for x in str(text).replace(" ", "").split(",") if x != "")
    except ValueError as exc:
        raise ParseError(f"degree must be comma-separated integers, got {text!r}") from exc
    if len(alpha) != n:
        raise ParseError(f"degree {text!r} needs {n} entries")
    return alpha


def parse_point(ring: RingSpec, text: str) -> WeightPoint:
    try:
        return WeightPoint.parse(ring, text)
    except (RingError, PointError, ParseError) as exc:
        raise ParseError(f"bad point {text!r}: {exc}") from exc


def parse_graded(datum: BellRogalskiDatum, text: str, verify: bool = True) -> GradedElement:
    """`deg:poly;deg:poly`, e.g. `1:z+1;-1:1` or `1,0:x;0,0:2`."""
    parts: dict[Degree, Polynomial] = {}
    for item in filter(None, (s.strip() for s in str(text).split(";"))):
        if ":" not in item:
            raise ParseError(f"graded term must be degree:polynomial, got {item!r}")
        deg_text, poly_text = item.split(":", 1)
        alpha = parse_degree(deg_text, datum.n)
        f = Polynomial.from_text(datum.ring, poly_text)
        parts[alpha] = parts.get(alpha, datum.ring.zero()) + f
    return GradedElement(datum, parts, verify=verify)


def parse_matrix(text: str, rows: int, cols: int) -> Matrix:
    """`5` or `1,2;3,4`: rows separated by `;`."""
    values = [
        [to_fraction(x) for x in row.split(",") if x.strip()]
        for row in str(text).split(";") if row.strip()
    ]
    if len(values) != rows or any(len(r) != cols for r in values):
        raise ParseError(f"matrix {text!r} must be {rows}x{cols}")
    return to_matrix(values)


def parse_scalars(text: str, n: int) -> tuple[Fraction, ...]:
    values = tuple(to_fraction(x) for x in str(text).split(",") if x.strip())
    if len(values) != n:
        raise ParseError(f"{text!r} needs {n} comma-separated scalars")
    return values


def parse_images(ring: RingSpec, text: str) -> dict[str, str]:
    """`x=-x,y=y`; variables not mentioned are left to the caller."""
    images: dict[str, str] = {}
    for item in filter(None, (s.strip() for s in str(text).split(","))):
        if "=" not in item:
            raise ParseError(f"map entry must be name=image, got {item!r}")
        name, image = (s.strip() for s in item.split("=", 1))
        if name not in ring.variables:
            raise ParseError(f"{name!r} is not a variable of {ring.describe()}")
        images[name] = image
    return images


def parse_automorphism(ring: RingSpec, text: str) -> Automorphism:
    try:
        return Automorphism.from_images(ring, parse_images(ring, text))
    except RingError as exc:
        raise ParseError(str(exc)) from exc


# ---------------------------------------------------------------------------
# Writers
# ---------------------------------------------------------------------------

def _dump(payload: dict) -> str:
    return yaml.safe_dump(payload, sort_keys=False, allow_unicode=True, default_flow_style=None)


def dump_datum(datum: BellRogalskiDatum) -> str:
    """A datum file that loads back to an equal datum."""
    d = datum.to_dict()
    payload: dict = {"kind": "datum"}
    if datum.name:
        payload["name"] = datum.name
    payload.update({k: d[k] for k in ("ring", "sigma", "p", "H", "J")})
    if datum.assumptions:
        payload["assume"] = dict(datum.assumptions)
    return _dump(payload)


def dump_tgwa(t: TgwaDatum) -> str:
    d = t.to_dict()
    payload: dict = {"kind": "tgwa"}
    if t.name:
        payload["name"] = t.name
    payload.update({k: d[k] for k in ("ring", "sigma", "a", "mu", "gamma")})
    return _dump(payload)


def write_text(path: Union[str, Path], text: str) -> str:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    logger.info("wrote %s", target)
    return str(target)
