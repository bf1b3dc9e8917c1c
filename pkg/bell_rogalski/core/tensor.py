"""
core/tensor.py

Twisted tensor products B (x)_tau D of Bell-Rogalski algebras, realised as a
single datum W of rank m + n over the tensor base ring R (x) S.

W uses the block matrix r = [[p, d], [d^-T, q]] (reciprocal lower-left block
keeps r multiplicatively antisymmetric), the lifted automorphisms pi_i of
R (x) S (trivial lifts by default) and the extended ideals
M = (H_1 (x) S, ..., R (x) K_n), N = (J_1 (x) S, ..., R (x) L_n).
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .automorphism import Automorphism, RingMap
from .config import DEFAULT_TENSOR_WINDOW, CheckEntry, checks_passed
from .datum import (
    BellRogalskiDatum,
    Degree,
    GradedElement,
    Matrix,
    commutation_scalar,
    degree_window,
    generators,
    multiply,
    to_matrix,
    validate,
)
from .errors import DatumError, HypothesisError, RingError
from .groebner import Ideal, ideal_equal, ideal_product
from .poly import Polynomial, RingSpec

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Twist specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwistSpec:
    """d_ik for i in the left axes and k in the right axes; lifts as image maps on the tensor ring."""
    d: Matrix
    lifts: Optional[tuple[Mapping[str, str], ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", to_matrix(self.d))
        if any(c == 0 for row in self.d for c in row):
            raise DatumError("twisting scalars d_ik must be nonzero")
        if self.lifts is not None:
            object.__setattr__(self, "lifts", tuple(dict(x) for x in self.lifts))

    @classmethod
    def untwisted(cls, m: int, n: int) -> "TwistSpec":
        return cls(tuple((Fraction(1),) * n for _ in range(m)))


def d_scalar(d: Matrix, alpha: Sequence[int], beta: Sequence[int]) -> Fraction:
    """prod d_ik^(alpha_i beta_k): the exchange scalar of a left degree alpha past a right degree beta."""
    out = Fraction(1)
    for i, a in enumerate(alpha):
        for k, b in enumerate(beta):
            if a * b:
                out *= d[i][k] ** (a * b)
    return out


# ---------------------------------------------------------------------------
# Tensor ring
# ---------------------------------------------------------------------------

def tensor_ring(left: RingSpec, right: RingSpec) -> tuple[RingSpec, tuple[str, ...], tuple[str, ...], dict]:
    """Disjoint union of the variables; shared names become name_L / name_R."""
    shared = set(left.variables) & set(right.variables)
    renames: dict[str, dict[str, str]] = {"left": {}, "right": {}}

    def rename(names: Sequence[str], suffix: str, side: str) -> tuple[str, ...]:
        out = []
        for name in names:
            if name in shared:
                new = f"{name}_{suffix}"
                renames[side][name] = new
                out.append(new)
            else:
                out.append(name)
        return tuple(out)

    left_names = rename(left.variables, "L", "left")
    right_names = rename(right.variables, "R", "right")
    names = left_names + right_names
    if len(set(names)) != len(names):
        raise RingError(f"variable names still collide after renaming: {', '.join(names)}")
    ring = RingSpec(names, left.invertible + right.invertible, left.order)
    if renames["left"]:
        logger.info("tensor ring renames %s", renames)
    return ring, left_names, right_names, renames


# ---------------------------------------------------------------------------
# Result
# ---------------------------------------------------------------------------

@dataclass
class TensorProduct:
    datum: BellRogalskiDatum
    left: BellRogalskiDatum
    right: BellRogalskiDatum
    left_map: RingMap
    right_map: RingMap
    twist: TwistSpec
    renames: dict
    checks: list[CheckEntry] = field(default_factory=list)

    @property
    def m(self) -> int:
        return self.left.n

    def left_degree(self, alpha: Sequence[int]) -> Degree:
        return tuple(alpha) + (0,) * self.right.n

    def right_degree(self, beta: Sequence[int]) -> Degree:
        return (0,) * self.m + tuple(beta)

    def embed_left(self, x: GradedElement) -> GradedElement:
        """x (x) 1."""
        parts = {self.left_degree(a): self.left_map.apply(c) for a, c in x.parts.items()}
        return GradedElement(self.datum, parts, ambient=x.ambient, verify=False)

    def embed_right(self, y: GradedElement) -> GradedElement:
        """1 (x) y."""
        parts = {self.right_degree(b): self.right_map.apply(c) for b, c in y.parts.items()}
        return GradedElement(self.datum, parts, ambient=y.ambient, verify=False)

    def embed_left_ideal(self, I: Ideal) -> Ideal:
        return self.left_map.apply_ideal(I)

    def embed_right_ideal(self, I: Ideal) -> Ideal:
        return self.right_map.apply_ideal(I)

    def to_dict(self) -> dict:
        return {
            "datum": self.datum.to_dict(),
            "renames": self.renames,
            "lifts": "explicit" if self.twist.lifts is not None else "trivial",
            "checks": [c.to_dict() for c in self.checks],
        }


def _trivial_lifts(
    ring: RingSpec, left: BellRogalskiDatum, right: BellRogalskiDatum
) -> tuple[Automorphism, ...]:
    """sigma_i (x) id and id (x) tau_k."""
    nl = left.ring.nvars
    out = []
    for s in left.sigma:
        perm = s.perm + tuple(range(nl, ring.nvars))
        scale = s.scale + (Fraction(1),) * right.ring.nvars
        shift = s.shift + (Fraction(0),) * right.ring.nvars
        out.append(Automorphism(ring, perm, scale, shift))
    for t in right.sigma:
        perm = tuple(range(nl)) + tuple(nl + k for k in t.perm)
        scale = (Fraction(1),) * nl + t.scale
        shift = (Fraction(0),) * nl + t.shift
        out.append(Automorphism(ring, perm, scale, shift))
    return tuple(out)


def _block_matrix(p: Matrix, q: Matrix, d: Matrix) -> Matrix:
    m, n = len(p), len(q)
    rows = []
    for i in range(m):
        rows.append(tuple(p[i]) + tuple(d[i]))
    for k in range(n):
        rows.append(tuple(1 / d[i][k] for i in range(m)) + tuple(q[k]))
    return tuple(rows)


# ---------------------------------------------------------------------------
# Lift hypotheses
# ---------------------------------------------------------------------------

def _check_lifts(
    lifts: Sequence[Automorphism],
    left: BellRogalskiDatum,
    right: BellRogalskiDatum,
    left_map: RingMap,
    right_map: RingMap,
    window: int,
) -> list[CheckEntry]:
    """Raises HypothesisError on the first failing hypothesis; returns the passed entries."""
    m = left.n
    entries: list[CheckEntry] = []

    for i, k in itertools.combinations(range(len(lifts)), 2):
        if not lifts[i].commutes_with(lifts[k]):
            raise HypothesisError("lifted automorphisms do not commute", witness=f"pi_{i + 1}, pi_{k + 1}")
    entries.append(CheckEntry("lifts commute pairwise", True))

    for i, lift in enumerate(lifts):
        own, own_map, local = (left, left_map, i) if i < m else (right, right_map, i - m)
        base = own.sigma[local]
        for x in own.ring.gens():
            if lift.apply(own_map.apply(x)) != own_map.apply(base.apply(x)):
                raise HypothesisError(
                    f"pi_{i + 1} does not restrict to its factor automorphism",
                    witness=f"pi_{i + 1}({own_map.apply(x)}) = {lift.apply(own_map.apply(x))}",
                )
    entries.append(CheckEntry("lifts restrict to the factor automorphisms", True))

    for i, lift in enumerate(lifts):
        partner, partner_map = (right, right_map) if i < m else (left, left_map)
        for beta in degree_window(partner.n, window):
            I = partner_map.apply_ideal(partner.canonical_ideal(beta))
            for g in I.generators:
                if not I.contains(lift.apply(g)):
                    raise HypothesisError(
                        f"pi_{i + 1} does not preserve the partner ideal of degree {list(beta)}",
                        witness=f"pi_{i + 1}({g}) = {lift.apply(g)}",
                    )
    entries.append(CheckEntry(f"lifts preserve partner canonical ideals, |degree_i| <= {window}", True))
    return entries


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def twisted_tensor(
    left: BellRogalskiDatum,
    right: BellRogalskiDatum,
    twist: Optional[TwistSpec] = None,
    window: int = DEFAULT_TENSOR_WINDOW,
    verify: bool = True,
) -> TensorProduct:
    m, n = left.n, right.n
    twist = twist or TwistSpec.untwisted(m, n)
    if len(twist.d) != m or any(len(row) != n for row in twist.d):
        raise DatumError(f"d must be a {m}x{n} matrix")
    for label, datum in (("left", left), ("right", right)):
        failed = [e for e in validate(datum) if not e.passed]
        if failed:
            raise HypothesisError(f"{label} factor is not a valid datum: {failed[0].name}", witness=failed[0].detail)

    ring, left_names, right_names, renames = tensor_ring(left.ring, right.ring)
    left_map = RingMap.inclusion(left.ring, ring, left_names)
    right_map = RingMap.inclusion(right.ring, ring, right_names)

    entries: list[CheckEntry] = []
    if twist.lifts is None:
        lifts = _trivial_lifts(ring, left, right)
        entries.append(CheckEntry("lifts", True, "trivial: sigma_i (x) id, id (x) tau_k"))
    else:
        if len(twist.lifts) != m + n:
            raise DatumError(f"{m + n} lifted automorphisms are required, got {len(twist.lifts)}")
        lifts = tuple(Automorphism.from_images(ring, images) for images in twist.lifts)
        entries.extend(_check_lifts(lifts, left, right, left_map, right_map, window))

    H = tuple(left_map.apply_ideal(I) for I in left.H) + tuple(right_map.apply_ideal(I) for I in right.H)
    J = tuple(left_map.apply_ideal(I) for I in left.J) + tuple(right_map.apply_ideal(I) for I in right.J)
    name = f"{left.name or 'B'} (x) {right.name or 'D'}"
    W = BellRogalskiDatum(ring, lifts, _block_matrix(left.p, right.p, twist.d), H, J, name=name)

    tp = TensorProduct(W, left, right, left_map, right_map, twist, renames, entries)
    if verify:
        tp.checks.extend(verify_tensor(tp, window))
    logger.info("twisted_tensor rank %d + %d: %d checks", m, n, len(tp.checks))
    return tp


# ---------------------------------------------------------------------------
# Twisting map
# ---------------------------------------------------------------------------

def twisting_map(
    tp: TensorProduct, y: GradedElement, x: GradedElement
) -> tuple[GradedElement, GradedElement]:
    """
    tau(y (x) x) = x' (x) y' with (1 (x) y)(x (x) 1) = (x' (x) 1)(1 (x) y') in W.

    y is an embedded right piece b t^beta, x an embedded left piece a t^alpha;
    x' = d_(alpha,beta) pi^beta(a) t^alpha and y' = pi^-alpha(b) t^beta.
    """
    W = tp.datum
    a_deg, a = _single(x)
    b_deg, b = _single(y)
    c = commutation_scalar(W.p, a_deg, b_deg)
    x_new = GradedElement(W, {a_deg: W.sigma_power(b_deg).apply(a).scale(c)}, ambient=True, verify=False)
    back = W.sigma_power(tuple(-v for v in a_deg))
    y_new = GradedElement(W, {b_deg: back.apply(b)}, ambient=True, verify=False)
    return x_new, y_new


def _single(x: GradedElement) -> tuple[Degree, Polynomial]:
    if not x.is_homogeneous():
        raise DatumError("twisting map is defined on homogeneous pieces", witness=x.to_text())
    alpha = x.degree()
    return alpha, x.component(alpha)


def _mul(x: GradedElement, y: GradedElement) -> GradedElement:
    return multiply(x, y, verify=False)


def tau_associativity_defect(
    tp: TensorProduct,
    x1: GradedElement,
    x2: GradedElement,
    y1: GradedElement,
    y2: GradedElement,
) -> list[str]:
    """
    Failures of

        tau(y1 y2 (x) x1) = (1 (x) m)(tau (x) 1)(1 (x) tau)(y1 (x) y2 (x) x1)
        tau(y1 (x) x1 x2) = (m (x) 1)(1 (x) tau)(tau (x) 1)(y1 (x) x1 (x) x2)

    compared factor by factor, plus the product identity y x = x' y' for each pair.
    """
    bad = []

    xa, ya = twisting_map(tp, _mul(y1, y2), x1)
    x_mid, y2_new = twisting_map(tp, y2, x1)
    xb, y1_new = twisting_map(tp, y1, x_mid)
    if xa != xb or ya != _mul(y1_new, y2_new):
        bad.append(f"right factor product: tau({y1.to_text()} * {y2.to_text()}, {x1.to_text()})")

    xc, yc = twisting_map(tp, y1, _mul(x1, x2))
    x1_new, y_mid = twisting_map(tp, y1, x1)
    x2_new, y_end = twisting_map(tp, y_mid, x2)
    if xc != _mul(x1_new, x2_new) or yc != y_end:
        bad.append(f"left factor product: tau({y1.to_text()}, {x1.to_text()} * {x2.to_text()})")

    for y, x in ((y1, x1), (y2, x2)):
        x_new, y_new = twisting_map(tp, y, x)
        if _mul(y, x) != _mul(x_new, y_new):
            bad.append(f"product identity for {y.to_text()}, {x.to_text()}")
    return bad


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

def verify_tensor(tp: TensorProduct, window: int = DEFAULT_TENSOR_WINDOW) -> list[CheckEntry]:
    W, left, right = tp.datum, tp.left, tp.right
    entries = [CheckEntry(f"W: {e.name}", e.passed, e.detail) for e in validate(W)]

    bad = []
    for alpha in degree_window(left.n, window):
        I = tp.embed_left_ideal(left.canonical_ideal(alpha))
        for beta in degree_window(right.n, window):
            K = tp.embed_right_ideal(right.canonical_ideal(beta))
            if not ideal_equal(W.canonical_ideal(alpha + beta), ideal_product(I, K)):
                bad.append(f"{list(alpha)}|{list(beta)}")
    entries.append(CheckEntry(
        f"W_(alpha,beta) = I^(alpha) (x) I^(beta), |degree_i| <= {window}", not bad, ", ".join(bad[:5])
    ))

    left_gens = [tp.embed_left(g) for g in generators(left) if any(g.degree())]
    right_gens = [tp.embed_right(g) for g in generators(right) if any(g.degree())]
    bad = []
    for x in left_gens:
        for y in right_gens:
            x_new, y_new = twisting_map(tp, y, x)
            if _mul(y, x) != _mul(x_new, y_new):
                bad.append(f"({y.to_text()}) ({x.to_text()})")
    entries.append(CheckEntry("embedded generators obey the twisting map", not bad, "; ".join(bad[:3])))

    if tp.twist.lifts is None:
        bad = []
        for x in left_gens:
            for y in right_gens:
                c = d_scalar(tp.twist.d, x.degree()[: tp.m], y.degree()[tp.m:])
                if _mul(y, x) != _mul(x, y).scale(c):
                    bad.append(f"({y.to_text()}) ({x.to_text()})")
        entries.append(CheckEntry(
            "(1 (x) y)(x (x) 1) = d_(alpha,beta) (x (x) 1)(1 (x) y)", not bad, "; ".join(bad[:3])
        ))
    logger.debug("verify_tensor: %s", "ok" if checks_passed(entries) else "failures")
    return entries
