"""
core/morphisms.py

Maps between Bell-Rogalski algebras and invariants computed from a datum:
graded morphisms induced by ring maps, invariant subalgebras under finite
order graded automorphisms, and GK dimension.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .automorphism import Automorphism, RingMap, is_locally_algebraic
from .config import CheckEntry
from .datum import (
    BellRogalskiDatum,
    GradedElement,
    degree_window,
    generators,
    multiply,
    to_matrix,
)
from .errors import (
    ConversionError,
    HypothesisError,
    PreconditionError,
    RingMismatchError,
    UnsupportedError,
)
from .groebner import Ideal, ideal_product_all
from .poly import Polynomial, RingSpec, format_fraction, to_fraction
from .tgwa import TgwaDatum, from_tgwa

logger = logging.getLogger(__name__)


def _gamma_power(gamma: Sequence[Fraction], alpha: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for g, a in zip(gamma, alpha):
        out *= g ** a
    return out


# ---------------------------------------------------------------------------
# Induced morphisms
# ---------------------------------------------------------------------------

@dataclass
class InducedMorphism:
    """Phi_gamma(a t^alpha) = gamma^alpha phi(a) t'^alpha."""
    source: BellRogalskiDatum
    target: BellRogalskiDatum
    phi: RingMap
    gamma: tuple[Fraction, ...]
    checks: list[CheckEntry] = field(default_factory=list)

    def apply(self, x: GradedElement, verify: bool = True) -> GradedElement:
        if x.datum != self.source:
            raise RingMismatchError("element is not in the source algebra")
        parts = {
            alpha: self.phi.apply(c).scale(_gamma_power(self.gamma, alpha))
            for alpha, c in x.parts.items()
        }
        return GradedElement(self.target, parts, ambient=x.ambient, verify=verify and not x.ambient)

    def to_dict(self) -> dict:
        return {
            "phi": self.phi.to_dict(),
            "gamma": [format_fraction(g) for g in self.gamma],
            "checks": [c.to_dict() for c in self.checks],
        }


def _require_contained(phi: RingMap, I: Ideal, K: Ideal, label: str) -> None:
    for g in I.generators:
        image = phi.apply(g)
        if not K.contains(image):
            raise HypothesisError(f"phi({label}) is not contained in {label}'", witness=f"phi({g}) = {image}")


def induced_morphism(
    source: BellRogalskiDatum,
    target: BellRogalskiDatum,
    phi: RingMap,
    gamma: Optional[Sequence[object]] = None,
) -> InducedMorphism:
    """Raises HypothesisError naming the first failed hypothesis."""
    n = source.n
    if target.n != n:
        raise HypothesisError(f"ranks differ: {n} vs {target.n}")
    if phi.source != source.ring or phi.target != target.ring:
        raise RingMismatchError("phi must map the source base ring to the target base ring")
    gamma = tuple(to_fraction(g) for g in (gamma if gamma is not None else [1] * n))
    if len(gamma) != n or any(g == 0 for g in gamma):
        raise HypothesisError(f"gamma needs {n} nonzero scalars", witness=str([str(g) for g in gamma]))

    for i in range(n):
        _require_contained(phi, source.H[i], target.H[i], f"H_{i + 1}")
        _require_contained(phi, source.J[i], target.J[i], f"J_{i + 1}")
        lhs = phi.after(source.sigma[i])
        rhs = phi.before(target.sigma[i])
        for name, f, g in zip(source.ring.variables, lhs.images, rhs.images):
            if f != g:
                raise HypothesisError(
                    f"phi sigma_{i + 1} != sigma_{i + 1}' phi",
                    witness=f"on {name}: {f} vs {g}",
                )
    if source.p != target.p:
        raise HypothesisError("p and p' differ", witness=f"{source.to_dict()['p']} vs {target.to_dict()['p']}")

    entries = [
        CheckEntry("phi(H_i) in H_i', phi(J_i) in J_i'", True),
        CheckEntry("phi sigma_i = sigma_i' phi", True),
        CheckEntry("p = p'", True),
    ]
    morphism = InducedMorphism(source, target, phi, gamma, entries)

    gens = generators(source)
    bad = []
    for x, y in itertools.product(gens, repeat=2):
        lhs = morphism.apply(multiply(x, y, verify=False), verify=False)
        rhs = multiply(morphism.apply(x, verify=False), morphism.apply(y, verify=False), verify=False)
        if lhs != rhs:
            bad.append(f"{x.to_text()} * {y.to_text()}")
    entries.append(CheckEntry("multiplicative on generator pairs", not bad, "; ".join(bad[:3])))
    bad = [x.to_text() for x in gens
           if not all(target.canonical_ideal(a).contains(c) for a, c in morphism.apply(x, verify=False).parts.items())]
    entries.append(CheckEntry("generators map into B'", not bad, "; ".join(bad[:3])))
    return morphism


# ---------------------------------------------------------------------------
# Fixed rings
# ---------------------------------------------------------------------------

@dataclass
class FixedRing:
    datum: BellRogalskiDatum
    embedding: RingMap                  # new base ring -> R
    orders: tuple[int, ...]             # ord(phi), m_1, ..., m_n
    checks: list[CheckEntry] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "datum": self.datum.to_dict(),
            "embedding": self.embedding.to_dict(),
            "orders": list(self.orders),
            "checks": [c.to_dict() for c in self.checks],
        }


def _order_of_sign(c: Fraction, label: str) -> int:
    if c == 1:
        return 1
    if c == -1:
        return 2
    raise UnsupportedError(f"{label} = {c} has no finite order 1 or 2 over Q")


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "_"
    taken.add(name)
    return name


class _InvariantPresentation:
    """R^phi for phi negating the variables in `negated`, as a polynomial/Laurent ring."""

    def __init__(self, ring: RingSpec, negated: Sequence[int]) -> None:
        self.ring = ring
        self.negated = tuple(negated)
        laurent = [j for j in self.negated if ring.invertible[j]]
        plain = [j for j in self.negated if not ring.invertible[j]]
        if laurent:
            self.pivot: Optional[int] = laurent[0]
        elif len(plain) == 1:
            self.pivot = None
        else:
            raise UnsupportedError(
                "invariant ring is not a polynomial ring",
                witness="negated variables " + ", ".join(ring.variables[j] for j in plain),
            )
        taken = set(ring.variables)
        names, images = [], []
        u0 = ring.var(self.pivot) if self.pivot is not None else None
        for j, name in enumerate(ring.variables):
            x = ring.var(j)
            if j not in self.negated:
                names.append(name)
                images.append(x)
            elif u0 is None or j == self.pivot:
                names.append(_fresh(f"{name}2", taken))
                images.append(x * x)
            else:
                names.append(_fresh(f"{name}_{ring.variables[self.pivot]}", taken))
                images.append(x * u0 ** -1)
        # the pivot square stays invertible; quotients keep their own flag
        self.target = RingSpec(tuple(names), ring.invertible, ring.order)
        self.embedding = RingMap(self.target, ring, tuple(images))
        self.odd = u0 if u0 is not None else ring.var(plain[0])

    def parity(self, f: Polynomial) -> int:
        """0 for invariant, 1 for anti-invariant; ConversionError for mixed elements."""
        parities = {sum(e[j] for j in self.negated) % 2 for e in f.terms}
        if len(parities) > 1:
            raise ConversionError("element is not an eigenvector of phi", witness=f.to_text())
        return parities.pop() if parities else 0

    def rewrite(self, f: Polynomial) -> Polynomial:
        """The preimage of an invariant element under the embedding."""
        terms = {}
        for e, c in f.terms.items():
            new = list(e)
            if self.pivot is None:
                j = self.negated[0]
                if e[j] % 2:
                    raise ConversionError("element is not phi-invariant", witness=f.to_text())
                new[j] = e[j] // 2
            else:
                total = sum(e[j] for j in self.negated)
                if total % 2:
                    raise ConversionError("element is not phi-invariant", witness=f.to_text())
                new[self.pivot] = total // 2
            terms[tuple(new)] = c
        return Polynomial(self.target, terms)

    def contract(self, I: Ideal) -> Ideal:
        """I intersected with R^phi, for I generated by phi-eigenvectors."""
        gens = []
        for g in I.generators:
            gens.append(self.rewrite(g if self.parity(g) == 0 else g * self.odd))
        return Ideal(self.target, gens)

    def restrict(self, sigma: Automorphism) -> Automorphism:
        """sigma on R^phi; sigma is diagonal and fixes no shift on negated variables."""
        if not sigma.is_diagonal():
            raise UnsupportedError("fixed rings need diagonal automorphisms", witness=str(sigma))
        scale, shift = [], []
        for j, image in enumerate(self.embedding.images):
            if j not in self.negated:
                c, d = sigma.coordinate_rule(j)
                scale.append(c)
                shift.append(d)
                continue
            ratio = sigma.apply(image).exact_divide(image)
            scale.append(ratio.constant_value())
            shift.append(Fraction(0))
        n = self.target.nvars
        return Automorphism(self.target, tuple(range(n)), tuple(scale), tuple(shift))


def _axis_product(datum: BellRogalskiDatum, ideals: Sequence[Ideal], i: int, m: int) -> Ideal:
    """X sigma_i(X) ... sigma_i^(m-1)(X)."""
    return ideal_product_all(
        datum.ring, [datum.sigma[i].power(k).apply_ideal(ideals[i]) for k in range(m)]
    ).compact()


def fixed_ring(
    datum: BellRogalskiDatum,
    phi: Optional[Automorphism] = None,
    gamma: Optional[Sequence[object]] = None,
    window: int = 2,
) -> FixedRing:
    """
    B^<Phi_gamma> as a datum over R^phi with s_i = t_i^m_i, tau_i = sigma_i^m_i and
    q_ik = p_ik^(m_i m_k). The H-slot holds H_i sigma_i(H_i) ... sigma_i^(m_i-1)(H_i),
    whose tau_i^-1 image is the degree -m_i coefficient ideal.
    """
    n = datum.n
    ring = datum.ring
    phi = phi or Automorphism.identity(ring)
    gamma = tuple(to_fraction(g) for g in (gamma if gamma is not None else [1] * n))
    if len(gamma) != n:
        raise PreconditionError(f"gamma needs {n} scalars")
    if phi.ring != ring:
        raise RingMismatchError("phi must be an automorphism of the base ring")

    if not phi.is_diagonal() or any(d != 0 for d in phi.shift) or any(c not in (1, -1) for c in phi.scale):
        raise UnsupportedError("phi must negate a set of variables and fix the rest", witness=str(phi))
    negated = [j for j, c in enumerate(phi.scale) if c == -1]
    orders = (2 if negated else 1,) + tuple(_order_of_sign(g, f"gamma_{i + 1}") for i, g in enumerate(gamma))
    if sum(1 for o in orders if o == 2) > 1:
        raise PreconditionError(
            "orders of phi and gamma_i must be pairwise coprime", witness=str(list(orders))
        )
    for i, s in enumerate(datum.sigma):
        if not phi.commutes_with(s):
            raise HypothesisError(f"phi does not commute with sigma_{i + 1}", witness=str(s))
    for label, ideals in (("H", datum.H), ("J", datum.J)):
        for i, I in enumerate(ideals):
            for g in I.generators:
                if not I.contains(phi.apply(g)):
                    raise HypothesisError(f"phi({label}_{i + 1}) is not in {label}_{i + 1}", witness=g.to_text())

    entries = [
        CheckEntry("orders pairwise coprime", True, ", ".join(map(str, orders))),
        CheckEntry("phi commutes with every sigma_i", True),
        CheckEntry("phi(H_i) in H_i, phi(J_i) in J_i", True),
    ]
    m = orders[1:]
    if not negated:
        embedding = RingMap.inclusion(ring, ring)
        sigma = tuple(s.power(mi) for s, mi in zip(datum.sigma, m))
        H = tuple(_axis_product(datum, datum.H, i, m[i]) if m[i] > 1 else datum.H[i] for i in range(n))
        J = tuple(_axis_product(datum, datum.J, i, m[i]) if m[i] > 1 else datum.J[i] for i in range(n))
        target_ring = ring
    else:
        presentation = _InvariantPresentation(ring, negated)
        embedding = presentation.embedding
        target_ring = presentation.target
        sigma = tuple(presentation.restrict(s) for s in datum.sigma)
        H = tuple(presentation.contract(I) for I in datum.H)
        J = tuple(presentation.contract(I) for I in datum.J)
    q = to_matrix([[datum.p[i][k] ** (m[i] * m[k]) for k in range(n)] for i in range(n)])
    name = f"{datum.name or 'B'} fixed"
    fixed = BellRogalskiDatum(target_ring, sigma, q, H, J, name=name, assumptions=datum.assumptions)
    entries.extend(_verify_fixed(datum, fixed, embedding, m, window))
    logger.info("fixed_ring orders %s: %d checks", orders, len(entries))
    return FixedRing(fixed, embedding, orders, entries)


def _verify_fixed(
    datum: BellRogalskiDatum,
    fixed: BellRogalskiDatum,
    embedding: RingMap,
    m: Sequence[int],
    window: int,
) -> list[CheckEntry]:
    entries = []
    bad = []
    for i, t in enumerate(fixed.sigma):
        lifted = datum.sigma[i].power(m[i])
        if embedding.after(t).images != embedding.before(lifted).images:
            bad.append(f"tau_{i + 1}")
    entries.append(CheckEntry("tau_i restricts sigma_i^m_i to the invariant ring", not bad, ", ".join(bad)))

    bad = []
    same_ring = embedding.source == embedding.target and all(
        f == embedding.target.var(j) for j, f in enumerate(embedding.images)
    )
    for beta in degree_window(fixed.n, window):
        alpha = tuple(b * mi for b, mi in zip(beta, m))
        image = embedding.apply_ideal(fixed.canonical_ideal(beta))
        full = datum.canonical_ideal(alpha)
        ok = full.contains_ideal(image)
        if same_ring:
            ok = ok and image.contains_ideal(full)
        if not ok:
            bad.append(str(list(beta)))
    relation = "=" if same_ring else "in"
    entries.append(CheckEntry(
        f"fixed components {relation} I^(m beta), |beta_i| <= {window}", not bad, ", ".join(bad)
    ))
    return entries


# ---------------------------------------------------------------------------
# GK dimension
# ---------------------------------------------------------------------------

@dataclass
class GkDimension:
    value: Optional[int]
    lower: int
    upper: int
    checks: list[CheckEntry] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "gk_dimension": self.value,
            "bounds": [self.lower, self.upper],
            "checks": [c.to_dict() for c in self.checks],
        }


def gk_dimension(datum: BellRogalskiDatum) -> GkDimension:
    """GKdim R + n when every sigma_i is locally algebraic and every H_i, J_i is nonzero."""
    base = datum.ring.nvars
    entries = [
        CheckEntry("R commutative domain", True, f"{datum.ring.describe()} (automatic)"),
        CheckEntry("GKdim R", True, f"{base} (number of variables)"),
    ]
    local = True
    for i, s in enumerate(datum.sigma):
        ok, why = is_locally_algebraic(s)
        local = local and ok
        entries.append(CheckEntry(f"sigma_{i + 1} locally algebraic", ok, why))
    zero = [f"{label}_{i + 1}" for label, ideals in (("H", datum.H), ("J", datum.J))
            for i, I in enumerate(ideals) if I.is_zero()]
    entries.append(CheckEntry(
        "J_i contains a normal non-zero-divisor", not zero,
        ", ".join(zero) if zero else "every nonzero element is normal in a commutative domain",
    ))
    value = base + datum.n if local and not zero else None
    logger.debug("gk_dimension %s: %s", datum.name or "datum", value)
    return GkDimension(value, base, base + datum.n, entries)


def gk_dimension_tgwa(t: TgwaDatum) -> GkDimension:
    return gk_dimension(from_tgwa(t))
