"""
core/weights.py

Simple weight modules on torsion-free orbits of rational points.

Orbit coordinates are offsets alpha in Z^n from a base point m, standing for
sigma^alpha(m).  A point sigma^alpha(m) is an i-break iff sigma_i^(alpha_i + 1)(m)
lies on V(H_i J_i), so the breaks along axis i form a set B_i of integers and
the classes of i-breaks are exactly its elements.  With

    hi_i = min{a in B_i : a >= 0},   lo_i = max{a in B_i : a < 0}

(infinite when absent) the support of the simple module through m is the box
lo_i < alpha_i <= hi_i.
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .automorphism import WeightPoint, orbit_point, solve_orbit_exponent
from .config import DEFAULT_DEGREE_BOUND, DEFAULT_MAX_WORKERS, DEFAULT_WINDOW, CheckEntry
from .datum import (
    BellRogalskiDatum,
    Degree,
    GradedElement,
    degree_window,
    generators,
    lambda_scalar,
    multiply,
    unit_vector,
)
from .errors import (
    PositiveDimensionalError,
    PreconditionError,
    SearchBoundError,
    UnsupportedError,
)
from .groebner import Ideal, integer_roots, rational_points
from .lattice import relation_lattice, prime_exponents
from .poly import Polynomial, RingSpec

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Torsion
# ---------------------------------------------------------------------------

@dataclass
class TorsionResult:
    torsion_free: bool
    stabilizer: list[tuple[int, ...]]
    exact: bool = True
    caveat: str = ""

    def to_dict(self) -> dict:
        d: dict = {
            "torsion_free": self.torsion_free,
            "stabilizer_basis": [list(v) for v in self.stabilizer],
            "exact": self.exact,
        }
        if self.caveat:
            d["caveat"] = self.caveat
        return d


def is_torsion_free(datum: BellRogalskiDatum, pt: WeightPoint, window: int = DEFAULT_WINDOW) -> TorsionResult:
    """Stabilizer lattice of pt in Z^n, exact for diagonal automorphism tuples."""
    n = datum.n
    if not all(s.is_diagonal() for s in datum.sigma):
        logger.warning("permuting automorphisms: stabilizer searched on the window [-%d, %d]", window, window)
        found = [
            alpha for alpha in degree_window(n, window)
            if any(alpha) and orbit_point(datum.sigma, pt, alpha) == pt
        ]
        return TorsionResult(
            not found, found[:1], exact=False,
            caveat=f"stabilizer searched on [-{window}, {window}]^{n} only",
        )

    equations: list[list[Fraction]] = []
    parities: list[list[int]] = []
    for j in range(datum.ring.nvars):
        rules = [s.coordinate_rule(j) for s in datum.sigma]
        a = pt.coords[j]
        if all(c == 1 for c, _ in rules):
            # translations move the coordinate by -sum alpha_i d_ij
            equations.append([d for _, d in rules])
            continue
        c0, d0 = next((c, d) for c, d in rules if c != 1)
        center = d0 / (1 - c0)
        if a == center:
            continue
        factored = [prime_exponents(c) for c, _ in rules]
        for prime in sorted({q for f in factored for q in f}):
            equations.append([Fraction(f.get(prime, 0)) for f in factored])
        signs = [1 if c < 0 else 0 for c, _ in rules]
        if any(signs):
            parities.append(signs)
    lattice = relation_lattice(equations, parities, n)
    return TorsionResult(not lattice, lattice)


# ---------------------------------------------------------------------------
# Breaks
# ---------------------------------------------------------------------------

def is_i_break(datum: BellRogalskiDatum, pt: WeightPoint, i: int) -> bool:
    """H_i J_i vanishes at sigma_i(pt)."""
    q = datum.sigma[i].act_point(pt)
    return datum.H[i].vanishes_at(q.coords) or datum.J[i].vanishes_at(q.coords)


@dataclass
class AxisBreaks:
    """Break offsets B_i along one axis; `everything` marks B_i = Z."""
    axis: int
    values: list[int]
    everything: bool = False
    exact: bool = True
    method: str = ""
    caveat: str = ""

    def classes(self, window: int) -> list[Optional[int]]:
        """The ordered set of break classes with the infinity class appended (None)."""
        if self.everything:
            return list(range(-window, window + 1))
        if not self.values:
            return [None]
        return sorted(self.values) + [None]

    def boxes(self, window: int) -> list[tuple[Optional[int], Optional[int]]]:
        """(predecessor, class) for every class; None is -inf on the left and inf on the right."""
        if self.everything:
            return [(c - 1, c) for c in self.classes(window)]
        classes = self.classes(window)
        return [(classes[k - 1] if k > 0 else None, c) for k, c in enumerate(classes)]

    def bounds(self, a: int) -> tuple[Optional[int], Optional[int]]:
        """(lo, hi) of the box through offset a: lo < a <= hi; None is infinite."""
        if self.everything:
            return a - 1, a
        hi = min((b for b in self.values if b >= a), default=None)
        lo = max((b for b in self.values if b < a), default=None)
        return lo, hi

    def to_dict(self, base: WeightPoint, datum: BellRogalskiDatum, window: int) -> dict:
        out = []
        for prev, c in self.boxes(window):
            entry: dict = {
                "class": "inf" if c is None else c,
                "predecessor": "-inf" if prev is None else prev,
            }
            if c is not None:
                entry["representative"] = orbit_point(datum.sigma, base, unit_vector(datum.n, self.axis, c)).to_text()
            out.append(entry)
        d: dict = {
            "axis": self.axis + 1,
            "breaks": "all" if self.everything else self.values,
            "exact": self.exact,
            "method": self.method,
            "classes": out,
        }
        if self.caveat:
            d["caveat"] = self.caveat
        return d


def _moving_coordinates(datum: BellRogalskiDatum, i: int) -> list[int]:
    s = datum.sigma[i]
    return [j for j in range(datum.ring.nvars) if (s.perm[j], s.scale[j], s.shift[j]) != (j, 1, 0)]


def _breaks_by_translation(datum: BellRogalskiDatum, pt: WeightPoint, i: int) -> AxisBreaks:
    """Every moved coordinate translates: the orbit is a line, parametrised by the offset a."""
    s = datum.sigma[i]
    line = RingSpec.polynomial("a")
    a = line.var(0)
    images = []
    for j in range(datum.ring.nvars):
        # sigma_i^(a+1)(pt)_j = pt_j - (a + 1) d_j
        images.append((a + 1).scale(-s.shift[j]) + pt.coords[j])
    found: set[int] = set()
    everything = False
    for I in (datum.H[i], datum.J[i]):
        restricted = Ideal(line, [g.substitute(images, line) for g in I.generators])
        if restricted.is_zero():
            everything = True
            break
        gcd = restricted.principal_generator()
        found.update(integer_roots(gcd, 0))
    if everything:
        return AxisBreaks(i, [], everything=True, method="translation")
    return AxisBreaks(i, sorted(found), method="translation")


def _breaks_by_points(datum: BellRogalskiDatum, pt: WeightPoint, i: int) -> AxisBreaks:
    """Points of V(H_i J_i) on the slice of coordinates fixed by sigma_i, then orbit equations."""
    s = datum.sigma[i]
    moving = set(_moving_coordinates(datum, i))
    ring = datum.ring
    slice_gens = [ring.var(j) - pt.coords[j] for j in range(ring.nvars) if j not in moving]
    found: set[int] = set()
    for I in (datum.H[i], datum.J[i]):
        points = rational_points(Ideal(ring, list(I.generators) + slice_gens))
        for q in points:
            ks = solve_orbit_exponent(s, pt, WeightPoint(ring, q))
            if ks.empty:
                continue
            if ks.step != 0:
                raise PreconditionError(
                    f"sigma_{i + 1} returns {pt} to a break periodically; the orbit is not torsion-free",
                    witness=ks.describe(),
                )
            found.add(ks.start - 1)
    return AxisBreaks(i, sorted(found), method="zero-dimensional")


def _breaks_by_window(datum: BellRogalskiDatum, pt: WeightPoint, i: int, window: int, reason: str) -> AxisBreaks:
    logger.warning("axis %d: break scan limited to [-%d, %d] (%s)", i + 1, window, window, reason)
    n = datum.n
    values = [
        a for a in range(-window, window + 1)
        if is_i_break(datum, orbit_point(datum.sigma, pt, unit_vector(n, i, a)), i)
    ]
    return AxisBreaks(
        i, values, exact=False, method="window",
        caveat=f"{reason}; breaks listed on [-{window}, {window}] only",
    )


def axis_breaks(datum: BellRogalskiDatum, pt: WeightPoint, i: int, window: int = DEFAULT_WINDOW) -> AxisBreaks:
    if datum.H[i].is_unit() and datum.J[i].is_unit():
        return AxisBreaks(i, [], method="empty locus")
    s = datum.sigma[i]
    if not s.is_diagonal():
        return _breaks_by_window(datum, pt, i, window, "permuting automorphism")
    moving = _moving_coordinates(datum, i)
    if not moving:
        raise PreconditionError(f"sigma_{i + 1} is the identity; the orbit is not torsion-free")
    if all(s.scale[j] == 1 for j in moving):
        logger.debug("axis %d: translation parametrisation", i + 1)
        return _breaks_by_translation(datum, pt, i)
    try:
        logger.debug("axis %d: zero-dimensional break locus", i + 1)
        return _breaks_by_points(datum, pt, i)
    except PositiveDimensionalError:
        return _breaks_by_window(datum, pt, i, window, "positive-dimensional break locus")
    except UnsupportedError as exc:
        return _breaks_by_window(datum, pt, i, window, str(exc))


def break_classes(
    datum: BellRogalskiDatum,
    pt: WeightPoint,
    window: int = DEFAULT_WINDOW,
    max_workers: int = DEFAULT_MAX_WORKERS,
) -> list[AxisBreaks]:
    """Per-axis breaks of the orbit of pt, one scan per axis on a thread pool."""
    with ThreadPoolExecutor(max_workers=max(1, min(max_workers, datum.n))) as ex:
        return list(ex.map(lambda i: axis_breaks(datum, pt, i, window), range(datum.n)))


# ---------------------------------------------------------------------------
# G_m
# ---------------------------------------------------------------------------

def _in_box(alpha: Sequence[int], box: Sequence[tuple[Optional[int], Optional[int]]]) -> bool:
    return all(
        (lo is None or a > lo) and (hi is None or a <= hi)
        for a, (lo, hi) in zip(alpha, box)
    )


def g_box(breaks: Sequence[AxisBreaks]) -> list[tuple[Optional[int], Optional[int]]]:
    return [b.bounds(0) for b in breaks]


def g_set(
    datum: BellRogalskiDatum,
    pt: WeightPoint,
    window: int = DEFAULT_WINDOW,
    breaks: Optional[Sequence[AxisBreaks]] = None,
) -> list[Degree]:
    """{alpha in [-window, window]^n : B_-alpha B_alpha not in m}, by the box rule."""
    breaks = breaks if breaks is not None else break_classes(datum, pt, window)
    box = g_box(breaks)
    return [alpha for alpha in degree_window(datum.n, window) if _in_box(alpha, box)]


def _axis_factors(datum: BellRogalskiDatum, i: int, k: int) -> list[Ideal]:
    """The ideals whose product is I_i^(k)."""
    s = datum.sigma[i]
    if k > 0:
        return [s.power(l).apply_ideal(datum.J[i]) for l in range(k)]
    return [s.power(l).apply_ideal(datum.H[i]) for l in range(-1, k - 1, -1)]


def _factor_ideals(datum: BellRogalskiDatum, alpha: Sequence[int]) -> list[Ideal]:
    return [F for i, a in enumerate(alpha) if a for F in _axis_factors(datum, i, a)]


def in_g_set(datum: BellRogalskiDatum, pt: WeightPoint, alpha: Sequence[int]) -> bool:
    """B_-alpha B_alpha = I^(-alpha) sigma^-alpha(I^(alpha)) is not in m, factor by factor."""
    back = datum.sigma_power([-a for a in alpha])
    for F in _factor_ideals(datum, [-a for a in alpha]):
        if F.vanishes_at(pt.coords):
            return False
    for F in _factor_ideals(datum, alpha):
        if all(back.apply(g).evaluate(pt.coords) == 0 for g in F.generators):
            return False
    return True


def g_set_bruteforce(datum: BellRogalskiDatum, pt: WeightPoint, window: int = DEFAULT_WINDOW) -> list[Degree]:
    return [alpha for alpha in degree_window(datum.n, window) if in_g_set(datum, pt, alpha)]


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

@dataclass
class SimpleModuleDescriptor:
    """
    Support box lo_i < alpha_i <= hi_i (offsets from the orbit base point);
    `classes` is the break tuple, None standing for infinity.
    """
    orbit_base: WeightPoint
    classes: tuple[Optional[int], ...]
    predecessors: tuple[Optional[int], ...]
    base_offset: Degree

    @property
    def box(self) -> list[tuple[Optional[int], Optional[int]]]:
        return list(zip(self.predecessors, self.classes))

    @property
    def rank(self) -> int:
        return len(self.classes)

    def contains(self, alpha: Sequence[int]) -> bool:
        return _in_box(alpha, self.box)

    def base_point(self, datum: BellRogalskiDatum) -> WeightPoint:
        return orbit_point(datum.sigma, self.orbit_base, self.base_offset)

    def support_in(self, window: int) -> list[Degree]:
        return [a for a in degree_window(self.rank, window) if self.contains(a)]

    def describe_box(self) -> str:
        parts = []
        for i, (lo, hi) in enumerate(self.box):
            left = "-inf" if lo is None else str(lo)
            right = "inf" if hi is None else str(hi)
            parts.append(f"{left} < a{i + 1} <= {right}")
        return ", ".join(parts)

    def to_dict(self, datum: BellRogalskiDatum) -> dict:
        return {
            "classes": ["inf" if c is None else c for c in self.classes],
            "predecessors": ["-inf" if c is None else c for c in self.predecessors],
            "support": self.describe_box(),
            "base_offset": list(self.base_offset),
            "base_point": self.base_point(datum).to_text(),
        }


def _clamp(lo: Optional[int], hi: Optional[int]) -> int:
    a = 0
    if hi is not None:
        a = min(a, hi)
    if lo is not None:
        a = max(a, lo + 1)
    return a


@dataclass
class Classification:
    datum: BellRogalskiDatum
    base: WeightPoint
    window: int
    torsion: TorsionResult
    breaks: list[AxisBreaks]
    descriptors: list[SimpleModuleDescriptor]
    caveats: list[str] = field(default_factory=list)

    def partition_defects(self) -> list[str]:
        """In-window offsets covered by zero or several descriptors."""
        hits = Counter(a for d in self.descriptors for a in d.support_in(self.window))
        return [
            f"{list(a)} covered {hits[a]} times"
            for a in degree_window(self.datum.n, self.window)
            if hits[a] != 1
        ]

    def to_dict(self) -> dict:
        d: dict = {
            "base_point": self.base.to_text(),
            "window": self.window,
            "torsion": self.torsion.to_dict(),
            "breaks": [b.to_dict(self.base, self.datum, self.window) for b in self.breaks],
            "count": len(self.descriptors),
            "descriptors": [x.to_dict(self.datum) for x in self.descriptors],
        }
        if self.caveats:
            d["caveats"] = self.caveats
        return d


def classify(
    datum: BellRogalskiDatum,
    pt: WeightPoint,
    window: int = DEFAULT_WINDOW,
    max_workers: int = DEFAULT_MAX_WORKERS,
) -> Classification:
    """One descriptor per tuple of break classes (the infinity class included where present)."""
    torsion = is_torsion_free(datum, pt, window)
    if not torsion.torsion_free:
        raise PreconditionError(
            f"orbit of {pt} is not torsion-free",
            witness=str([list(v) for v in torsion.stabilizer]),
        )
    breaks = break_classes(datum, pt, window, max_workers)
    per_axis = [b.boxes(window) for b in breaks]
    descriptors = []
    for combo in itertools.product(*per_axis):
        lows = tuple(lo for lo, _ in combo)
        highs = tuple(hi for _, hi in combo)
        offset = tuple(_clamp(lo, hi) for lo, hi in combo)
        descriptors.append(SimpleModuleDescriptor(pt, highs, lows, offset))
    caveats = [f"axis {b.axis + 1}: {b.caveat}" for b in breaks if b.caveat]
    if torsion.caveat:
        caveats.append(torsion.caveat)
    if any(b.everything for b in breaks):
        caveats.append("every orbit point is a break on some axis; descriptors listed on the window only")
    logger.info("classify: %d descriptors for the orbit of %s", len(descriptors), pt)
    return Classification(datum, pt, window, torsion, breaks, descriptors, caveats)


# ---------------------------------------------------------------------------
# Basis elements
# ---------------------------------------------------------------------------

@dataclass
class ChosenB:
    """b in B_alpha and b' in B_-alpha with b' b = 1 mod m."""
    alpha: Degree
    b: GradedElement
    b_prime: GradedElement

    def to_dict(self) -> dict:
        return {"alpha": list(self.alpha), "b": self.b.to_text(), "b_prime": self.b_prime.to_text()}


def _pick(F: Ideal, value, budget: int) -> Polynomial:
    candidates = sorted(F.generators, key=lambda g: (g.total_degree(), g.to_text()))
    for g in candidates:
        if g.total_degree() > budget:
            break
        if value(g) != 0:
            return g
    raise SearchBoundError(
        f"no generator within the remaining degree budget {budget} in ({', '.join(F.to_text_list())}) survives at the point",
        witness=", ".join(F.to_text_list()),
    )


def choose_b(
    datum: BellRogalskiDatum,
    pt: WeightPoint,
    alpha: Sequence[int],
    degree_bound: int = DEFAULT_DEGREE_BOUND,
) -> ChosenB:
    """
    b_alpha multiplies, over the factor ideals of I^(alpha), the first generator
    (by degree, then text) whose sigma^-alpha image is nonzero at pt; b*_alpha
    does the same for I^(-alpha) at pt itself.  b' = b* / (b* b)(pt).
    Each product stays within degree_bound in total degree.
    """
    alpha = tuple(int(a) for a in alpha)
    ring = datum.ring
    if not any(alpha):
        one = GradedElement.one(datum)
        return ChosenB(alpha, one, one)
    if not in_g_set(datum, pt, alpha):
        raise PreconditionError(f"{list(alpha)} is not in G_m for m = {pt}")
    minus = tuple(-a for a in alpha)
    back = datum.sigma_power(minus)

    coeff = ring.one()
    for F in _factor_ideals(datum, alpha):
        coeff = coeff * _pick(
            F, lambda g: back.apply(g).evaluate(pt.coords), degree_bound - coeff.total_degree()
        )
    star = ring.one()
    for F in _factor_ideals(datum, minus):
        star = star * _pick(F, lambda g: g.evaluate(pt.coords), degree_bound - star.total_degree())

    s = (star * back.apply(coeff)).evaluate(pt.coords) * lambda_scalar(datum.p, minus, alpha)
    b = GradedElement.homogeneous(datum, alpha, coeff, verify=False)
    b_prime = GradedElement.homogeneous(datum, minus, star.scale(1 / s), verify=False)
    return ChosenB(alpha, b, b_prime)


# ---------------------------------------------------------------------------
# Module tables
# ---------------------------------------------------------------------------

@dataclass
class Edge:
    """t_i^(±1) v_alpha = coefficient(w_target) v_target; zero off the support."""
    alpha: Degree
    axis: int
    direction: int
    target: Degree
    coefficient: Polynomial
    scalar: Fraction

    def to_dict(self) -> dict:
        return {
            "from": list(self.alpha),
            "to": list(self.target),
            "generator": f"t{self.axis + 1}" + ("" if self.direction > 0 else "^-1"),
            "coefficient": self.coefficient.to_text(),
            "value": str(self.scalar),
        }


@dataclass
class ModuleTable:
    datum: BellRogalskiDatum
    descriptor: SimpleModuleDescriptor
    window: int
    base: WeightPoint
    basis: list[Degree]
    weights: dict[Degree, WeightPoint]
    chosen: dict[Degree, ChosenB]
    edges: list[Edge]
    degree_bound: int = DEFAULT_DEGREE_BOUND

    def in_support(self, alpha: Sequence[int]) -> bool:
        shifted = tuple(a + o for a, o in zip(alpha, self.descriptor.base_offset))
        return self.descriptor.contains(shifted)

    def in_window(self, alpha: Sequence[int]) -> bool:
        return all(abs(a) <= self.window for a in alpha)

    def weight(self, alpha: Sequence[int]) -> WeightPoint:
        alpha = tuple(alpha)
        if alpha not in self.weights:
            self.weights[alpha] = orbit_point(self.datum.sigma, self.base, alpha)
        return self.weights[alpha]

    def b(self, alpha: Sequence[int]) -> ChosenB:
        alpha = tuple(alpha)
        if alpha not in self.chosen:
            self.chosen[alpha] = choose_b(self.datum, self.base, alpha, self.degree_bound)
        return self.chosen[alpha]

    def edge(self, alpha: Sequence[int], axis: int, direction: int) -> Optional[Edge]:
        for e in self.edges:
            if e.alpha == tuple(alpha) and e.axis == axis and e.direction == direction:
                return e
        return None

    def to_dict(self) -> dict:
        return {
            "descriptor": self.descriptor.to_dict(self.datum),
            "base_point": self.base.to_text(),
            "window": self.window,
            "basis": [
                {
                    "alpha": list(a),
                    "weight": self.weight(a).to_text(),
                    "b": self.chosen[a].b.to_text(),
                    "b_prime": self.chosen[a].b_prime.to_text(),
                }
                for a in self.basis
            ],
            "edges": [e.to_dict() for e in self.edges],
        }


def _degree_zero_coefficient(x: GradedElement) -> Polynomial:
    n = x.datum.n
    extra = [a for a in x.support() if any(a)]
    if extra:
        raise PreconditionError(f"expected a degree-0 element, got support {extra}")
    return x.component((0,) * n)


def module_table(
    datum: BellRogalskiDatum,
    descriptor: SimpleModuleDescriptor,
    window: int = DEFAULT_WINDOW,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
) -> ModuleTable:
    """Basis b_alpha v for alpha in G_m on the window, with x_{alpha,i} and y_{alpha,i} on every edge."""
    n = datum.n
    base = descriptor.base_point(datum)
    table = ModuleTable(datum, descriptor, window, base, [], {}, {}, [], degree_bound)
    table.basis = [a for a in degree_window(n, window) if table.in_support(a)]
    for alpha in table.basis:
        table.weight(alpha)
        table.b(alpha)

    for alpha in table.basis:
        for i in range(n):
            for direction in (1, -1):
                target = tuple(a + direction * (k == i) for k, a in enumerate(alpha))
                if not table.in_window(target):
                    continue
                if not table.in_support(target):
                    table.edges.append(Edge(alpha, i, direction, target, datum.ring.zero(), Fraction(0)))
                    continue
                t = GradedElement.homogeneous(datum, unit_vector(n, i, direction), 1, ambient=True)
                z = multiply(multiply(t, table.b(alpha).b, verify=False), table.b(target).b_prime, verify=False)
                coeff = _degree_zero_coefficient(z)
                table.edges.append(
                    Edge(alpha, i, direction, target, coeff, coeff.evaluate(table.weight(target).coords))
                )
    logger.info("module_table: %d basis vectors, %d edges", len(table.basis), len(table.edges))
    return table


def act(table: ModuleTable, element: GradedElement, alpha: Sequence[int]) -> dict[Degree, Fraction]:
    """element . v_alpha as {target: scalar}, through z = (a t^beta) b_alpha b'_(alpha+beta)."""
    alpha = tuple(alpha)
    out: dict[Degree, Fraction] = {}
    for beta, a in element.parts.items():
        gamma = tuple(x + y for x, y in zip(alpha, beta))
        if not table.in_support(gamma):
            continue
        piece = GradedElement.homogeneous(table.datum, beta, a, ambient=True)
        z = multiply(multiply(piece, table.b(alpha).b, verify=False), table.b(gamma).b_prime, verify=False)
        value = _degree_zero_coefficient(z).evaluate(table.weight(gamma).coords)
        if value:
            out[gamma] = out.get(gamma, Fraction(0)) + value
    return {g: v for g, v in out.items() if v}


def _edge_text(e: Edge) -> str:
    return f"{list(e.alpha)} -> {list(e.target)}"


def _act_by_table(
    table: ModuleTable, gen: GradedElement, alpha: Degree
) -> Optional[tuple[dict[Degree, Fraction], Optional[Edge]]]:
    """A homogeneous generator of degree 0 or ±e_i through the stored edges; None off the window."""
    beta = gen.degree()
    coeff = gen.component(beta)
    if not any(beta):
        value = coeff.evaluate(table.weight(alpha).coords)
        return ({alpha: value} if value else {}), None
    i = next(k for k, b in enumerate(beta) if b)
    e = table.edge(alpha, i, beta[i])
    if e is None:
        return None
    value = coeff.evaluate(table.weight(e.target).coords) * e.scalar
    return ({e.target: value} if value else {}), e


def verify_module(table: ModuleTable) -> list[CheckEntry]:
    datum = table.datum
    entries: list[CheckEntry] = []

    gens = generators(datum)
    bad = []
    for alpha in table.basis:
        for g1, g2 in itertools.product(gens, repeat=2):
            step = _act_by_table(table, g2, alpha)
            if step is None:
                continue
            inner, first = step
            used = [first] if first is not None else []
            composed: dict[Degree, Fraction] = {}
            complete = True
            for target, value in inner.items():
                step = _act_by_table(table, g1, target)
                if step is None:
                    complete = False
                    break
                outer, second = step
                if second is not None:
                    used.append(second)
                for t2, v2 in outer.items():
                    composed[t2] = composed.get(t2, Fraction(0)) + value * v2
            if not complete:
                continue
            gamma = tuple(a + b + c for a, b, c in zip(alpha, g1.degree(), g2.degree()))
            if not table.in_window(gamma):
                continue
            composed = {k: v for k, v in composed.items() if v}
            direct = act(table, multiply(g1, g2, verify=False), alpha)
            if composed != direct:
                via = ", ".join(_edge_text(e) for e in used) or "no edge"
                bad.append(
                    f"({g1.to_text()})({g2.to_text()}) on v{list(alpha)} via {via}: {composed} != {direct}"
                )
    entries.append(CheckEntry("generator relations act consistently", not bad, "; ".join(bad[:3])))

    points = [table.weight(a) for a in table.basis]
    entries.append(CheckEntry(
        "weight spaces at most one-dimensional",
        len(set(points)) == len(points),
        "" if len(set(points)) == len(points) else "two basis vectors share a weight",
    ))

    bad = []
    for e in table.edges:
        source = e.alpha if e.direction > 0 else e.target
        crosses = is_i_break(datum, table.weight(source), e.axis)
        if crosses and e.scalar != 0:
            bad.append(f"edge {_edge_text(e)} crosses a break with value {e.scalar}")
        if not crosses and table.in_support(e.target) and e.scalar == 0:
            bad.append(f"edge {_edge_text(e)} vanishes inside the support")
    entries.append(CheckEntry("action vanishes exactly across breaks", not bad, "; ".join(bad[:3])))

    bad = []
    for alpha in table.basis:
        c = table.b(alpha)
        unit = multiply(c.b, c.b_prime, verify=False)
        value = _degree_zero_coefficient(unit).evaluate(table.weight(alpha).coords)
        if value != 1:
            bad.append(f"b b' at {list(alpha)} evaluates to {value}")
    entries.append(CheckEntry("R acts on v_alpha by evaluation at sigma^alpha(m)", not bad, "; ".join(bad[:3])))
    return entries
