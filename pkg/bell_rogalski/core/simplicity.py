"""
core/simplicity.py

Simplicity verdicts for Bell-Rogalski algebras.

Rank one is decided exactly when R is certified Gamma-simple and the break
locus is a finite set of rational points: B is simple iff R is sigma-simple
and no nonzero power of sigma returns the break locus onto itself.  In higher
rank only necessary conditions (Gamma-simplicity, R^Gamma = Q, the hyperplane
conditions per axis) and the sufficient tensor-of-simples route are checked;
everything else is reported as INCONCLUSIVE.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from sympy import Matrix as SympyMatrix

from .automorphism import Automorphism, WeightPoint, solve_orbit_exponent
from .config import DEFAULT_KMAX
from .datum import BellRogalskiDatum, ring_generators
from .errors import PreconditionError, UnsupportedError
from .groebner import Ideal, ideal_equal, ideal_sum, rational_points
from .lattice import multiplicative_relations
from .poly import Polynomial, RingSpec, format_fraction

logger = logging.getLogger(__name__)

SIMPLE = "SIMPLE"
NOT_SIMPLE = "NOT_SIMPLE"
INCONCLUSIVE = "INCONCLUSIVE"

# invariant monomials with polynomial variables are searched up to this exponent
HILBERT_SEARCH_BOUND = 4


# ---------------------------------------------------------------------------
# Trail and verdicts
# ---------------------------------------------------------------------------

@dataclass
class TrailEntry:
    condition: str
    result: str                 # pass | fail | unknown
    detail: str = ""
    role: str = "necessary"     # necessary | sufficient | info

    def to_dict(self) -> dict:
        d = {"condition": self.condition, "result": self.result, "role": self.role}
        if self.detail:
            d["detail"] = self.detail
        return d


def fold_verdict(trail: Sequence[TrailEntry]) -> str:
    """NOT_SIMPLE on a failed necessary condition, SIMPLE on a passed sufficient one, else INCONCLUSIVE."""
    if any(e.role == "necessary" and e.result == "fail" for e in trail):
        return NOT_SIMPLE
    if any(e.role == "sufficient" and e.result == "pass" for e in trail):
        return SIMPLE
    return INCONCLUSIVE


@dataclass
class Verdict:
    status: str
    trail: list[TrailEntry] = field(default_factory=list)

    @classmethod
    def from_trail(cls, trail: list[TrailEntry]) -> "Verdict":
        return cls(fold_verdict(trail), trail)

    @property
    def unresolved(self) -> list[str]:
        return [e.condition for e in self.trail if e.result == "unknown"]

    def to_dict(self) -> dict:
        d = {"status": self.status, "trail": [e.to_dict() for e in self.trail]}
        if self.status == INCONCLUSIVE:
            d["unresolved"] = self.unresolved
        return d


# ---------------------------------------------------------------------------
# Restriction to a block of variables
# ---------------------------------------------------------------------------

def _closure(sigma: Automorphism, indices: set[int]) -> tuple[int, ...]:
    out = set(indices)
    frontier = list(indices)
    while frontier:
        k = sigma.perm[frontier.pop()]
        if k not in out:
            out.add(k)
            frontier.append(k)
    return tuple(sorted(out))


def _subring(ring: RingSpec, idx: Sequence[int]) -> RingSpec:
    return RingSpec(
        tuple(ring.variables[j] for j in idx), tuple(ring.invertible[j] for j in idx), ring.order
    )


def _project(f: Polynomial, idx: Sequence[int], sub: RingSpec) -> Polynomial:
    """f as an element of the subring on `idx`; f may not involve other variables."""
    others = [j for j in range(f.ring.nvars) if j not in idx]
    if any(e[j] for e in f.terms for j in others):
        raise PreconditionError(f"{f} involves variables outside the block")
    return Polynomial(sub, {tuple(e[j] for j in idx): c for e, c in f.terms.items()})


def _restrict_automorphism(sigma: Automorphism, idx: Sequence[int], sub: RingSpec) -> Automorphism:
    pos = {j: a for a, j in enumerate(idx)}
    return Automorphism(
        sub,
        tuple(pos[sigma.perm[j]] for j in idx),
        tuple(sigma.scale[j] for j in idx),
        tuple(sigma.shift[j] for j in idx),
    )


def _used(ideals: Sequence[Ideal]) -> set[int]:
    return {j for I in ideals for g in I.generators for j in g.variables_used()}


def _moved(sigma: Automorphism) -> set[int]:
    return {j for j, f in enumerate(sigma.images()) if f != sigma.ring.var(j)}


# ---------------------------------------------------------------------------
# Gamma-simplicity
# ---------------------------------------------------------------------------

@dataclass
class GammaSimple:
    status: str                 # certified | refuted | unknown
    method: str
    witness: list[str] = field(default_factory=list)
    detail: str = ""

    def to_dict(self) -> dict:
        d = {"status": self.status, "method": self.method}
        if self.witness:
            d["witness"] = self.witness
        if self.detail:
            d["detail"] = self.detail
        return d


def _is_invariant(datum: BellRogalskiDatum, I: Ideal) -> bool:
    return all(ideal_equal(s.apply_ideal(I), I) for s in datum.sigma)


def _proper_nonzero(I: Ideal) -> bool:
    return not I.is_zero() and not I.is_unit()


def _scaling_block(datum: BellRogalskiDatum) -> list[int]:
    """Variables on which every sigma_k acts as x -> c x."""
    if not all(s.is_diagonal() for s in datum.sigma):
        return []
    return [j for j in range(datum.ring.nvars) if all(s.shift[j] == 0 for s in datum.sigma)]


def _binomial(ring: RingSpec, idx: Sequence[int], a: Sequence[int]) -> Polynomial:
    plus = [0] * ring.nvars
    minus = [0] * ring.nvars
    for j, x in zip(idx, a):
        if x > 0:
            plus[j] = x
        else:
            minus[j] = -x
    return ring.monomial(plus) - ring.monomial(minus)


def _refutation_candidates(datum: BellRogalskiDatum) -> list[tuple[str, Ideal]]:
    ring = datum.ring
    out: list[tuple[str, Ideal]] = []
    for i in range(datum.n):
        out.append((f"H_{i + 1}", datum.H[i]))
        out.append((f"J_{i + 1}", datum.J[i]))
        out.append((f"H_{i + 1}J_{i + 1}", datum.HJ(i)))

    # coordinate hyperplanes through a common fixed center
    if all(s.is_diagonal() for s in datum.sigma):
        for j in range(ring.nvars):
            if ring.invertible[j]:
                continue
            rules = [s.coordinate_rule(j) for s in datum.sigma]
            centers = {d / (1 - c) for c, d in rules if c != 1}
            if any(c == 1 and d != 0 for c, d in rules) or len(centers) > 1:
                continue
            center = centers.pop() if centers else Fraction(0)
            out.append((f"{ring.variables[j]} = {format_fraction(center)}", Ideal.principal(ring.var(j) - center)))

    # rational points of the break loci fixed by every sigma
    for i in range(datum.n):
        try:
            points = rational_points(datum.HJ(i))
        except UnsupportedError:
            continue
        for coords in points:
            pt = WeightPoint(ring, coords)
            if all(s.act_point(pt) == pt for s in datum.sigma):
                out.append((f"fixed point {pt}", pt.maximal_ideal()))

    # binomials x^a+ - x^a- with a in the character relation lattice
    idx = _scaling_block(datum)
    if idx:
        rows = [[s.scale[j] for j in idx] for s in datum.sigma]
        for a in multiplicative_relations(rows):
            out.append((f"character relation {list(a)}", Ideal.principal(_binomial(ring, idx, a))))
    return out


def _translation_rank(datum: BellRogalskiDatum) -> Optional[int]:
    """Rank of the translation vectors when every sigma_k is a pure translation, else None."""
    rows = []
    for s in datum.sigma:
        if not s.is_diagonal() or any(c != 1 for c in s.scale):
            return None
        rows.append(list(s.shift))
    return SympyMatrix(rows).rank()


def gamma_simple(datum: BellRogalskiDatum) -> GammaSimple:
    ring = datum.ring
    for label, I in _refutation_candidates(datum):
        if _proper_nonzero(I) and _is_invariant(datum, I):
            return GammaSimple("refuted", f"invariant ideal {label}", I.to_text_list())

    idx = _scaling_block(datum)
    if ring.is_laurent and len(idx) == ring.nvars:
        # the relation lattice is trivial here, else a binomial would have refuted
        return GammaSimple(
            "certified", "Laurent scalings",
            detail="the characters of the scalings have no multiplicative relation",
        )
    if not any(ring.invertible):
        rank = _translation_rank(datum)
        if rank is not None and rank == ring.nvars:
            return GammaSimple(
                "certified", "translations of full rank",
                detail=f"translation vectors span a rank-{rank} lattice in {ring.nvars} variables",
            )
    if datum.assumptions.get("gamma_simple"):
        return GammaSimple("certified", "assumption", detail="asserted by the datum file")
    return GammaSimple("unknown", "no certifier applies")


# ---------------------------------------------------------------------------
# Invariant subring
# ---------------------------------------------------------------------------

@dataclass
class InvariantSubring:
    generators: list[Polynomial]
    exact: bool
    detail: str = ""

    @property
    def constants_only(self) -> bool:
        return all(g.is_constant() for g in self.generators)

    def to_dict(self) -> dict:
        return {
            "generators": [g.to_text() for g in self.generators] or ["1"],
            "constants_only": self.constants_only,
            "exact": self.exact,
            "detail": self.detail,
        }


def _minimal_vectors(vectors: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Vectors that are not a sum of two nonzero members of the list."""
    pool = set(vectors)
    out = []
    for v in sorted(vectors, key=lambda v: (sum(abs(x) for x in v), v)):
        if not any(
            tuple(a - b for a, b in zip(v, w)) in pool for w in pool if w != v and any(w)
        ):
            out.append(v)
    return out


def invariant_subring(datum: BellRogalskiDatum) -> InvariantSubring:
    """Generators of R^Gamma for diagonal automorphisms."""
    ring = datum.ring
    if all(s.is_identity() for s in datum.sigma):
        return InvariantSubring(ring_generators(ring), True, "Gamma is trivial")
    if not all(s.is_diagonal() for s in datum.sigma):
        raise UnsupportedError("invariant subrings need diagonal automorphisms")

    centered, centers, translated = [], {}, []
    for j in range(ring.nvars):
        rules = [s.coordinate_rule(j) for s in datum.sigma]
        if any(c == 1 and d != 0 for c, d in rules):
            translated.append(j)
            continue
        points = {d / (1 - c) for c, d in rules if c != 1}
        if len(points) > 1:
            raise UnsupportedError(f"{ring.variables[j]!r} has no common fixed center")
        centered.append(j)
        centers[j] = points.pop() if points else Fraction(0)
    if len(translated) > 1:
        raise UnsupportedError(
            "several translated coordinates", witness=", ".join(ring.variables[j] for j in translated)
        )

    rows = [[s.scale[j] for j in centered] for s in datum.sigma]
    basis = multiplicative_relations(rows) if centered else []
    if not basis:
        return InvariantSubring([], True, "no invariant monomials; R^Gamma = Q")

    def monomial(a: Sequence[int]) -> Polynomial:
        f = ring.one()
        for j, x in zip(centered, a):
            if x:
                f = f * (ring.var(j) - centers[j]) ** x
        return f

    plain = [pos for pos, j in enumerate(centered) if not ring.invertible[j]]
    if not plain:
        gens = [monomial(a) for a in basis]
        return InvariantSubring(gens, True, "Laurent monomials on a basis of the character relation lattice")

    # nonnegativity on polynomial variables: search the cone for irreducible members
    bound = HILBERT_SEARCH_BOUND
    ranges = [range(0, bound + 1) if pos in plain else range(-bound, bound + 1) for pos in range(len(centered))]
    members = []
    for a in itertools.product(*ranges):
        if not any(a):
            continue
        if all(_character(row, a) == 1 for row in rows):
            members.append(a)
    gens = [monomial(a) for a in _minimal_vectors(members)]
    logger.warning("invariant monomials searched up to exponent %d only", bound)
    return InvariantSubring(gens, False, f"monomials searched up to exponent {bound}")


def _character(row: Sequence[Fraction], a: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for c, x in zip(row, a):
        out *= c ** x
    return out


# ---------------------------------------------------------------------------
# Hyperplane conditions
# ---------------------------------------------------------------------------

@dataclass
class HyperplaneResult:
    axis: int
    kmax: int
    ideal_mode: list[tuple[int, bool]]                   # H_iJ_i + sigma_i^k(H_iJ_i) = R
    point_mode: Optional[list[tuple[int, bool]]] = None  # css_i and sigma_i^k(css_i) disjoint
    exact: Optional[bool] = None                         # holds for every k > 0
    exact_witness: Optional[int] = None
    method: str = ""
    caveat: str = ""

    @property
    def agree(self) -> bool:
        return self.point_mode is None or self.point_mode == self.ideal_mode

    @property
    def first_failure(self) -> Optional[int]:
        return next((k for k, ok in self.ideal_mode if not ok), None)

    def to_dict(self) -> dict:
        d = {
            "axis": self.axis + 1,
            "kmax": self.kmax,
            "ideal_mode": {str(k): ok for k, ok in self.ideal_mode},
            "modes_agree": self.agree,
            "method": self.method,
        }
        if self.point_mode is not None:
            d["point_mode"] = {str(k): ok for k, ok in self.point_mode}
        if self.exact is not None:
            d["all_k"] = self.exact
            if self.exact_witness is not None:
                d["smallest_failing_k"] = self.exact_witness
        if self.caveat:
            d["caveat"] = self.caveat
        return d


def hyperplane_condition(datum: BellRogalskiDatum, i: int, kmax: int = DEFAULT_KMAX) -> HyperplaneResult:
    s = datum.sigma[i]
    HJ = datum.HJ(i)
    if HJ.is_unit():
        passes = [(k, True) for k in range(1, kmax + 1)]
        return HyperplaneResult(i, kmax, passes, list(passes), True, None, "empty break locus")

    ideal_mode = []
    for k in range(1, kmax + 1):
        ideal_mode.append((k, ideal_sum(HJ, s.power(k).apply_ideal(HJ)).is_unit()))
    result = HyperplaneResult(i, kmax, ideal_mode, method="ideal sums")

    idx = _closure(s, _used([HJ]))
    sub = _subring(datum.ring, idx)
    try:
        points = rational_points(Ideal(sub, [_project(g, idx, sub) for g in HJ.generators]))
    except UnsupportedError as exc:
        result.caveat = f"break locus: {exc}"
        return result
    sigma = _restrict_automorphism(s, idx, sub)
    pts = [WeightPoint(sub, c) for c in points]

    point_mode = []
    for k in range(1, kmax + 1):
        power = sigma.power(k)
        hit = any(power.act_point(a) == b for a in pts for b in pts)
        point_mode.append((k, not hit))
    result.point_mode = point_mode

    if not sigma.is_diagonal():
        result.method = "ideal sums and orbit points on the window"
        result.caveat = "permuting automorphism: all-k verdict unavailable"
        return result
    failing = []
    for a, b in itertools.product(pts, repeat=2):
        k = solve_orbit_exponent(sigma, a, b).smallest_positive()
        if k is not None:
            failing.append(k)
    result.exact = not failing
    result.exact_witness = min(failing) if failing else None
    result.method = f"orbit equations on {len(pts)} rational break point(s)"
    return result


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------

def _gamma_entry(datum: BellRogalskiDatum) -> TrailEntry:
    g = gamma_simple(datum)
    condition = "R is Gamma-simple"
    if g.status == "certified":
        return TrailEntry(condition, "pass", f"{g.method}: {g.detail}".rstrip(": "))
    if g.status == "refuted":
        return TrailEntry(condition, "fail", f"{g.method}: ({', '.join(g.witness)})")
    return TrailEntry(condition, "unknown", g.method)


def _lonely_entry(h: HyperplaneResult, exact_label: str) -> TrailEntry:
    if h.exact is not None:
        if h.exact:
            return TrailEntry(exact_label, "pass", f"{h.method}; holds for every k > 0")
        return TrailEntry(exact_label, "fail", f"{h.method}; fails at k = {h.exact_witness}")
    k = h.first_failure
    if k is not None:
        return TrailEntry(exact_label, "fail", f"{h.method}; fails at k = {k}")
    return TrailEntry(exact_label, "unknown", f"holds for k <= {h.kmax} only; {h.caveat}".rstrip("; "))


def rank1_verdict(datum: BellRogalskiDatum, kmax: int = DEFAULT_KMAX) -> Verdict:
    if datum.n != 1:
        raise PreconditionError(f"rank1_verdict needs rank 1, got {datum.n}")
    gamma = _gamma_entry(datum)
    h = hyperplane_condition(datum, 0, kmax)
    lonely = _lonely_entry(h, "B is sigma-lonely")
    both = gamma.result == "pass" and lonely.result == "pass"
    trail = [
        gamma,
        lonely,
        TrailEntry(
            "rank-1 criterion: sigma-simple and sigma-lonely",
            "pass" if both else "unknown",
            role="sufficient",
        ),
    ]
    if not h.agree:
        trail.append(TrailEntry("hyperplane modes agree", "unknown", "ideal and point modes differ", role="info"))
    verdict = Verdict.from_trail(trail)
    logger.info("rank1_verdict %s: %s", datum.name or "datum", verdict.status)
    return verdict


def _invariant_entry(datum: BellRogalskiDatum) -> tuple[TrailEntry, Optional[InvariantSubring]]:
    condition = "R^Gamma = Q (R^Gamma lies in the center)"
    try:
        inv = invariant_subring(datum)
    except UnsupportedError as exc:
        return TrailEntry(condition, "unknown", str(exc)), None
    if inv.constants_only:
        result = "pass" if inv.exact else "unknown"
        return TrailEntry(condition, result, inv.detail), inv
    witness = inv.generators[0].to_text()
    return TrailEntry(condition, "fail", f"nonconstant invariant {witness}; {inv.detail}"), inv


def tensor_factors(datum: BellRogalskiDatum) -> tuple[Optional[list[BellRogalskiDatum]], str]:
    """Split an untwisted datum into rank-1 factors on disjoint variable blocks."""
    n = datum.n
    blocks = []
    for i, s in enumerate(datum.sigma):
        blocks.append(_closure(s, _moved(s) | _used([datum.H[i], datum.J[i]])))
    for i, k in itertools.combinations(range(n), 2):
        if set(blocks[i]) & set(blocks[k]):
            return None, f"axes {i + 1} and {k + 1} share variables"
    if sorted(j for b in blocks for j in b) != list(range(datum.ring.nvars)):
        return None, "some variable belongs to no axis"
    for i, k in itertools.permutations(range(n), 2):
        s = datum.sigma[k]
        if any(s.apply(datum.ring.var(j)) != datum.ring.var(j) for j in blocks[i]):
            return None, f"sigma_{k + 1} moves variables of axis {i + 1}"
        if datum.p[i][k] != 1:
            return None, f"twisted: p_{i + 1}{k + 1} = {format_fraction(datum.p[i][k])}"
    factors = []
    for i, idx in enumerate(blocks):
        sub = _subring(datum.ring, idx)
        factors.append(BellRogalskiDatum(
            sub,
            (_restrict_automorphism(datum.sigma[i], idx, sub),),
            ((Fraction(1),),),
            (Ideal(sub, [_project(g, idx, sub) for g in datum.H[i].generators]),),
            (Ideal(sub, [_project(g, idx, sub) for g in datum.J[i].generators]),),
            name=f"factor {i + 1}",
            assumptions=datum.assumptions,
        ))
    return factors, f"{n} rank-1 factors"


def _tensor_entry(datum: BellRogalskiDatum, kmax: int) -> TrailEntry:
    condition = "tensor of simple rank-1 factors, all but one central"
    factors, reason = tensor_factors(datum)
    if factors is None:
        return TrailEntry(condition, "unknown", reason, role="sufficient")
    simple = [rank1_verdict(f, kmax).status for f in factors]
    if any(v != SIMPLE for v in simple):
        bad = [str(i + 1) for i, v in enumerate(simple) if v != SIMPLE]
        return TrailEntry(condition, "unknown", f"factor(s) {', '.join(bad)} not certified simple", role="sufficient")
    central = []
    for f in factors:
        try:
            central.append(invariant_subring(f).constants_only)
        except UnsupportedError:
            central.append(False)
    if sum(1 for c in central if not c) > 1:
        return TrailEntry(condition, "unknown", "more than one factor with nonconstant center", role="sufficient")
    return TrailEntry(condition, "pass", f"{reason}, each SIMPLE", role="sufficient")


def rankn_verdict(datum: BellRogalskiDatum, kmax: int = DEFAULT_KMAX) -> Verdict:
    if datum.n == 1:
        return rank1_verdict(datum, kmax)
    trail = [_gamma_entry(datum)]
    entry, _ = _invariant_entry(datum)
    trail.append(entry)
    for i in range(datum.n):
        h = hyperplane_condition(datum, i, kmax)
        k = h.exact_witness if h.exact is False else h.first_failure
        if k is not None:
            trail.append(TrailEntry(f"hyperplane condition, axis {i + 1}", "fail", f"{h.method}; fails at k = {k}"))
        elif h.exact:
            trail.append(TrailEntry(f"hyperplane condition, axis {i + 1}", "pass", f"{h.method}; every k > 0"))
        else:
            trail.append(TrailEntry(
                f"hyperplane condition, axis {i + 1}", "unknown", f"holds for k <= {kmax}; {h.caveat}".rstrip("; ")
            ))
    trail.append(TrailEntry("BxB = B for every x in the Ore set", "unknown", "not decided", role="info"))
    trail.append(TrailEntry("center of B inside R", "unknown", "not decided", role="info"))
    trail.append(_tensor_entry(datum, kmax))
    verdict = Verdict.from_trail(trail)
    logger.info("rankn_verdict %s: %s", datum.name or "datum", verdict.status)
    return verdict


def simplicity_verdict(datum: BellRogalskiDatum, kmax: int = DEFAULT_KMAX) -> Verdict:
    return rank1_verdict(datum, kmax) if datum.n == 1 else rankn_verdict(datum, kmax)
