"""
core/datum.py

Bell-Rogalski data (R, t, sigma, p, H, J), their canonical ideals I^(alpha),
graded elements of B = sum_alpha I^(alpha) t^alpha, and multiplication in the
ambient skew Laurent ring R_p[t^±1; sigma].

Normal order of monomials is t_1^a_1 ... t_n^a_n.  From t_k t_i = p_ik t_i t_k,
moving t_k^b left past t_i^a (i > k) costs p_ki^(a*b), so

    t^alpha t^beta = lambda(alpha, beta) t^(alpha+beta),
    lambda(alpha, beta) = prod_{i>k} p_ki^(alpha_i * beta_k).
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Optional, Sequence, Union

from .automorphism import Automorphism, compose_all
from .cache import get_ideal_cache, make_cache_key
from .config import DEFAULT_VERIFY, CheckEntry
from .errors import DatumError, MembershipError, PreconditionError, RingMismatchError
from .groebner import Ideal, ideal_equal, ideal_product, ideal_product_all
from .poly import Polynomial, RingSpec, to_fraction

logger = logging.getLogger(__name__)

Degree = tuple[int, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


# ---------------------------------------------------------------------------
# Scalar bookkeeping
# ---------------------------------------------------------------------------

def lambda_scalar(p: Matrix, alpha: Sequence[int], beta: Sequence[int]) -> Fraction:
    """The scalar with t^alpha t^beta = lambda * t^(alpha+beta) in normal order."""
    out = Fraction(1)
    n = len(alpha)
    for i in range(n):
        for k in range(i):
            e = alpha[i] * beta[k]
            if e:
                out *= p[k][i] ** e
    return out


def commutation_scalar(p: Matrix, beta: Sequence[int], alpha: Sequence[int]) -> Fraction:
    """p_{beta,alpha} = prod p_ik^(beta_i alpha_k), so t^alpha t^beta = p_{beta,alpha} t^beta t^alpha."""
    out = Fraction(1)
    n = len(alpha)
    for i in range(n):
        for k in range(n):
            e = beta[i] * alpha[k]
            if e:
                out *= p[i][k] ** e
    return out


def to_matrix(rows: Sequence[Sequence[object]]) -> Matrix:
    return tuple(tuple(to_fraction(x) for x in row) for row in rows)


def unit_vector(n: int, i: int, k: int = 1) -> Degree:
    return tuple(k if j == i else 0 for j in range(n))


def degree_window(n: int, window: int) -> list[Degree]:
    return list(itertools.product(range(-window, window + 1), repeat=n))


# ---------------------------------------------------------------------------
# Datum
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BellRogalskiDatum:
    """(R, t, sigma, p, H, J) over a commutative polynomial/Laurent ring."""
    ring: RingSpec
    sigma: tuple[Automorphism, ...]
    p: Matrix
    H: tuple[Ideal, ...]
    J: tuple[Ideal, ...]
    name: str = ""
    assumptions: Mapping[str, bool] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "p", to_matrix(self.p))
        object.__setattr__(self, "H", tuple(self.H))
        object.__setattr__(self, "J", tuple(self.J))
        n = len(self.sigma)
        if n == 0:
            raise DatumError("rank must be at least 1")
        if len(self.H) != n or len(self.J) != n:
            raise DatumError(f"rank {n} needs {n} H and {n} J ideals, got {len(self.H)} and {len(self.J)}")
        if len(self.p) != n or any(len(row) != n for row in self.p):
            raise DatumError(f"p must be a {n}x{n} matrix")
        if any(c == 0 for row in self.p for c in row):
            raise DatumError("p entries must be nonzero")
        for obj in (*self.sigma, *self.H, *self.J):
            if obj.ring != self.ring:
                raise RingMismatchError(f"{obj} is not over {self.ring.describe()}")

    @classmethod
    def from_texts(
        cls,
        ring: RingSpec,
        sigma: Sequence[Mapping[str, str]],
        p: Optional[Sequence[Sequence[object]]],
        H: Sequence[Sequence[str]],
        J: Sequence[Sequence[str]],
        params: Optional[Mapping[str, Fraction]] = None,
        name: str = "",
        assumptions: Optional[Mapping[str, bool]] = None,
    ) -> "BellRogalskiDatum":
        n = len(sigma)
        if p is None:
            p = [[1] * n for _ in range(n)]

        def ideal(gens: Sequence[str]) -> Ideal:
            return Ideal(ring, [Polynomial.from_text(ring, str(g), params) for g in gens])

        return cls(
            ring,
            tuple(Automorphism.from_images(ring, s, params) for s in sigma),
            to_matrix(p),
            tuple(ideal(h) for h in H),
            tuple(ideal(j) for j in J),
            name=name,
            assumptions=dict(assumptions or {}),
        )

    @property
    def n(self) -> int:
        return len(self.sigma)

    @cached_property
    def fingerprint(self) -> str:
        return make_cache_key(
            "datum",
            ring=self.ring.to_dict(),
            sigma=[s.to_dict() for s in self.sigma],
            p=[[str(c) for c in row] for row in self.p],
            H=[I.to_text_list() for I in self.H],
            J=[I.to_text_list() for I in self.J],
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BellRogalskiDatum):
            return NotImplemented
        return self.fingerprint == other.fingerprint

    def __hash__(self) -> int:
        return hash(self.fingerprint)

    def sigma_power(self, alpha: Sequence[int]) -> Automorphism:
        return compose_all(self.sigma, alpha)

    def HJ(self, i: int) -> Ideal:
        return ideal_product(self.H[i], self.J[i]).compact()

    # -- canonical ideals ---------------------------------------------------

    def axis_ideal(self, i: int, k: int) -> Ideal:
        """I_i^(k): J sigma(J)...sigma^(k-1)(J) for k > 0, sigma^-1(H)...sigma^k(H) for k < 0."""
        if k == 0:
            return Ideal.unit(self.ring)
        key = make_cache_key("axis_ideal", datum=self.fingerprint, axis=i, k=k)

        def compute() -> Ideal:
            if k > 0:
                step = self.sigma[i].power(k - 1).apply_ideal(self.J[i])
                return ideal_product(self.axis_ideal(i, k - 1), step).compact()
            step = self.sigma[i].power(k).apply_ideal(self.H[i])
            return ideal_product(self.axis_ideal(i, k + 1), step).compact()

        return get_ideal_cache().get_or_compute(key, compute)

    def canonical_ideal(self, alpha: Sequence[int]) -> Ideal:
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != self.n:
            raise DatumError(f"degree {alpha} has wrong length for rank {self.n}")
        if not any(alpha):
            return Ideal.unit(self.ring)
        key = make_cache_key("canonical", datum=self.fingerprint, alpha=list(alpha))
        return get_ideal_cache().get_or_compute(
            key,
            lambda: ideal_product_all(
                self.ring, [self.axis_ideal(i, a) for i, a in enumerate(alpha) if a]
            ),
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ring": self.ring.to_dict(),
            "rank": self.n,
            "sigma": [s.to_dict() for s in self.sigma],
            "p": [[str(c) for c in row] for row in self.p],
            "H": [I.to_text_list() for I in self.H],
            "J": [I.to_text_list() for I in self.J],
        }


def canonical_ideal(datum: BellRogalskiDatum, alpha: Sequence[int]) -> Ideal:
    return datum.canonical_ideal(alpha)


def datum_fingerprint(datum: BellRogalskiDatum) -> str:
    return datum.fingerprint


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate(datum: BellRogalskiDatum) -> list[CheckEntry]:
    """Every axiom of a Bell-Rogalski datum as a named entry."""
    n = datum.n
    entries: list[CheckEntry] = [
        CheckEntry("rank consistency", True, f"n = {n}; sigma, p, H, J agree"),
        CheckEntry("R commutative domain", True, f"{datum.ring.describe()} (automatic)"),
    ]

    bad = [
        f"p[{i + 1}][{k + 1}] * p[{k + 1}][{i + 1}] = {datum.p[i][k] * datum.p[k][i]}"
        for i in range(n) for k in range(i, n)
        if datum.p[i][k] * datum.p[k][i] != 1
    ]
    entries.append(CheckEntry("p multiplicatively antisymmetric", not bad, "; ".join(bad)))

    bad = [
        f"sigma_{i + 1}, sigma_{k + 1}"
        for i in range(n) for k in range(i + 1, n)
        if not datum.sigma[i].commutes_with(datum.sigma[k])
    ]
    entries.append(CheckEntry("sigma commute", not bad, "; ".join(bad)))

    for label, ideals in (("H", datum.H), ("J", datum.J)):
        bad = []
        for i in range(n):
            for k in range(n):
                if i == k:
                    continue
                image = datum.sigma[i].apply_ideal(ideals[k])
                if not ideal_equal(image, ideals[k]):
                    witness = next(
                        (g for g in ideals[k].generators if not ideals[k].contains(datum.sigma[i].apply(g))),
                        None,
                    )
                    detail = f"sigma_{i + 1}({label}_{k + 1}) != {label}_{k + 1}"
                    if witness is not None:
                        detail += f"; sigma_{i + 1}({witness}) = {datum.sigma[i].apply(witness)} not in {label}_{k + 1}"
                    else:
                        detail += f"; {label}_{k + 1} not contained in its image"
                    bad.append(detail)
        entries.append(CheckEntry(f"sigma_i({label}_k) = {label}_k for i != k", not bad, "; ".join(bad)))

    zero = [f"{label}_{i + 1}" for label, ideals in (("H", datum.H), ("J", datum.J))
            for i, I in enumerate(ideals) if I.is_zero()]
    entries.append(CheckEntry("H_i, J_i nonzero", not zero, ", ".join(zero)))
    entries.append(CheckEntry("H_i H_k = H_k H_i, J_i J_k = J_k J_i", True, "commutative base (automatic)"))
    return entries


def has_scalar_units(datum: BellRogalskiDatum) -> tuple[bool, Optional[str]]:
    """Units of R are c * Laurent monomials; they are all fixed iff every invertible variable is."""
    for j in datum.ring.laurent_indices:
        x = datum.ring.var(j)
        for i, s in enumerate(datum.sigma):
            if s.apply(x) != x:
                return False, f"sigma_{i + 1}({x}) = {s.apply(x)}"
    return True, None


# ---------------------------------------------------------------------------
# Graded elements
# ---------------------------------------------------------------------------

class GradedElement:
    """
    Finite sum of a_alpha t^alpha.

    Elements of B have a_alpha in I^(alpha), checked on construction unless
    `verify` is off. Ambient elements live in the skew Laurent ring and skip
    the membership check.
    """

    __slots__ = ("datum", "parts", "ambient")

    def __init__(
        self,
        datum: BellRogalskiDatum,
        parts: Optional[Mapping[Sequence[int], Polynomial]] = None,
        ambient: bool = False,
        verify: bool = DEFAULT_VERIFY,
    ) -> None:
        clean: dict[Degree, Polynomial] = {}
        for alpha, c in (parts or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != datum.n:
                raise DatumError(f"degree {alpha} has wrong length for rank {datum.n}")
            if c.ring != datum.ring:
                raise RingMismatchError(f"coefficient {c} is not over {datum.ring.describe()}")
            total = clean.get(alpha, datum.ring.zero()) + c
            if total:
                clean[alpha] = total
            else:
                clean.pop(alpha, None)
        self.datum = datum
        self.parts = clean
        self.ambient = ambient
        if verify and not ambient:
            for alpha, c in clean.items():
                if not datum.canonical_ideal(alpha).contains(c):
                    raise MembershipError(
                        f"coefficient in degree {list(alpha)} is not in I^({','.join(map(str, alpha))})",
                        witness=c.to_text(),
                    )

    @classmethod
    def homogeneous(
        cls,
        datum: BellRogalskiDatum,
        alpha: Sequence[int],
        coeff: Union[Polynomial, int, Fraction],
        ambient: bool = False,
        verify: bool = DEFAULT_VERIFY,
    ) -> "GradedElement":
        if not isinstance(coeff, Polynomial):
            coeff = datum.ring.const(coeff)
        return cls(datum, {tuple(alpha): coeff}, ambient=ambient, verify=verify)

    @classmethod
    def one(cls, datum: BellRogalskiDatum) -> "GradedElement":
        return cls.homogeneous(datum, (0,) * datum.n, 1, verify=False)

    @classmethod
    def zero(cls, datum: BellRogalskiDatum, ambient: bool = False) -> "GradedElement":
        return cls(datum, {}, ambient=ambient, verify=False)

    # -- views --------------------------------------------------------------

    def support(self) -> list[Degree]:
        return sorted(self.parts)

    def component(self, alpha: Sequence[int]) -> Polynomial:
        return self.parts.get(tuple(alpha), self.datum.ring.zero())

    def is_zero(self) -> bool:
        return not self.parts

    def is_homogeneous(self) -> bool:
        return len(self.parts) == 1

    def degree(self) -> Degree:
        if len(self.parts) != 1:
            raise PreconditionError("element is not homogeneous")
        return next(iter(self.parts))

    def to_list(self) -> list[list]:
        return [[list(alpha), self.parts[alpha].to_text()] for alpha in self.support()]

    def to_text(self) -> str:
        if not self.parts:
            return "0"
        pieces = []
        for alpha in self.support():
            mono = "*".join(
                f"t{i + 1}" if a == 1 else f"t{i + 1}^{a}" for i, a in enumerate(alpha) if a
            )
            coeff = self.parts[alpha].to_text()
            pieces.append(f"({coeff})" + (f"*{mono}" if mono else ""))
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"GradedElement({self.to_text()!r})"

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "GradedElement") -> None:
        if other.datum != self.datum:
            raise RingMismatchError("graded elements of different data")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.datum == other.datum and self.parts == other.parts

    def __hash__(self) -> int:
        return hash((self.datum.fingerprint, frozenset(self.parts.items())))

    def __add__(self, other: "GradedElement") -> "GradedElement":
        self._check(other)
        out = dict(self.parts)
        for alpha, c in other.parts.items():
            out[alpha] = out.get(alpha, self.datum.ring.zero()) + c
        return GradedElement(self.datum, out, ambient=self.ambient or other.ambient, verify=False)

    def __neg__(self) -> "GradedElement":
        return self.scale(-1)

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + (-other)

    def scale(self, c: Union[int, Fraction]) -> "GradedElement":
        return GradedElement(
            self.datum, {a: f.scale(c) for a, f in self.parts.items()}, ambient=self.ambient, verify=False
        )

    def __mul__(self, other: object) -> "GradedElement":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, GradedElement):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other: object) -> "GradedElement":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented


def multiply(a: GradedElement, b: GradedElement, verify: bool = DEFAULT_VERIFY) -> GradedElement:
    """(a t^alpha)(b t^beta) = a sigma^alpha(b) lambda(alpha, beta) t^(alpha+beta), summed."""
    a._check(b)
    datum = a.datum
    out: dict[Degree, Polynomial] = {}
    for alpha, f in a.parts.items():
        s = datum.sigma_power(alpha)
        for beta, g in b.parts.items():
            gamma = tuple(x + y for x, y in zip(alpha, beta))
            term = (f * s.apply(g)).scale(lambda_scalar(datum.p, alpha, beta))
            out[gamma] = out.get(gamma, datum.ring.zero()) + term
    ambient = a.ambient or b.ambient
    return GradedElement(datum, out, ambient=ambient, verify=verify and not ambient)


def ring_generators(ring: RingSpec) -> list[Polynomial]:
    out = []
    for j in range(ring.nvars):
        out.append(ring.var(j))
        if ring.invertible[j]:
            out.append(ring.var(j) ** -1)
    return out


def generators(datum: BellRogalskiDatum) -> list[GradedElement]:
    """J_i t_i, sigma_i^-1(H_i) t_i^-1 for every axis, then generators of R in degree 0."""
    n = datum.n
    out: list[GradedElement] = []
    for i in range(n):
        for g in datum.J[i].generators:
            out.append(GradedElement.homogeneous(datum, unit_vector(n, i), g, verify=False))
        inv = datum.sigma[i].inverse()
        for h in datum.H[i].generators:
            out.append(GradedElement.homogeneous(datum, unit_vector(n, i, -1), inv.apply(h), verify=False))
    for x in ring_generators(datum.ring):
        out.append(GradedElement.homogeneous(datum, (0,) * n, x, verify=False))
    return out


# ---------------------------------------------------------------------------
# Iterated presentation
# ---------------------------------------------------------------------------

@dataclass
class Decomposition:
    """B as a rank-1 extension of the rank-(n-1) algebra S on the remaining axes."""
    datum: BellRogalskiDatum
    axis: int
    inner: BellRogalskiDatum
    inner_axes: tuple[int, ...]
    twist: tuple[Fraction, ...]          # sigma_hat(t_i) = p_{i,axis} t_i, per inner axis
    H: Ideal                             # H_axis S is generated by these in degree 0
    J: Ideal

    def apply_sigma(self, x: GradedElement) -> GradedElement:
        """sigma_hat(r t^gamma) = sigma_axis(r) * prod p_{i,axis}^gamma_i * t^gamma."""
        s = self.datum.sigma[self.axis]
        parts = {}
        for gamma, c in x.parts.items():
            scalar = Fraction(1)
            for g, q in zip(gamma, self.twist):
                scalar *= q ** g
            parts[gamma] = s.apply(c).scale(scalar)
        return GradedElement(self.inner, parts, ambient=x.ambient, verify=False)

    def recomposed_ideal(self, alpha: Sequence[int]) -> Ideal:
        """Component of I_hat^(alpha_axis) in S-degree gamma: I_axis^(k) * I_S^(gamma)."""
        gamma = tuple(alpha[i] for i in self.inner_axes)
        return ideal_product(
            self.datum.axis_ideal(self.axis, alpha[self.axis]), self.inner.canonical_ideal(gamma)
        ).compact()

    def to_dict(self) -> dict:
        return {
            "axis": self.axis + 1,
            "inner": self.inner.to_dict(),
            "outer": {
                "sigma_on_R": self.datum.sigma[self.axis].to_dict(),
                "sigma_on_t": {f"t{i + 1}": str(q) for i, q in zip(self.inner_axes, self.twist)},
                "H": self.H.to_text_list(),
                "J": self.J.to_text_list(),
            },
        }


def iterate_decompose(
    datum: BellRogalskiDatum,
    axis: Optional[int] = None,
    window: int = 2,
) -> tuple[Decomposition, list[CheckEntry]]:
    """Split off `axis` (0-based, the last by default) and verify the recomposition on a window."""
    n = datum.n
    if n < 2:
        raise PreconditionError("iterate_decompose needs rank at least 2")
    axis = n - 1 if axis is None else axis
    if not 0 <= axis < n:
        raise PreconditionError(f"axis {axis + 1} out of range 1..{n}")
    rest = tuple(i for i in range(n) if i != axis)
    inner = BellRogalskiDatum(
        datum.ring,
        tuple(datum.sigma[i] for i in rest),
        tuple(tuple(datum.p[i][k] for k in rest) for i in rest),
        tuple(datum.H[i] for i in rest),
        tuple(datum.J[i] for i in rest),
        name=f"{datum.name or 'datum'} without axis {axis + 1}",
    )
    dec = Decomposition(
        datum, axis, inner, rest,
        tuple(datum.p[i][axis] for i in rest),
        datum.H[axis], datum.J[axis],
    )

    entries: list[CheckEntry] = []
    bad = []
    for alpha in degree_window(n, window):
        if not ideal_equal(dec.recomposed_ideal(alpha), datum.canonical_ideal(alpha)):
            bad.append(str(list(alpha)))
    entries.append(CheckEntry(f"recomposed components equal I^(alpha), |alpha_i| <= {window}", not bad, ", ".join(bad)))

    s = datum.sigma[axis]
    bad = []
    for gamma in degree_window(n - 1, window):
        I = inner.canonical_ideal(gamma)
        if not ideal_equal(s.apply_ideal(I), I):
            bad.append(str(list(gamma)))
    entries.append(CheckEntry("sigma_hat preserves the components of S", not bad, ", ".join(bad)))

    gens = generators(inner)
    bad = []
    for x, y in itertools.product(gens, repeat=2):
        lhs = dec.apply_sigma(multiply(x, y, verify=False))
        rhs = multiply(dec.apply_sigma(x), dec.apply_sigma(y), verify=False)
        if lhs != rhs:
            bad.append(f"{x.to_text()} * {y.to_text()}")
    entries.append(CheckEntry("sigma_hat multiplicative on generator pairs of S", not bad, "; ".join(bad[:3])))
    logger.info("iterate_decompose axis %d: %d checks", axis + 1, len(entries))
    return dec, entries


def sign_compatible(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    return all(a * b >= 0 for a, b in zip(alpha, beta))


def graded_containment_defects(
    datum: BellRogalskiDatum, window: int = 2
) -> list[tuple[Degree, Degree]]:
    """
    (alpha, beta) on the window where I^(alpha) sigma^alpha(I^(beta)) is not
    contained in I^(alpha+beta), or differs from it for sign-compatible degrees.
    """
    bad = []
    for alpha in degree_window(datum.n, window):
        s = datum.sigma_power(alpha)
        for beta in degree_window(datum.n, window):
            lhs = ideal_product(datum.canonical_ideal(alpha), s.apply_ideal(datum.canonical_ideal(beta)))
            gamma = tuple(x + y for x, y in zip(alpha, beta))
            target = datum.canonical_ideal(gamma)
            if sign_compatible(alpha, beta):
                ok = ideal_equal(lhs, target)
            else:
                ok = target.contains_ideal(lhs)
            if not ok:
                bad.append((alpha, beta))
    return bad
