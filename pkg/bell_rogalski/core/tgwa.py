"""
core/tgwa.py

Twisted generalized Weyl algebras of type (A_1)^n and their exchange with
Bell-Rogalski data.

A TGWA datum (R, sigma, a, mu, gamma) presents the algebra generated over R
by X_i^+ and X_i^- subject to

    X_i^± r       = sigma_i^±1(r) X_i^±
    X_i^- X_i^+   = a_i,      X_i^+ X_i^- = sigma_i(a_i)
    X_i^+ X_k^-   = mu_ik X_k^- X_i^+
    X_i^+ X_k^+   = gamma_ik mu_ik^-1 X_k^+ X_i^+
    X_k^- X_i^-   = gamma_ik mu_ki^-1 X_i^- X_k^-        (i != k)

with sigma_i(a_k) = gamma_ik a_k and mu_ik mu_ki = gamma_ik gamma_ki.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .automorphism import Automorphism
from .cache import make_cache_key
from .config import CheckEntry, checks_passed
from .datum import (
    BellRogalskiDatum,
    GradedElement,
    Matrix,
    has_scalar_units,
    multiply,
    ring_generators,
    to_matrix,
    unit_vector,
    validate,
)
from .errors import ConversionError, DatumError, InexactDivisionError
from .groebner import Ideal
from .poly import Polynomial, RingSpec, format_fraction

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# TGWA datum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TgwaDatum:
    ring: RingSpec
    sigma: tuple[Automorphism, ...]
    a: tuple[Polynomial, ...]
    mu: Matrix
    gamma: Matrix
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "mu", to_matrix(self.mu))
        object.__setattr__(self, "gamma", to_matrix(self.gamma))
        n = len(self.sigma)
        if n == 0:
            raise DatumError("rank must be at least 1")
        if len(self.a) != n:
            raise DatumError(f"rank {n} needs {n} elements a_i, got {len(self.a)}")
        for label, m in (("mu", self.mu), ("gamma", self.gamma)):
            if len(m) != n or any(len(row) != n for row in m):
                raise DatumError(f"{label} must be a {n}x{n} matrix")
            if any(m[i][k] == 0 for i in range(n) for k in range(n) if i != k):
                raise DatumError(f"off-diagonal {label} entries must be nonzero")

    @classmethod
    def from_texts(
        cls,
        ring: RingSpec,
        sigma: Sequence[Mapping[str, str]],
        a: Sequence[str],
        mu: Optional[Sequence[Sequence[object]]] = None,
        gamma: Optional[Sequence[Sequence[object]]] = None,
        params: Optional[Mapping[str, Fraction]] = None,
        name: str = "",
    ) -> "TgwaDatum":
        """gamma defaults to the eigenvalues read off sigma_i(a_k); mu defaults to all ones."""
        sigmas = tuple(Automorphism.from_images(ring, s, params) for s in sigma)
        elements = tuple(Polynomial.from_text(ring, str(x), params) for x in a)
        n = len(sigmas)
        if gamma is None:
            gamma = eigenvalue_matrix(sigmas, elements)
        if mu is None:
            mu = [[1] * n for _ in range(n)]
        return cls(ring, sigmas, elements, to_matrix(mu), to_matrix(gamma), name=name)

    @property
    def n(self) -> int:
        return len(self.sigma)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ring": self.ring.to_dict(),
            "rank": self.n,
            "sigma": [s.to_dict() for s in self.sigma],
            "a": [x.to_text() for x in self.a],
            "mu": _matrix_text(self.mu),
            "gamma": _matrix_text(self.gamma),
        }


def tgwa_fingerprint(t: TgwaDatum) -> str:
    d = t.to_dict()
    d.pop("name")
    return make_cache_key("tgwa", **d)


def _matrix_text(m: Matrix) -> list[list[str]]:
    return [[format_fraction(c) for c in row] for row in m]


def _scalar_ratio(num: Polynomial, den: Polynomial) -> Optional[Fraction]:
    """num / den when it is a nonzero rational, else None."""
    try:
        q = num.exact_divide(den)
    except InexactDivisionError:
        return None
    return q.constant_value() if q.is_constant() and q else None


def eigenvalue_matrix(sigma: Sequence[Automorphism], a: Sequence[Polynomial]) -> Matrix:
    """gamma_ik with sigma_i(a_k) = gamma_ik a_k; the diagonal is 1."""
    n = len(sigma)
    rows = []
    for i in range(n):
        row = []
        for k in range(n):
            if i == k:
                row.append(Fraction(1))
                continue
            c = _scalar_ratio(sigma[i].apply(a[k]), a[k])
            if c is None:
                raise ConversionError(
                    f"a_{k + 1} is not an eigenvector of sigma_{i + 1}",
                    witness=f"sigma_{i + 1}({a[k]}) = {sigma[i].apply(a[k])}",
                )
            row.append(c)
        rows.append(tuple(row))
    return tuple(rows)


def validate_tgwa(t: TgwaDatum) -> list[CheckEntry]:
    n = t.n
    entries: list[CheckEntry] = []
    zero = [f"a_{i + 1}" for i, x in enumerate(t.a) if x.is_zero()]
    entries.append(CheckEntry("a_i nonzero", not zero, ", ".join(zero)))

    bad = [
        f"sigma_{i + 1}, sigma_{k + 1}"
        for i in range(n) for k in range(i + 1, n)
        if not t.sigma[i].commutes_with(t.sigma[k])
    ]
    entries.append(CheckEntry("sigma commute", not bad, "; ".join(bad)))

    bad = []
    for i, k in itertools.permutations(range(n), 2):
        image = t.sigma[i].apply(t.a[k])
        if image != t.a[k].scale(t.gamma[i][k]):
            bad.append(f"sigma_{i + 1}(a_{k + 1}) = {image} != {format_fraction(t.gamma[i][k])}*({t.a[k]})")
    entries.append(CheckEntry("sigma_i(a_k) = gamma_ik a_k", not bad, "; ".join(bad)))

    bad = []
    for i in range(n):
        for k in range(i + 1, n):
            lhs = t.mu[i][k] * t.mu[k][i]
            rhs = t.gamma[i][k] * t.gamma[k][i]
            if lhs != rhs:
                bad.append(f"mu_{i + 1}{k + 1} mu_{k + 1}{i + 1} = {lhs} != {rhs}")
    entries.append(CheckEntry("mu_ik mu_ki = gamma_ik gamma_ki", not bad, "; ".join(bad)))
    return entries


# ---------------------------------------------------------------------------
# Conversion
# ---------------------------------------------------------------------------

@dataclass
class TgwaConversion:
    tgwa: TgwaDatum
    u: Matrix                                     # sigma_i(j_k) = u_ik j_k
    v: Matrix                                     # sigma_i(h_k) = v_ik h_k
    j: tuple[Polynomial, ...]
    h: tuple[Polynomial, ...]
    checks: list[CheckEntry] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "tgwa": self.tgwa.to_dict(),
            "u": _matrix_text(self.u),
            "v": _matrix_text(self.v),
            "j": [x.to_text() for x in self.j],
            "h": [x.to_text() for x in self.h],
            "checks": [c.to_dict() for c in self.checks],
        }


def _generator(I: Ideal, label: str) -> Polynomial:
    g = I.principal_generator()
    if g is None:
        raise ConversionError(f"{label} is not principal", witness=", ".join(I.to_text_list()))
    if g.is_zero():
        raise ConversionError(f"{label} is zero")
    return g


def _eigen_table(sigma: Sequence[Automorphism], gens: Sequence[Polynomial], label: str) -> Matrix:
    n = len(sigma)
    rows = []
    for i in range(n):
        row = []
        for k in range(n):
            if i == k:
                row.append(Fraction(1))
                continue
            image = sigma[i].apply(gens[k])
            try:
                q = image.exact_divide(gens[k])
            except InexactDivisionError as exc:
                raise ConversionError(
                    f"sigma_{i + 1}({label}_{k + 1}) is not a multiple of {label}_{k + 1}",
                    witness=f"sigma_{i + 1}({gens[k]}) = {image}",
                ) from exc
            if not q.is_unit():
                raise ConversionError(
                    f"sigma_{i + 1}({label}_{k + 1}) / {label}_{k + 1} is not a unit", witness=q.to_text()
                )
            if not q.is_constant():
                # sigma-invariant monomial units would make gamma a ring element
                raise ConversionError(
                    f"unit sigma_{i + 1}({label}_{k + 1}) / {label}_{k + 1} is not a scalar",
                    witness=q.to_text(),
                )
            row.append(q.constant_value())
        rows.append(tuple(row))
    return tuple(rows)


def to_tgwa(datum: BellRogalskiDatum, verify: bool = True) -> TgwaConversion:
    """
    Principal H_k = (h_k), J_k = (j_k) and scalar units give the TGWA with

        a_k = sigma_k^-1(h_k j_k),  gamma_ik = u_ik v_ik,  mu_ik = u_ki v_ik p_ik.
    """
    ok, witness = has_scalar_units(datum)
    if not ok:
        raise ConversionError("units of R are not fixed by every sigma_i", witness=witness)
    n = datum.n
    j = tuple(_generator(datum.J[k], f"J_{k + 1}") for k in range(n))
    h = tuple(_generator(datum.H[k], f"H_{k + 1}") for k in range(n))
    u = _eigen_table(datum.sigma, j, "j")
    v = _eigen_table(datum.sigma, h, "h")

    a = tuple(datum.sigma[k].inverse().apply(h[k] * j[k]) for k in range(n))
    gamma = tuple(tuple(u[i][k] * v[i][k] for k in range(n)) for i in range(n))
    mu = tuple(
        tuple(Fraction(1) if i == k else u[k][i] * v[i][k] * datum.p[i][k] for k in range(n))
        for i in range(n)
    )
    tgwa = TgwaDatum(datum.ring, datum.sigma, a, mu, gamma, name=datum.name)
    checks = validate_tgwa(tgwa)
    if verify:
        checks.extend(verify_tgwa_relations(datum, tgwa, j=j, h=h))
    logger.info("to_tgwa rank %d: %d/%d checks passed", n, sum(c.passed for c in checks), len(checks))
    return TgwaConversion(tgwa, u, v, j, h, checks)


def from_tgwa(t: TgwaDatum) -> BellRogalskiDatum:
    """H_i = R, J_i = (sigma_i(a_i)), p_ik = mu_ik / gamma_ki."""
    n = t.n
    p = tuple(
        tuple(Fraction(1) if i == k else t.mu[i][k] / t.gamma[k][i] for k in range(n))
        for i in range(n)
    )
    return BellRogalskiDatum(
        t.ring,
        t.sigma,
        p,
        tuple(Ideal.unit(t.ring) for _ in range(n)),
        tuple(Ideal.principal(t.sigma[i].apply(t.a[i])) for i in range(n)),
        name=t.name,
    )


def round_trip_defects(t: TgwaDatum) -> list[str]:
    """Where to_tgwa(from_tgwa(t)) differs from t; empty on success."""
    back = to_tgwa(from_tgwa(t), verify=False).tgwa
    bad = []
    for i in range(t.n):
        if back.a[i] != t.a[i]:
            bad.append(f"a_{i + 1}: {back.a[i]} != {t.a[i]}")
        for k in range(t.n):
            if i == k:
                continue
            if back.mu[i][k] != t.mu[i][k]:
                bad.append(f"mu_{i + 1}{k + 1}: {back.mu[i][k]} != {t.mu[i][k]}")
            if back.gamma[i][k] != t.gamma[i][k]:
                bad.append(f"gamma_{i + 1}{k + 1}: {back.gamma[i][k]} != {t.gamma[i][k]}")
    return bad


# ---------------------------------------------------------------------------
# Defining relations inside B
# ---------------------------------------------------------------------------

def verify_tgwa_relations(
    datum: BellRogalskiDatum,
    tgwa: TgwaDatum,
    j: Optional[Sequence[Polynomial]] = None,
    h: Optional[Sequence[Polynomial]] = None,
) -> list[CheckEntry]:
    """Check the TGWA relations on X_i^+ = j_i t_i, X_i^- = sigma_i^-1(h_i) t_i^-1."""
    n = datum.n
    j = j or tuple(_generator(I, "J") for I in datum.J)
    h = h or tuple(_generator(I, "H") for I in datum.H)
    zero_degree = (0,) * n

    def elem(alpha, c: Polynomial) -> GradedElement:
        return GradedElement.homogeneous(datum, alpha, c, verify=False)

    plus = [elem(unit_vector(n, i), j[i]) for i in range(n)]
    minus = [elem(unit_vector(n, i, -1), datum.sigma[i].inverse().apply(h[i])) for i in range(n)]

    def mul(x: GradedElement, y: GradedElement) -> GradedElement:
        return multiply(x, y, verify=False)

    entries: list[CheckEntry] = []

    bad = []
    for i in range(n):
        inv = datum.sigma[i].inverse()
        for r in ring_generators(datum.ring):
            if mul(plus[i], elem(zero_degree, r)) != mul(elem(zero_degree, datum.sigma[i].apply(r)), plus[i]):
                bad.append(f"X_{i + 1}^+ {r}")
            if mul(minus[i], elem(zero_degree, r)) != mul(elem(zero_degree, inv.apply(r)), minus[i]):
                bad.append(f"X_{i + 1}^- {r}")
    entries.append(CheckEntry("X_i^± r = sigma_i^±1(r) X_i^±", not bad, "; ".join(bad)))

    bad = []
    for i in range(n):
        if mul(minus[i], plus[i]) != elem(zero_degree, tgwa.a[i]):
            bad.append(f"X_{i + 1}^- X_{i + 1}^+")
        if mul(plus[i], minus[i]) != elem(zero_degree, tgwa.sigma[i].apply(tgwa.a[i])):
            bad.append(f"X_{i + 1}^+ X_{i + 1}^-")
    entries.append(CheckEntry("X_i^- X_i^+ = a_i, X_i^+ X_i^- = sigma_i(a_i)", not bad, "; ".join(bad)))

    bad = []
    for i, k in itertools.permutations(range(n), 2):
        if mul(plus[i], minus[k]) != mul(minus[k], plus[i]).scale(tgwa.mu[i][k]):
            bad.append(f"X_{i + 1}^+ X_{k + 1}^-")
    entries.append(CheckEntry("X_i^+ X_k^- = mu_ik X_k^- X_i^+", not bad, "; ".join(bad)))

    bad = []
    for i, k in itertools.permutations(range(n), 2):
        c = tgwa.gamma[i][k] / tgwa.mu[i][k]
        if mul(plus[i], plus[k]) != mul(plus[k], plus[i]).scale(c):
            bad.append(f"X_{i + 1}^+ X_{k + 1}^+")
    entries.append(CheckEntry("X_i^+ X_k^+ = gamma_ik mu_ik^-1 X_k^+ X_i^+", not bad, "; ".join(bad)))

    bad = []
    for i, k in itertools.permutations(range(n), 2):
        c = tgwa.gamma[i][k] / tgwa.mu[k][i]
        if mul(minus[k], minus[i]) != mul(minus[i], minus[k]).scale(c):
            bad.append(f"X_{k + 1}^- X_{i + 1}^-")
    entries.append(CheckEntry("X_k^- X_i^- = gamma_ik mu_ki^-1 X_i^- X_k^-", not bad, "; ".join(bad)))
    return entries


def tgwa_to_datum_checked(t: TgwaDatum) -> tuple[BellRogalskiDatum, list[CheckEntry]]:
    """from_tgwa plus the datum axioms and the relations of the result."""
    entries = validate_tgwa(t)
    if not checks_passed(entries):
        failed = next(e for e in entries if not e.passed)
        raise DatumError(f"invalid TGWA datum: {failed.name}", witness=failed.detail)
    datum = from_tgwa(t)
    entries.extend(validate(datum))
    entries.extend(verify_tgwa_relations(datum, t))
    return datum, entries
