"""
core/automorphism.py

Scaled affine-monomial automorphisms x_j -> c_j * x_perm(j) + d_j, ring maps
given by variable images, and rational points with the orbit action.

Points transform contravariantly: sigma(I(a)) = I(b) with
b_perm(j) = (a_j - d_j) / c_j.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .errors import AutomorphismError, PointError, RingError, RingMismatchError, UnsupportedError
from .groebner import Ideal
from .lattice import ExponentSet, solve_affine_orbit
from .poly import Polynomial, RingSpec, to_fraction

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Rational points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightPoint:
    """A rational maximal ideal of R, stored by its coordinates."""
    ring: RingSpec
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(to_fraction(a) for a in self.coords))
        if len(self.coords) != self.ring.nvars:
            raise PointError(
                f"point has {len(self.coords)} coordinates, ring {self.ring.describe()} has {self.ring.nvars}"
            )
        for name, inv, a in zip(self.ring.variables, self.ring.invertible, self.coords):
            if inv and a == 0:
                raise PointError(f"zero coordinate on invertible variable {name!r}")

    @classmethod
    def parse(cls, ring: RingSpec, text: str) -> "WeightPoint":
        """`u=-1,v=1`; variables not named default to 0 (or 1 when invertible)."""
        values: dict[str, Fraction] = {}
        for item in filter(None, (s.strip() for s in text.replace(";", ",").split(","))):
            if "=" not in item:
                raise PointError(f"expected name=value, got {item!r}")
            name, value = (s.strip() for s in item.split("=", 1))
            ring.index(name)
            values[name] = to_fraction(value)
        coords = [
            values.get(name, Fraction(1) if inv else Fraction(0))
            for name, inv in zip(ring.variables, ring.invertible)
        ]
        return cls(ring, tuple(coords))

    def evaluate(self, f: Polynomial) -> Fraction:
        return f.evaluate(self.coords)

    def maximal_ideal(self) -> Ideal:
        return Ideal(self.ring, [self.ring.var(j) - a for j, a in enumerate(self.coords)])

    def to_text(self) -> str:
        return ",".join(f"{name}={a}" for name, a in zip(self.ring.variables, self.coords))

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.coords) + ")"


# ---------------------------------------------------------------------------
# Automorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Automorphism:
    """x_j -> scale[j] * x_perm[j] + shift[j]."""
    ring: RingSpec
    perm: tuple[int, ...]
    scale: tuple[Fraction, ...]
    shift: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        n = self.ring.nvars
        object.__setattr__(self, "perm", tuple(int(k) for k in self.perm))
        object.__setattr__(self, "scale", tuple(to_fraction(c) for c in self.scale))
        object.__setattr__(self, "shift", tuple(to_fraction(d) for d in self.shift))
        if not (len(self.perm) == len(self.scale) == len(self.shift) == n):
            raise AutomorphismError("perm, scale and shift need one entry per variable")
        if sorted(self.perm) != list(range(n)):
            raise AutomorphismError(f"{self.perm} is not a permutation of the variables")
        for j in range(n):
            name = self.ring.variables[j]
            if self.scale[j] == 0:
                raise AutomorphismError(f"zero scale on {name!r}")
            if self.ring.invertible[j] != self.ring.invertible[self.perm[j]]:
                raise AutomorphismError(
                    f"{name!r} and {self.ring.variables[self.perm[j]]!r} differ in invertibility"
                )
            if self.ring.invertible[j] and self.shift[j] != 0:
                raise AutomorphismError(f"shift on invertible variable {name!r}")

    # -- construction -------------------------------------------------------

    @classmethod
    def identity(cls, ring: RingSpec) -> "Automorphism":
        n = ring.nvars
        return cls(ring, tuple(range(n)), (Fraction(1),) * n, (Fraction(0),) * n)

    @classmethod
    def diagonal(
        cls,
        ring: RingSpec,
        scale: Optional[Mapping[str, Union[int, Fraction]]] = None,
        shift: Optional[Mapping[str, Union[int, Fraction]]] = None,
    ) -> "Automorphism":
        scale, shift = scale or {}, shift or {}
        return cls(
            ring,
            tuple(range(ring.nvars)),
            tuple(to_fraction(scale.get(v, 1)) for v in ring.variables),
            tuple(to_fraction(shift.get(v, 0)) for v in ring.variables),
        )

    @classmethod
    def from_images(
        cls,
        ring: RingSpec,
        images: Mapping[str, Union[Polynomial, str]],
        params: Optional[Mapping[str, Fraction]] = None,
    ) -> "Automorphism":
        """Variables missing from `images` are fixed."""
        n = ring.nvars
        perm, scale, shift = list(range(n)), [Fraction(1)] * n, [Fraction(0)] * n
        for name, image in images.items():
            j = ring.index(name)
            f = image if isinstance(image, Polynomial) else Polynomial.from_text(ring, str(image), params)
            linear = [(e, c) for e, c in f.terms.items() if any(e)]
            const = f.terms.get((0,) * n, Fraction(0))
            if len(linear) != 1 or sum(linear[0][0]) != 1 or any(x < 0 for x in linear[0][0]):
                raise AutomorphismError(
                    f"image of {name!r} must have the form c*x + d", witness=f"{name} -> {f}"
                )
            e, c = linear[0]
            perm[j] = e.index(1)
            scale[j] = c
            shift[j] = const
        return cls(ring, tuple(perm), tuple(scale), tuple(shift))

    # -- views --------------------------------------------------------------

    def images(self) -> list[Polynomial]:
        return [
            self.ring.var(self.perm[j]).scale(self.scale[j]) + self.shift[j]
            for j in range(self.ring.nvars)
        ]

    def to_dict(self) -> dict:
        return {name: f.to_text() for name, f in zip(self.ring.variables, self.images())}

    def is_identity(self) -> bool:
        return self == Automorphism.identity(self.ring)

    def is_diagonal(self) -> bool:
        return self.perm == tuple(range(self.ring.nvars))

    def coordinate_rule(self, j: int) -> tuple[Fraction, Fraction]:
        """(c, d) of x_j -> c x_j + d; only for diagonal automorphisms."""
        if self.perm[j] != j:
            raise UnsupportedError(f"{self.ring.variables[j]!r} is permuted")
        return self.scale[j], self.shift[j]

    def __str__(self) -> str:
        return "{" + ", ".join(f"{k}: {v}" for k, v in self.to_dict().items()) + "}"

    # -- algebra ------------------------------------------------------------

    def apply(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f} is not an element of {self.ring.describe()}")
        return f.substitute(self.images(), self.ring)

    def apply_ideal(self, I: Ideal) -> Ideal:
        return Ideal(self.ring, [self.apply(g) for g in I.generators])

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self o other: apply other first, then self."""
        if other.ring != self.ring:
            raise RingMismatchError("automorphisms of different rings")
        n = self.ring.nvars
        perm, scale, shift = [], [], []
        for j in range(n):
            k = other.perm[j]
            perm.append(self.perm[k])
            scale.append(other.scale[j] * self.scale[k])
            shift.append(other.scale[j] * self.shift[k] + other.shift[j])
        return Automorphism(self.ring, tuple(perm), tuple(scale), tuple(shift))

    def inverse(self) -> "Automorphism":
        n = self.ring.nvars
        perm, scale, shift = [0] * n, [Fraction(1)] * n, [Fraction(0)] * n
        for j in range(n):
            k = self.perm[j]
            # sigma(x_j) = c x_k + d  =>  sigma^-1(x_k) = (x_j - d) / c
            perm[k] = j
            scale[k] = 1 / self.scale[j]
            shift[k] = -self.shift[j] / self.scale[j]
        return Automorphism(self.ring, tuple(perm), tuple(scale), tuple(shift))

    def power(self, k: int) -> "Automorphism":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Automorphism.identity(self.ring)
        while k:
            if k & 1:
                result = result.compose(base)
            base = base.compose(base)
            k >>= 1
        return result

    def commutes_with(self, other: "Automorphism") -> bool:
        return self.compose(other) == other.compose(self)

    # -- points -------------------------------------------------------------

    def act_point(self, pt: WeightPoint) -> WeightPoint:
        if pt.ring != self.ring:
            raise RingMismatchError("point and automorphism over different rings")
        b = [Fraction(0)] * self.ring.nvars
        for j in range(self.ring.nvars):
            b[self.perm[j]] = (pt.coords[j] - self.shift[j]) / self.scale[j]
        return WeightPoint(self.ring, tuple(b))


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------

def apply(sigma: Automorphism, f: Polynomial) -> Polynomial:
    return sigma.apply(f)


def apply_ideal(sigma: Automorphism, I: Ideal) -> Ideal:
    return sigma.apply_ideal(I)


def power(sigma: Automorphism, k: int) -> Automorphism:
    return sigma.power(k)


def commute(sigma: Automorphism, tau: Automorphism) -> bool:
    return sigma.commutes_with(tau)


def act_point(sigma: Automorphism, pt: WeightPoint) -> WeightPoint:
    return sigma.act_point(pt)


def is_locally_algebraic(sigma: Automorphism) -> tuple[bool, str]:
    """Always true in this class; returns the orbit-span justification."""
    spans = []
    seen: set[int] = set()
    for j in range(sigma.ring.nvars):
        if j in seen:
            continue
        cycle = [j]
        k = sigma.perm[j]
        while k != j:
            cycle.append(k)
            k = sigma.perm[k]
        seen.update(cycle)
        names = ", ".join(sigma.ring.variables[k] for k in sorted(cycle))
        has_shift = any(sigma.shift[k] for k in cycle)
        spans.append("span{" + ("1, " if has_shift else "") + names + "}")
    return True, "scaled affine-monomial class: variable orbits lie in " + "; ".join(spans)


def compose_all(sigmas: Sequence[Automorphism], alpha: Sequence[int]) -> Automorphism:
    """sigma^alpha = sigma_1^alpha_1 ... sigma_n^alpha_n (the factors commute)."""
    if not sigmas:
        raise AutomorphismError("empty automorphism tuple")
    out = Automorphism.identity(sigmas[0].ring)
    for s, a in zip(sigmas, alpha):
        if a:
            out = out.compose(s.power(a))
    return out


def orbit_point(sigmas: Sequence[Automorphism], pt: WeightPoint, alpha: Sequence[int]) -> WeightPoint:
    return compose_all(sigmas, alpha).act_point(pt)


def solve_orbit_exponent(sigma: Automorphism, pt: WeightPoint, target: WeightPoint) -> ExponentSet:
    """All k with act_point(sigma^k, pt) = target, in closed form for diagonal sigma."""
    if not sigma.is_diagonal():
        raise UnsupportedError("closed-form orbit equations need a diagonal automorphism")
    out = ExponentSet.everything()
    for j in range(sigma.ring.nvars):
        c, d = sigma.coordinate_rule(j)
        out = out.intersect(solve_affine_orbit(c, d, pt.coords[j], target.coords[j]))
        if out.empty:
            break
    return out


# ---------------------------------------------------------------------------
# Ring maps between different rings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RingMap:
    """Q-algebra map source -> target given by the images of the source variables."""
    source: RingSpec
    target: RingSpec
    images: tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source.nvars:
            raise RingError("one image per source variable is required")
        for name, inv, f in zip(self.source.variables, self.source.invertible, self.images):
            if f.ring != self.target:
                raise RingMismatchError(f"image of {name!r} is not in {self.target.describe()}")
            if inv and not f.is_unit():
                raise RingError(f"invertible {name!r} must map to a unit, got {f}")

    @classmethod
    def from_texts(
        cls,
        source: RingSpec,
        target: RingSpec,
        images: Mapping[str, str],
        params: Optional[Mapping[str, Fraction]] = None,
    ) -> "RingMap":
        """Variables missing from `images` map to the same-named target variable."""
        out = []
        for name in source.variables:
            text = images.get(name, name)
            out.append(Polynomial.from_text(target, str(text), params))
        return cls(source, target, tuple(out))

    @classmethod
    def inclusion(cls, source: RingSpec, target: RingSpec, names: Optional[Sequence[str]] = None) -> "RingMap":
        names = names or source.variables
        return cls(source, target, tuple(target.var(n) for n in names))

    def apply(self, f: Polynomial) -> Polynomial:
        if f.ring != self.source:
            raise RingMismatchError(f"{f} is not an element of {self.source.describe()}")
        return f.substitute(self.images, self.target)

    def apply_ideal(self, I: Ideal) -> Ideal:
        return Ideal(self.target, [self.apply(g) for g in I.generators])

    def after(self, sigma: Automorphism) -> "RingMap":
        """self o sigma."""
        return RingMap(self.source, self.target, tuple(self.apply(f) for f in sigma.images()))

    def before(self, sigma: Automorphism) -> "RingMap":
        """sigma o self, with sigma an automorphism of the target."""
        return RingMap(self.source, self.target, tuple(sigma.apply(f) for f in self.images))

    def to_dict(self) -> dict:
        return {name: f.to_text() for name, f in zip(self.source.variables, self.images)}
