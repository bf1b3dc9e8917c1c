"""
core/groebner.py

Buchberger's algorithm over Q and the Ideal type built on top of it.

A Laurent ideal is represented by its polynomial contraction: generators are
cleared of invertible-variable content and the ideal is saturated at the
product of the invertible variables that occur, through a fresh variable y
and the relation 1 - y*w under a block elimination order.
"""
from __future__ import annotations

import logging
import operator
import threading
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import sympy as sp

from .errors import NonRationalLocusError, PositiveDimensionalError, RingMismatchError
from .poly import Exponent, MonomialKey, Polynomial, RingSpec, monomial_key, sorted_polys

logger = logging.getLogger(__name__)

Terms = dict[Exponent, Fraction]
Point = tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# Engine on raw term dictionaries
# ---------------------------------------------------------------------------

def _add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(operator.add, a, b))


def _sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(operator.sub, a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(max, a, b))


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lead(f: Terms, key: MonomialKey) -> Exponent:
    return max(f, key=key)


def _monic(f: Terms, key: MonomialKey) -> Terms:
    lc = f[_lead(f, key)]
    return {e: c / lc for e, c in f.items()}


def _reduce(f: Terms, basis: Sequence[Terms], leads: Sequence[Exponent], key: MonomialKey) -> Terms:
    """Full normal form of f modulo basis (monic, with precomputed leading monomials)."""
    f = dict(f)
    rem: Terms = {}
    while f:
        lm = _lead(f, key)
        c = f[lm]
        for g, lg in zip(basis, leads):
            if _divides(lg, lm):
                q = c / g[lg]
                m = _sub(lm, lg)
                for e, v in g.items():
                    t = _add(e, m)
                    s = f.get(t, 0) - q * v
                    if s:
                        f[t] = s
                    else:
                        f.pop(t, None)
                break
        else:
            rem[lm] = c
            del f[lm]
    return rem


def _spoly(f: Terms, g: Terms, lf: Exponent, lg: Exponent) -> Terms:
    L = _lcm(lf, lg)
    mf, mg = _sub(L, lf), _sub(L, lg)
    cf, cg = f[lf], g[lg]
    out: Terms = {}
    for e, c in f.items():
        t = _add(e, mf)
        out[t] = out.get(t, 0) + c / cf
    for e, c in g.items():
        t = _add(e, mg)
        out[t] = out.get(t, 0) - c / cg
    return {e: c for e, c in out.items() if c}


def _update(
    leads: Sequence[Exponent],
    pairs: set[tuple[int, int]],
    lf: Exponent,
    key: MonomialKey,
) -> set[tuple[int, int]]:
    """Gebauer-Moeller pair update when a polynomial with leading monomial lf joins."""
    k = len(leads)
    kept = set()
    for i, j in pairs:
        Lij = _lcm(leads[i], leads[j])
        if (not _divides(lf, Lij)
                or Lij == _lcm(leads[i], lf)
                or Lij == _lcm(leads[j], lf)):
            kept.add((i, j))
    by_lcm: dict[Exponent, list[int]] = {}
    for i in range(k):
        by_lcm.setdefault(_lcm(leads[i], lf), []).append(i)
    minimal: list[Exponent] = []
    for L in sorted(by_lcm, key=key):
        if all(not _divides(M, L) for M in minimal):
            minimal.append(L)
    new = set()
    for L in minimal:
        # product criterion: coprime leading monomials never need a pair
        if not any(_lcm(leads[i], lf) == _add(leads[i], lf) for i in by_lcm[L]):
            new.add((min(by_lcm[L]), k))
    return kept | new


def buchberger(polys: Iterable[Terms], key: MonomialKey) -> list[Terms]:
    """Reduced Groebner basis (monic, sorted by descending leading monomial)."""
    G: list[Terms] = []
    leads: list[Exponent] = []
    pairs: set[tuple[int, int]] = set()
    for f in polys:
        if not f:
            continue
        f = _monic(f, key)
        lf = _lead(f, key)
        pairs = _update(leads, pairs, lf, key)
        G.append(f)
        leads.append(lf)

    reductions = 0
    while pairs:
        i, j = min(pairs, key=lambda p: (key(_lcm(leads[p[0]], leads[p[1]])), p))
        pairs.remove((i, j))
        s = _spoly(G[i], G[j], leads[i], leads[j])
        r = _reduce(s, G, leads, key)
        reductions += 1
        if r:
            r = _monic(r, key)
            lr = _lead(r, key)
            pairs = _update(leads, pairs, lr, key)
            G.append(r)
            leads.append(lr)
    logger.debug("buchberger: %d pairs reduced, %d intermediate polynomials", reductions, len(G))

    # minimalize, then interreduce
    order = sorted(range(len(G)), key=lambda idx: key(leads[idx]))
    minimal: list[int] = []
    for idx in order:
        if all(not _divides(leads[m], leads[idx]) for m in minimal):
            minimal.append(idx)
    reduced: list[Terms] = []
    for pos, idx in enumerate(minimal):
        others = [m for m in minimal if m != idx]
        g = _reduce(G[idx], [G[m] for m in others], [leads[m] for m in others], key)
        reduced.append(_monic(g, key))
    reduced.sort(key=lambda g: key(_lead(g, key)), reverse=True)
    return reduced


# ---------------------------------------------------------------------------
# Saturation at the invertible variables
# ---------------------------------------------------------------------------

def _elimination_key(base: MonomialKey) -> MonomialKey:
    return lambda e: (e[0],) + (base(e[1:]),)


def _saturated_basis(ring: RingSpec, generators: Sequence[Polynomial]) -> tuple[Polynomial, ...]:
    key = ring.key
    stripped = [g.strip_content() for g in generators if g]
    if not stripped:
        return ()
    if any(g.is_constant() for g in stripped):
        return (ring.one(),)
    if len(stripped) == 1:
        return (stripped[0].monic(),)

    occurring = sorted(
        j for g in stripped for j in g.variables_used() if ring.invertible[j]
    )
    occurring = sorted(set(occurring))
    if not occurring:
        basis = buchberger([dict(g.terms) for g in stripped], key)
    else:
        # y is coordinate 0 of the extended exponent vectors
        ext_key = _elimination_key(key)
        ext = [{(0,) + e: c for e, c in g.terms.items()} for g in stripped]
        w = [0] * (ring.nvars + 1)
        w[0] = 1
        for j in occurring:
            w[j + 1] = 1
        ext.append({(0,) * (ring.nvars + 1): Fraction(1), tuple(w): Fraction(-1)})
        big = buchberger(ext, ext_key)
        basis = [{e[1:]: c for e, c in g.items()} for g in big if all(e[0] == 0 for e in g)]
        # the y-free part is a Groebner basis for the base order; re-reduce it
        basis = buchberger(basis, key)
    return tuple(Polynomial._make(ring, g) for g in basis)


# ---------------------------------------------------------------------------
# Ideal
# ---------------------------------------------------------------------------

class Ideal:
    """Ideal of a RingSpec given by generators, with a lazily computed reduced basis."""

    __slots__ = ("ring", "generators", "_gb", "_lock")

    def __init__(self, ring: RingSpec, generators: Iterable[Polynomial] = ()) -> None:
        gens = set()
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError(
                    f"generator {g} lives in {g.ring.describe()}, not {ring.describe()}"
                )
            if g:
                gens.add(g)
        self.ring = ring
        self.generators: tuple[Polynomial, ...] = tuple(sorted_polys(gens))
        self._gb: Optional[tuple[Polynomial, ...]] = None
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: RingSpec) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring: RingSpec) -> "Ideal":
        return cls(ring, [])

    @classmethod
    def principal(cls, f: Polynomial) -> "Ideal":
        return cls(f.ring, [f])

    def groebner(self) -> tuple[Polynomial, ...]:
        """Reduced basis of the saturated contraction; computed once."""
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = _saturated_basis(self.ring, self.generators)
        return self._gb

    def compact(self) -> "Ideal":
        """The same ideal, generated by its reduced basis."""
        out = Ideal(self.ring, self.groebner())
        out._gb = self.groebner()
        return out

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f} is not an element of {self.ring.describe()}")
        basis = self.groebner()
        if not basis:
            return f.strip_content()
        key = self.ring.key
        terms = [dict(g.terms) for g in basis]
        leads = [_lead(g, key) for g in terms]
        return Polynomial._make(self.ring, _reduce(dict(f.strip_content().terms), terms, leads, key))

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        return self.normal_form(f).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def is_unit(self) -> bool:
        basis = self.groebner()
        return len(basis) == 1 and basis[0].is_constant()

    def is_zero(self) -> bool:
        return not self.generators

    def vanishes_at(self, point: Sequence[Fraction]) -> bool:
        """True iff the ideal lies in the maximal ideal of the point."""
        return all(g.evaluate(point) == 0 for g in self.generators)

    def principal_generator(self) -> Optional[Polynomial]:
        """A single generator when the ideal is principal, else None."""
        if len(self.generators) <= 1:
            return self.generators[0] if self.generators else self.ring.zero()
        basis = self.groebner()
        return basis[0] if len(basis) == 1 else None

    def is_principal(self) -> bool:
        return self.principal_generator() is not None

    def zero_dimensional_points(self) -> list[Point]:
        return rational_points(self)

    def is_zero_dimensional(self) -> bool:
        basis = self.groebner()
        if self.is_unit():
            return True
        pure = set()
        for g in basis:
            lm, _ = g.leading_term()
            used = [j for j, x in enumerate(lm) if x]
            if len(used) == 1:
                pure.add(used[0])
        return len(pure) == self.ring.nvars

    def to_text_list(self) -> list[str]:
        return [g.to_text() for g in self.generators]

    def __repr__(self) -> str:
        return "Ideal(" + ", ".join(self.to_text_list()) + ")"


# ---------------------------------------------------------------------------
# Ideal operations
# ---------------------------------------------------------------------------

def _check_same_ring(I: Ideal, K: Ideal) -> None:
    if I.ring != K.ring:
        raise RingMismatchError(f"ring mismatch: {I.ring.describe()} vs {K.ring.describe()}")


def groebner(I: Ideal) -> list[Polynomial]:
    return list(I.groebner())


def ideal_product(I: Ideal, K: Ideal) -> Ideal:
    _check_same_ring(I, K)
    return Ideal(I.ring, [f * g for f in I.generators for g in K.generators])


def ideal_product_all(ring: RingSpec, ideals: Iterable[Ideal]) -> Ideal:
    out = Ideal.unit(ring)
    for I in ideals:
        out = ideal_product(out, I).compact()
    return out


def ideal_sum(I: Ideal, K: Ideal) -> Ideal:
    _check_same_ring(I, K)
    return Ideal(I.ring, I.generators + K.generators)


def ideal_equal(I: Ideal, K: Ideal) -> bool:
    _check_same_ring(I, K)
    return K.contains_ideal(I) and I.contains_ideal(K)


def contains(I: Ideal, f: Polynomial) -> bool:
    return I.contains(f)


def is_unit(I: Ideal) -> bool:
    return I.is_unit()


def maximal_ideal(ring: RingSpec, point: Sequence[Fraction]) -> Ideal:
    """I(pt) = (x_1 - a_1, ..., x_N - a_N)."""
    return Ideal(ring, [ring.var(j) - Fraction(a) for j, a in enumerate(point)])


# ---------------------------------------------------------------------------
# Rational roots and zero-dimensional solving
# ---------------------------------------------------------------------------

def rational_roots(f: Polynomial, j: int) -> list[Fraction]:
    """Distinct rational roots of a polynomial in x_j alone; raises if a root is not rational."""
    sym = sp.Symbol(f.ring.variables[j])
    poly = sp.Poly(f.strip_content().as_expr(), sym, domain="QQ")
    if poly.degree() <= 0:
        return []
    sqf = poly.sqf_part()
    roots = sqf.ground_roots()
    if sum(roots.values()) < sqf.degree():
        raise NonRationalLocusError(f"{f} has roots outside Q", witness=f.to_text())
    return sorted(Fraction(int(r.p), int(r.q)) for r in roots)


def integer_roots(f: Polynomial, j: int) -> list[int]:
    """Distinct integer roots of a polynomial in x_j alone (other roots are ignored)."""
    sym = sp.Symbol(f.ring.variables[j])
    poly = sp.Poly(f.as_expr(), sym, domain="QQ")
    if poly.degree() <= 0:
        return []
    return sorted(int(r) for r in poly.sqf_part().ground_roots() if r.is_integer)


def rational_points(I: Ideal) -> list[Point]:
    """All points of V(I) when I is zero-dimensional with rational points."""
    ring = I.ring.with_order("lex")
    lex = Ideal(ring, [Polynomial._make(ring, g.terms) for g in I.generators])
    if lex.is_unit():
        return []
    if not lex.is_zero_dimensional():
        raise PositiveDimensionalError(f"V{I!r} is not finite")
    points = _solve(ring, list(lex.groebner()), ring.nvars - 1, {})
    return sorted(points)


def _solve(
    ring: RingSpec,
    basis: list[Polynomial],
    level: int,
    fixed: dict[int, Fraction],
) -> list[Point]:
    if level < 0:
        return [tuple(fixed[j] for j in range(ring.nvars))]
    univariate = [g for g in basis if g.variables_used() <= {level}]
    if not univariate:
        raise PositiveDimensionalError(f"no eliminant in {ring.variables[level]!r}")
    out: list[Point] = []
    for r in rational_roots(univariate[-1], level):
        if ring.invertible[level] and r == 0:
            continue
        images = [ring.var(k) if k != level else ring.const(r) for k in range(ring.nvars)]
        rest = Ideal(ring, [g.substitute(images, ring) for g in basis])
        if rest.is_unit():
            continue
        out.extend(_solve(ring, list(rest.groebner()), level - 1, {**fixed, level: r}))
    return out
