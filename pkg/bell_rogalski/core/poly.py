"""
core/poly.py

Sparse exact-rational polynomials over Q, with optional Laurent variables.

Canonical text form: terms sorted largest-first by the ring's monomial order,
coefficients written a/b, variables joined by `*` with `^` exponents, e.g.
`3/2*u^-1*v + 1`.
"""
from __future__ import annotations

import logging
import operator
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

import sympy as sp
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from .errors import InexactDivisionError, ParseError, PointError, RingError, RingMismatchError

logger = logging.getLogger(__name__)

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]
MonomialKey = Callable[[Exponent], tuple]

ORDERS = ("degrevlex", "lex")

_TRANSFORMATIONS = standard_transformations + (convert_xor,)


# ---------------------------------------------------------------------------
# Monomial orders
# ---------------------------------------------------------------------------

def degrevlex_key(e: Exponent) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e: Exponent) -> tuple:
    return e


def monomial_key(order: str) -> MonomialKey:
    if order == "degrevlex":
        return degrevlex_key
    if order == "lex":
        return lex_key
    raise RingError(f"unknown monomial order {order!r}")


def to_fraction(value: object) -> Fraction:
    """Exact rational from int, Fraction, sympy Rational or text such as `3/2`."""
    if isinstance(value, bool):
        raise ParseError(f"not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # decimal as written, never the binary expansion
        return Fraction(repr(value))
    if isinstance(value, sp.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {value!r}") from exc
    raise ParseError(f"not a rational number: {value!r}")


def format_fraction(c: Fraction) -> str:
    return str(c)


# ---------------------------------------------------------------------------
# Ring specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RingSpec:
    """Q[x_1, ..., x_N] with some variables inverted."""
    variables: tuple[str, ...]
    invertible: tuple[bool, ...]
    order: str = "degrevlex"

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "invertible", tuple(bool(b) for b in self.invertible))
        if not self.variables:
            raise RingError("a ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise RingError(f"duplicate variable names in {self.variables}")
        for name in self.variables:
            if not name or not name.isidentifier():
                raise RingError(f"invalid variable name {name!r}")
        if len(self.invertible) != len(self.variables):
            raise RingError("one invertible flag per variable is required")
        if self.order not in ORDERS:
            raise RingError(f"unknown monomial order {self.order!r}")

    @classmethod
    def polynomial(cls, *names: str) -> "RingSpec":
        return cls(tuple(names), (False,) * len(names))

    @classmethod
    def laurent(cls, *names: str) -> "RingSpec":
        return cls(tuple(names), (True,) * len(names))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def key(self) -> MonomialKey:
        return monomial_key(self.order)

    @property
    def is_laurent(self) -> bool:
        return all(self.invertible)

    @property
    def laurent_indices(self) -> tuple[int, ...]:
        return tuple(j for j, inv in enumerate(self.invertible) if inv)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise RingError(f"unknown variable {name!r} (ring has {', '.join(self.variables)})") from None

    def with_order(self, order: str) -> "RingSpec":
        return replace(self, order=order)

    def describe(self) -> str:
        names = [f"{v}^±1" if inv else v for v, inv in zip(self.variables, self.invertible)]
        return "Q[" + ", ".join(names) + "]"

    def to_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "invertible": [v for v, inv in zip(self.variables, self.invertible) if inv],
            "order": self.order,
        }

    # -- element builders ---------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial._make(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: Scalar) -> "Polynomial":
        c = to_fraction(c)
        return Polynomial._make(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: Union[str, int]) -> "Polynomial":
        j = name if isinstance(name, int) else self.index(name)
        e = [0] * self.nvars
        e[j] = 1
        return Polynomial._make(self, {tuple(e): Fraction(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.var(j) for j in range(self.nvars)]

    def monomial(self, e: Sequence[int], c: Scalar = 1) -> "Polynomial":
        return Polynomial(self, {tuple(e): c})

    def parse(self, text: str, params: Optional[Mapping[str, Fraction]] = None) -> "Polynomial":
        return Polynomial.from_text(self, text, params)


# ---------------------------------------------------------------------------
# Polynomial
# ---------------------------------------------------------------------------

def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(operator.add, a, b))


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(operator.sub, a, b))


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


class Polynomial:
    """Immutable element of a RingSpec; `terms` maps exponent vectors to nonzero rationals."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Optional[Mapping[Sequence[int], Scalar]] = None) -> None:
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != ring.nvars:
                raise RingError(f"exponent {e} has wrong length for {ring.describe()}")
            for j, x in enumerate(e):
                if x < 0 and not ring.invertible[j]:
                    raise RingError(
                        f"negative exponent on non-invertible variable {ring.variables[j]!r}"
                    )
            c = to_fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        self.ring = ring
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash: Optional[int] = None

    @classmethod
    def _make(cls, ring: RingSpec, terms: dict[Exponent, Fraction]) -> "Polynomial":
        """Trusted constructor: terms already validated, no zero coefficients."""
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def sort_key(self) -> tuple:
        """Leading monomial first, then the full term list (largest first)."""
        key = self.ring.key
        items = sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)
        return tuple((key(e), c) for e, c in items)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise RingError(f"{self} is not a constant")
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """Units of a Laurent-capable ring: c * (monomial in invertible variables)."""
        if len(self.terms) != 1:
            return False
        (e,) = self.terms
        return all(x == 0 or inv for x, inv in zip(e, self.ring.invertible))

    def variables_used(self) -> set[int]:
        return {j for e in self.terms for j, x in enumerate(e) if x}

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: object) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(
                    f"ring mismatch: {self.ring.describe()} vs {other.ring.describe()}"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.const(other)
        return None

    def __add__(self, other: object) -> "Polynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._make(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._make(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: object) -> "Polynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "Polynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._make(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Polynomial":
        c = to_fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._make(self.ring, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            return self.inverse_unit() ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse_unit(self) -> "Polynomial":
        if not self.is_unit():
            raise RingError(f"{self} is not a unit of {self.ring.describe()}")
        ((e, c),) = self.terms.items()
        return Polynomial._make(self.ring, {tuple(-x for x in e): 1 / c})

    def shift(self, e: Exponent) -> "Polynomial":
        """Multiply by the monomial x^e (may leave the ring if e is negative on a polynomial variable)."""
        return Polynomial(self.ring, {_add_exp(m, e): c for m, c in self.terms.items()})

    # -- orders and normal forms -------------------------------------------

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise RingError("the zero polynomial has no leading term")
        key = self.ring.key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    def total_degree(self) -> int:
        """Largest sum of absolute exponents over the terms (0 for the zero polynomial)."""
        return max((sum(abs(x) for x in e) for e in self.terms), default=0)

    def monomial_content(self) -> Exponent:
        """Per invertible variable, the smallest exponent present; 0 elsewhere."""
        n = self.ring.nvars
        if not self.terms:
            return (0,) * n
        return tuple(
            min(e[j] for e in self.terms) if self.ring.invertible[j] else 0 for j in range(n)
        )

    def strip_content(self) -> "Polynomial":
        """The associate with no invertible-variable factor and no negative exponents."""
        m = self.monomial_content()
        if not any(m):
            return self
        return Polynomial._make(self.ring, {_sub_exp(e, m): c for e, c in self.terms.items()})

    def exact_divide(self, other: "Polynomial") -> "Polynomial":
        """self / other, raising InexactDivisionError when other does not divide self."""
        self._coerce(other)
        if other.is_zero():
            raise InexactDivisionError("division by zero")
        if other.is_unit():
            return self * other.inverse_unit()
        a, b = self.monomial_content(), other.monomial_content()
        f, g = self.strip_content(), other.strip_content()
        key = self.ring.key
        lg, cg = g.leading_term()
        rem = dict(f.terms)
        quot: dict[Exponent, Fraction] = {}
        while rem:
            lm = max(rem, key=key)
            if not _divides(lg, lm):
                raise InexactDivisionError(f"{other} does not divide {self}", witness=str(self))
            m = _sub_exp(lm, lg)
            q = rem[lm] / cg
            quot[m] = quot.get(m, 0) + q
            for e, c in g.terms.items():
                t = _add_exp(e, m)
                s = rem.get(t, 0) - q * c
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        shift = _sub_exp(a, b)
        return Polynomial(self.ring, {_add_exp(e, shift): c for e, c in quot.items() if c})

    # -- evaluation and substitution ---------------------------------------

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        """Exact value at a rational point (eval_at)."""
        if len(point) != self.ring.nvars:
            raise PointError(f"point has {len(point)} coordinates, ring has {self.ring.nvars}")
        for j, a in enumerate(point):
            if self.ring.invertible[j] and a == 0:
                raise PointError(f"zero coordinate on invertible variable {self.ring.variables[j]!r}")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for a, x in zip(point, e):
                if x:
                    v *= Fraction(a) ** x
            total += v
        return total

    def substitute(self, images: Sequence["Polynomial"], target: RingSpec) -> "Polynomial":
        """Ring homomorphism x_j -> images[j]; negative powers need unit images."""
        if len(images) != self.ring.nvars:
            raise RingError("one image per variable is required")
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(j: int, k: int) -> Polynomial:
            if (j, k) not in powers:
                powers[(j, k)] = images[j] ** k
            return powers[(j, k)]

        total = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for j, k in enumerate(e):
                if k:
                    term = term * power(j, k)
            total = total + term
        return total

    # -- text form ----------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        key = self.ring.key
        pieces: list[str] = []
        for e in sorted(self.terms, key=key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                name if x == 1 else f"{name}^{x}"
                for name, x in zip(self.ring.variables, e)
                if x
            )
            mag = abs(c)
            if not mono:
                body = format_fraction(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_fraction(mag)}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"

    # -- sympy bridge -------------------------------------------------------

    def as_expr(self) -> sp.Expr:
        syms = [sp.Symbol(name) for name in self.ring.variables]
        expr = sp.Integer(0)
        for e, c in self.terms.items():
            term = sp.Rational(c.numerator, c.denominator)
            for s, x in zip(syms, e):
                if x:
                    term *= s ** x
            expr += term
        return expr

    @classmethod
    def from_expr(cls, ring: RingSpec, expr: sp.Expr) -> "Polynomial":
        expr = sp.expand(sp.sympify(expr))
        index = {sp.Symbol(name): j for j, name in enumerate(ring.variables)}
        unknown = expr.free_symbols - set(index)
        if unknown:
            names = ", ".join(sorted(str(s) for s in unknown))
            raise ParseError(f"unknown symbol(s) {names}; ring variables are {', '.join(ring.variables)}")
        terms: dict[Exponent, Fraction] = {}
        for term in sp.Add.make_args(expr):
            coeff, factors = term.as_coeff_mul()
            if not coeff.is_Rational:
                raise ParseError(f"coefficient {coeff} is not rational")
            e = [0] * ring.nvars
            for f in factors:
                base, x = f.as_base_exp()
                if base not in index or not x.is_Integer:
                    raise ParseError(f"{term} is not a Laurent monomial")
                e[index[base]] += int(x)
            k = tuple(e)
            terms[k] = terms.get(k, Fraction(0)) + Fraction(int(coeff.p), int(coeff.q))
        try:
            return cls(ring, terms)
        except RingError as exc:
            raise ParseError(str(exc)) from exc

    @classmethod
    def from_text(
        cls,
        ring: RingSpec,
        text: str,
        params: Optional[Mapping[str, Fraction]] = None,
    ) -> "Polynomial":
        local: dict[str, object] = {name: sp.Symbol(name) for name in ring.variables}
        for name, value in (params or {}).items():
            value = to_fraction(value)
            local[name] = sp.Rational(value.numerator, value.denominator)
        try:
            expr = parse_expr(str(text), local_dict=local, transformations=_TRANSFORMATIONS)
        except Exception as exc:  # sympy raises SyntaxError, TokenError, TypeError...
            raise ParseError(
                f"cannot parse polynomial {text!r}: {exc}",
                column=getattr(exc, "offset", None),
            ) from exc
        return cls.from_expr(ring, expr)


def sorted_polys(polys: Iterable[Polynomial]) -> list[Polynomial]:
    """Deterministic order: descending by leading monomial, then by term list."""
    return sorted(polys, key=lambda f: f.sort_key(), reverse=True)


def eval_at(f: Polynomial, point: Sequence[object]) -> Fraction:
    return f.evaluate(tuple(to_fraction(a) for a in point))
