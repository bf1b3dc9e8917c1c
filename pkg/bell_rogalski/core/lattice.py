"""
core/lattice.py

Integer linear algebra for orbit and invariant questions: prime-exponent
vectors of rationals, integer kernels with parity constraints, and sets of
integer exponents solving one-coordinate orbit equations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from sympy import factorint


# ---------------------------------------------------------------------------
# Factorisation
# ---------------------------------------------------------------------------

def prime_exponents(q: Fraction) -> dict[int, int]:
    """{prime: exponent} of |q|; the sign is handled separately."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("zero has no factorisation")
    out: dict[int, int] = {}
    for p, e in factorint(abs(q.numerator)).items():
        out[p] = out.get(p, 0) + e
    for p, e in factorint(q.denominator).items():
        out[p] = out.get(p, 0) - e
    return {p: e for p, e in out.items() if e}


def _row_lcm_scale(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in row:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in row]


# ---------------------------------------------------------------------------
# Integer kernels
# ---------------------------------------------------------------------------

def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Z-basis of {a in Z^n : row . a = 0 for every row}, via unimodular column operations."""
    m = len(rows)
    cols = [[rows[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(n)] for j in range(n)]
    pivot = 0
    for i in range(m):
        if pivot >= n:
            break
        for j in range(pivot + 1, n):
            while cols[j][i] != 0:
                if cols[pivot][i] == 0:
                    cols[pivot], cols[j] = cols[j], cols[pivot]
                    continue
                q = cols[j][i] // cols[pivot][i]
                cols[j] = [a - q * b for a, b in zip(cols[j], cols[pivot])]
                if cols[j][i] != 0:
                    cols[pivot], cols[j] = cols[j], cols[pivot]
        if cols[pivot][i] != 0:
            pivot += 1
    basis = [tuple(col[m:]) for col in cols[pivot:]]
    return sorted(_normalise(v) for v in basis)


def _normalise(v: tuple[int, ...]) -> tuple[int, ...]:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def lattice_basis(vectors: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    """Hermite normal form of the lattice spanned by the rows; zero rows dropped."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    n = len(rows[0])
    r = 0
    for col in range(n):
        if r >= len(rows):
            break
        for k in range(r + 1, len(rows)):
            while rows[k][col] != 0:
                if rows[r][col] == 0:
                    rows[r], rows[k] = rows[k], rows[r]
                    continue
                q = rows[k][col] // rows[r][col]
                rows[k] = [a - q * b for a, b in zip(rows[k], rows[r])]
                if rows[k][col] != 0:
                    rows[r], rows[k] = rows[k], rows[r]
        if rows[r][col] == 0:
            continue
        if rows[r][col] < 0:
            rows[r] = [-a for a in rows[r]]
        for k in range(r):
            q = rows[k][col] // rows[r][col]
            rows[k] = [a - q * b for a, b in zip(rows[k], rows[r])]
        r += 1
    return [tuple(row) for row in rows[:r]]


def relation_lattice(
    equations: Sequence[Sequence[Fraction]],
    parities: Sequence[Sequence[int]],
    n: int,
) -> list[tuple[int, ...]]:
    """
    Z-basis of {a in Z^n : E a = 0 and P a = 0 mod 2}.

    Equations may have rational coefficients; parity rows are 0/1 vectors.
    Solved as the integer kernel of [[E, 0], [P, 2I]] projected to a,
    returned in Hermite normal form.
    """
    p = len(parities)
    rows: list[list[int]] = []
    for eq in equations:
        scaled = _row_lcm_scale(eq)
        if any(scaled):
            rows.append(scaled + [0] * p)
    for r, par in enumerate(parities):
        rows.append([int(x) % 2 for x in par] + [2 if k == r else 0 for k in range(p)])
    kernel = integer_kernel(rows, n + p)
    return lattice_basis(v[:n] for v in kernel)


def multiplicative_relations(scalars: Sequence[Sequence[Fraction]]) -> list[tuple[int, ...]]:
    """
    Z-basis of {a in Z^N : prod_j S[i][j]^a_j = 1 for every row i}.

    Decided on prime-exponent vectors, with one parity row per sign pattern.
    """
    if not scalars:
        return []
    n = len(scalars[0])
    equations: list[list[Fraction]] = []
    parities: list[list[int]] = []
    for row in scalars:
        factored = [prime_exponents(c) for c in row]
        for prime in sorted({q for f in factored for q in f}):
            equations.append([Fraction(f.get(prime, 0)) for f in factored])
        signs = [1 if Fraction(c) < 0 else 0 for c in row]
        if any(signs):
            parities.append(signs)
    if not equations and not parities:
        return [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    return relation_lattice(equations, parities, n)


# ---------------------------------------------------------------------------
# Exponent sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExponentSet:
    """{start + step*t : t in Z}; step 0 is the singleton {start}."""
    start: int = 0
    step: int = 1
    empty: bool = False

    @classmethod
    def everything(cls) -> "ExponentSet":
        return cls(0, 1)

    @classmethod
    def nothing(cls) -> "ExponentSet":
        return cls(0, 0, empty=True)

    @classmethod
    def single(cls, k: int) -> "ExponentSet":
        return cls(int(k), 0)

    @classmethod
    def progression(cls, start: int, step: int) -> "ExponentSet":
        step = abs(step)
        return cls(start % step if step else start, step)

    @property
    def is_everything(self) -> bool:
        return not self.empty and self.step == 1

    def contains(self, k: int) -> bool:
        if self.empty:
            return False
        if self.step == 0:
            return k == self.start
        return (k - self.start) % self.step == 0

    def intersect(self, other: "ExponentSet") -> "ExponentSet":
        if self.empty or other.empty:
            return ExponentSet.nothing()
        if self.step == 0:
            return self if other.contains(self.start) else ExponentSet.nothing()
        if other.step == 0:
            return other if self.contains(other.start) else ExponentSet.nothing()
        modulus = self.step * other.step // math.gcd(self.step, other.step)
        for r in range(modulus):
            if self.contains(r) and other.contains(r):
                return ExponentSet.progression(r, modulus)
        return ExponentSet.nothing()

    def smallest_positive(self) -> Optional[int]:
        if self.empty:
            return None
        if self.step == 0:
            return self.start if self.start > 0 else None
        r = self.start % self.step
        return r if r > 0 else self.step

    def members_in(self, lo: int, hi: int) -> list[int]:
        return [k for k in range(lo, hi + 1) if self.contains(k)]

    def describe(self) -> str:
        if self.empty:
            return "{}"
        if self.step == 0:
            return "{%d}" % self.start
        if self.step == 1:
            return "Z"
        return f"{self.start} + {self.step}Z"


def solve_power(c: Fraction, s: Fraction) -> ExponentSet:
    """All integers k with c^k = s (c != 0)."""
    c, s = Fraction(c), Fraction(s)
    if s == 0:
        return ExponentSet.nothing()
    if c == 1:
        return ExponentSet.everything() if s == 1 else ExponentSet.nothing()
    if c == -1:
        if s == 1:
            return ExponentSet.progression(0, 2)
        if s == -1:
            return ExponentSet.progression(1, 2)
        return ExponentSet.nothing()
    fc, fs = prime_exponents(c), prime_exponents(s)
    prime = min(fc)
    k, r = divmod(fs.get(prime, 0), fc[prime])
    if r or c ** k != s:
        return ExponentSet.nothing()
    return ExponentSet.single(k)


def solve_affine_orbit(c: Fraction, d: Fraction, a: Fraction, b: Fraction) -> ExponentSet:
    """
    Integers k taking a to b under k-fold application of the point rule a -> (a - d)/c.

    Translations (c = 1) step by -d; otherwise the rule scales by 1/c about p = d/(1 - c).
    """
    c, d, a, b = Fraction(c), Fraction(d), Fraction(a), Fraction(b)
    if c == 1:
        if d == 0:
            return ExponentSet.everything() if a == b else ExponentSet.nothing()
        q = (a - b) / d
        return ExponentSet.single(int(q)) if q.denominator == 1 else ExponentSet.nothing()
    p = d / (1 - c)
    if a == p:
        return ExponentSet.everything() if b == p else ExponentSet.nothing()
    # (a - p) c^-k = b - p
    return solve_power(c, (a - p) / (b - p)) if b != p else ExponentSet.nothing()
