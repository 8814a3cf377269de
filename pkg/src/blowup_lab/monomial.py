"""Monomial ideals: combinatorial fast paths and the Newton-polyhedron closure.

Exponent vectors are plain tuples.  :func:`lattice_length` is a direct grid
scan and deliberately shares nothing with the staircase counter in
:mod:`blowup_lab.groebner`, so each can serve as the other's oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

INFINITE = math.inf

Exps = tuple[int, ...]


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens: Iterable[Sequence[int]]) -> tuple[Exps, ...]:
    """Antichain of minimal elements, sorted by degree then lexicographically."""
    cands = sorted(set(map(tuple, gens)), key=lambda e: (sum(e), e))
    kept: list[Exps] = []
    for e in cands:
        if not any(divides(k, e) for k in kept):
            kept.append(e)
    return tuple(kept)


def mono_product(A: Sequence[Exps], B: Sequence[Exps]) -> tuple[Exps, ...]:
    return minimalize(tuple(x + y for x, y in zip(a, b)) for a in A for b in B)


def mono_power(A: Sequence[Exps], k: int, n: int) -> tuple[Exps, ...]:
    result: tuple[Exps, ...] = ((0,) * n,)
    for _ in range(k):
        result = mono_product(result, A)
    return result


def mono_intersection(A: Sequence[Exps], B: Sequence[Exps]) -> tuple[Exps, ...]:
    return minimalize(tuple(max(x, y) for x, y in zip(a, b)) for a in A for b in B)


def mono_colon(A: Sequence[Exps], B: Sequence[Exps]) -> tuple[Exps, ...]:
    """``(A : B)`` as the intersection of the colons by single monomials."""
    result = None
    for b in B:
        part = minimalize(tuple(max(x - y, 0) for x, y in zip(a, b)) for a in A)
        result = part if result is None else mono_intersection(result, part)
    if result is None:
        n = len(A[0]) if A else 0
        return ((0,) * n,)
    return result


def in_ideal(u: Sequence[int], gens: Sequence[Exps]) -> bool:
    return any(divides(g, u) for g in gens)


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal exponent vectors."""

    nvars: int
    gens: tuple[Exps, ...]

    def __post_init__(self):
        for g in self.gens:
            if len(g) != self.nvars:
                raise ValueError(f"exponent vector {g} does not have {self.nvars} entries")
        object.__setattr__(self, "gens", minimalize(self.gens))

    @classmethod
    def from_ideal(cls, ideal) -> MonomialIdeal:
        if ideal.ring.has_quotient or not all(g.is_monomial() for g in ideal.gens):
            raise ValueError("ideal is not a monomial ideal of a polynomial ring")
        return cls(ideal.ring.nvars, tuple(ideal.ring.unpack(g.lm) for g in ideal.gens))

    def to_ideal(self, ring):
        from .groebner import Ideal

        return Ideal(ring, [ring.monomial(e) for e in self.gens])

    def contains(self, u: Sequence[int]) -> bool:
        return in_ideal(u, self.gens)

    def __le__(self, other: MonomialIdeal) -> bool:
        return all(other.contains(g) for g in self.gens)

    def __mul__(self, other: MonomialIdeal) -> MonomialIdeal:
        return MonomialIdeal(self.nvars, mono_product(self.gens, other.gens))

    def __pow__(self, k: int) -> MonomialIdeal:
        return MonomialIdeal(self.nvars, mono_power(self.gens, k, self.nvars))

    def colon(self, other: MonomialIdeal) -> MonomialIdeal:
        return MonomialIdeal(self.nvars, mono_colon(self.gens, other.gens))

    def intersection(self, other: MonomialIdeal) -> MonomialIdeal:
        return MonomialIdeal(self.nvars, mono_intersection(self.gens, other.gens))

    def pure_power_bounds(self) -> list[int] | None:
        bounds = []
        for i in range(self.nvars):
            pure = [g[i] for g in self.gens if all(e == 0 for j, e in enumerate(g) if j != i)]
            if not pure:
                return None
            bounds.append(min(pure))
        return bounds


def lattice_length(A: MonomialIdeal) -> int | float:
    """Number of lattice points outside ``A`` by a brute-force box scan."""
    n = A.nvars
    for i in range(n):
        if not any(g[i] > 0 and sum(g) == g[i] for g in A.gens) and not any(sum(g) == 0 for g in A.gens):
            return INFINITE
    if any(sum(g) == 0 for g in A.gens):
        return 0
    box = [max(g[i] for g in A.gens) for i in range(n)]
    count = 0
    for u in product(*(range(b) for b in box)):
        if not any(all(gi <= ui for gi, ui in zip(g, u)) for g in A.gens):
            count += 1
    return count


# -- Newton polyhedron membership ------------------------------------------------


def _feasible(rows: list[list[Fraction]], rhs: list[Fraction]) -> bool:
    """Exact phase-one simplex: is ``{x >= 0 : rows @ x = rhs}`` non-empty?

    Uses Bland's rule, so it terminates on degenerate tableaux.
    """
    m = len(rows)
    nx = len(rows[0]) if rows else 0
    tab = []
    for i in range(m):
        row = list(rows[i])
        b = rhs[i]
        if b < 0:
            row = [-v for v in row]
            b = -b
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [b])
    ncol = nx + m
    basis = [nx + i for i in range(m)]
    # objective: minimise sum of artificials  ->  reduced costs row
    cost = [Fraction(0)] * (ncol + 1)
    for i in range(m):
        for j in range(ncol + 1):
            if j < nx or j == ncol:
                cost[j] -= tab[i][j]
    while True:
        enter = next((j for j in range(ncol) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][ncol] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded direction; cannot happen for phase one
            break
        _, r = best
        piv = tab[r][enter]
        tab[r] = [v / piv for v in tab[r]]
        for i in range(m):
            if i != r and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[r])]
        if cost[enter]:
            f = cost[enter]
            cost = [a - f * b for a, b in zip(cost, tab[r])]
        basis[r] = enter
    return cost[ncol] == 0


def in_newton_polyhedron(u: Sequence[int], gens: Sequence[Exps]) -> bool:
    """Whether ``u`` lies in ``conv(gens) + R^n_{>=0}``.

    Solves ``sum t_i g_i + s = u, sum t_i = 1, t, s >= 0`` exactly.
    """
    if in_ideal(u, gens):
        return True
    n = len(u)
    k = len(gens)
    rows = []
    rhs = []
    for j in range(n):
        row = [Fraction(g[j]) for g in gens] + [Fraction(1 if jj == j else 0) for jj in range(n)]
        rows.append(row)
        rhs.append(Fraction(u[j]))
    rows.append([Fraction(1)] * k + [Fraction(0)] * n)
    rhs.append(Fraction(1))
    return _feasible(rows, rhs)


def integral_closure_monomial(A: MonomialIdeal) -> MonomialIdeal:
    """Integral closure: monomials whose exponents lie in the Newton polyhedron."""
    if not A.gens:
        return A
    n = A.nvars
    box = [max(g[i] for g in A.gens) for i in range(n)]
    extra = []
    for u in product(*(range(b + 1) for b in box)):
        if not in_ideal(u, A.gens) and in_newton_polyhedron(u, A.gens):
            extra.append(u)
    return MonomialIdeal(n, A.gens + tuple(extra))
