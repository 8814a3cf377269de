"""One-dimensional backend: monomial ideals of numerical semigroup rings.

In ``k[[t^a1, ..., t^ak]]`` an ideal generated by powers of ``t`` is determined
by its value set ``E = {b_i + s : s in S}``, so lengths and generator counts
are plain counting problems.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd

from .fitting import FitError, fit_polynomial


class SemigroupError(ValueError):
    pass


class ReductionCapExceeded(SemigroupError):
    pass


@dataclass(frozen=True)
class NumericalSemigroup:
    generators: tuple[int, ...]

    def __post_init__(self):
        gens = tuple(sorted(set(int(a) for a in self.generators)))
        if not gens or gens[0] <= 0:
            raise SemigroupError("semigroup generators must be positive integers")
        if reduce(gcd, gens) != 1:
            raise SemigroupError(f"generators {gens} have gcd > 1")
        object.__setattr__(self, "generators", gens)

    @cached_property
    def _table(self) -> tuple[list[bool], int]:
        a = self.generators[0]
        member = [True]
        run = 1 if a == 1 else 0
        n = 0
        # stop once `a` consecutive members are found: everything after is in S
        while run < a:
            n += 1
            ok = any(n >= g and member[n - g] for g in self.generators)
            member.append(ok)
            run = run + 1 if ok else 0
        conductor = n - a + 1
        return member[:conductor], conductor

    @property
    def conductor(self) -> int:
        return self._table[1]

    @property
    def frobenius(self) -> int:
        return self.conductor - 1

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        table, c = self._table
        return n >= c or table[n]

    def elements_below(self, bound: int) -> list[int]:
        return [n for n in range(bound) if n in self]

    def gaps(self) -> list[int]:
        return [n for n in range(self.conductor) if n not in self]


@dataclass(frozen=True)
class SemigroupIdeal:
    """The ideal ``E = gens + S``; ``gens`` is reduced on construction."""

    semigroup: NumericalSemigroup
    gens: tuple[int, ...]

    def __post_init__(self):
        S = self.semigroup
        gens = sorted(set(int(b) for b in self.gens))
        if not gens:
            raise SemigroupError("an ideal needs at least one generator")
        for b in gens:
            if b not in S:
                raise SemigroupError(f"{b} is not an element of the semigroup {S.generators}")
        kept = [b for b in gens if not any(c != b and (b - c) in S for c in gens)]
        object.__setattr__(self, "gens", tuple(kept))

    def __contains__(self, n: int) -> bool:
        return any((n - b) in self.semigroup for b in self.gens)

    @property
    def bound(self) -> int:
        """Every integer at or above this value lies in the ideal."""
        return self.gens[0] + self.semigroup.conductor

    def __mul__(self, other: SemigroupIdeal) -> SemigroupIdeal:
        return SemigroupIdeal(self.semigroup, tuple(a + b for a in self.gens for b in other.gens))

    def __pow__(self, m: int) -> SemigroupIdeal:
        if m == 0:
            return SemigroupIdeal(self.semigroup, (0,))
        out = self
        for _ in range(m - 1):
            out = out * self
        return out

    def shift(self, b: int) -> SemigroupIdeal:
        return SemigroupIdeal(self.semigroup, tuple(g + b for g in self.gens))

    def members(self) -> frozenset[int]:
        """Members below :attr:`bound`."""
        return frozenset(n for n in range(self.bound) if n in self)


def sg_length(S: NumericalSemigroup, E: SemigroupIdeal) -> int:
    """``#(S \\ E)``, the colength of the ideal."""
    return sum(1 for n in range(E.bound) if n in S and n not in E)


def sg_length_by_sets(S: NumericalSemigroup, E: SemigroupIdeal) -> int:
    """Same count by explicit set arithmetic; used as an independent check."""
    top = E.bound + max(S.generators)
    elems = {0}
    frontier = [0]
    while frontier:
        n = frontier.pop()
        for a in S.generators:
            if n + a < top and n + a not in elems:
                elems.add(n + a)
                frontier.append(n + a)
    ideal = {b + s for b in E.gens for s in elems if b + s < top}
    return len(elems - ideal)


def sg_min_gens(E: SemigroupIdeal) -> int:
    return len(E.gens)


def sg_layer(E_j: SemigroupIdeal, E_prev: SemigroupIdeal, b: int) -> int:
    """``dim I^j / (J I^{j-1} + m I^j)`` for ``J = (t^b)``."""
    shifted = E_prev.shift(b)
    return sum(1 for g in E_j.gens if g not in shifted)


@dataclass
class SemigroupInvariants:
    e0: int
    e1: int
    f0: int
    r: int
    length: int
    mu: int
    cm_fiber: bool
    layers: tuple[int, ...]
    reduction: int
    lengths: tuple[int, ...] = field(default=())
    mus: tuple[int, ...] = field(default=())
    n0_length: int = 1
    n0_mu: int = 1

    @property
    def fiber_rhs(self) -> int:
        return 1 + sum(self.layers)


def sg_invariants(S: NumericalSemigroup, I: SemigroupIdeal, cap: int = 20, confirm: int = 3,
                  budget: int | None = None) -> SemigroupInvariants:
    """Hilbert coefficients, fiber multiplicity, reduction number and the
    Cohen-Macaulay test of the fiber cone for ``I`` with ``J = (t^{b_min})``."""
    if I.semigroup != S:
        raise SemigroupError("ideal belongs to a different semigroup")
    b = I.gens[0]
    powers = [SemigroupIdeal(S, (0,)), I]
    r = None
    for k in range(cap + 1):
        while len(powers) < k + 2:
            powers.append(powers[-1] * I)
        if powers[k + 1].gens == powers[k].shift(b).gens:
            r = k
            break
    if r is None:
        raise ReductionCapExceeded(
            f"(t^{b}) is not a reduction within {cap} steps; use the polynomial backend on a toric presentation"
        )
    budget = budget or max(r + 2 + confirm, 6)
    while len(powers) < budget + 1:
        powers.append(powers[-1] * I)
    lengths = [sg_length(S, powers[m]) for m in range(1, budget + 1)]
    mus = [sg_min_gens(powers[m]) for m in range(1, budget + 1)]
    try:
        n0_l, (e0, e1) = fit_polynomial(lengths, 1, confirm=confirm, shift=-1)
        n0_m, (f0,) = fit_polynomial(mus, 0, confirm=confirm, shift=0)
    except FitError as exc:
        raise SemigroupError(str(exc)) from exc
    if e0 != b:
        raise SemigroupError(f"fitted multiplicity {e0} differs from the reduction colength {b}")
    layers = tuple(sg_layer(powers[j], powers[j - 1], b) for j in range(1, r + 1))
    return SemigroupInvariants(
        e0=e0, e1=e1, f0=f0, r=r, length=lengths[0], mu=mus[0],
        cm_fiber=(f0 == 1 + sum(layers)), layers=layers, reduction=b,
        lengths=tuple(lengths), mus=tuple(mus), n0_length=n0_l, n0_mu=n0_m,
    )
