"""Closures of an ideal between ``I`` and its integral closure.

* Ratliff-Rush: the stable value of ``(I^{n+1} : I^n)``.
* The S2 ideal ``J : (J^r : I^r)`` for a two-generated reduction ``J`` in a
  two-variable polynomial ring.
* Integral closure of monomial ideals via the Newton polyhedron.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import Ideal, _monomial_ideal, ideal_colon, ideal_from_gb_extension, is_only_origin, min_gens
from .invariants import (
    InvariantError,
    ReductionError,
    _finite_length,
    localized_reduction,
    minimal_reduction,
    reduction_number,
    tower_of,
)
from .monomial import MonomialIdeal, integral_closure_monomial


class ClosureError(ValueError):
    pass


class NoStabilization(ClosureError):
    """The colon sequence kept changing up to ``n_max``."""

    def __init__(self, message: str, last: tuple[Ideal, Ideal]):
        super().__init__(message)
        self.last = last


@dataclass
class ClosureResult:
    input: Ideal
    closed: Ideal
    kind: str
    iterations: int
    certificate: int
    note: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return _finite_length(self.closed)

    @property
    def mu(self) -> int:
        return min_gens(self.closed)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "generators": [str(g) for g in sorted(self.closed.gens, key=lambda g: -g.ring.key(g.lm))],
            "length": self.length,
            "mu": self.mu,
            "iterations": self.iterations,
            "certificate": self.certificate,
            "note": self.note,
            **self.extra,
        }


def _check_contains(I: Ideal, closed: Ideal) -> None:
    if not I.issubset(closed):
        raise ClosureError("closure does not contain the input ideal")


def ratliff_rush(I: Ideal, n_max: int = 12, confirm: int = 2) -> ClosureResult:
    """First ``C_n = (I^{n+1} : I^n)`` that repeats for ``confirm`` more steps.

    A finite window cannot prove stabilisation; the record says so.
    """
    if not is_only_origin(I):
        raise ClosureError("Ratliff-Rush closure needs an ideal supported only at the origin")
    tower = tower_of(I)
    colons: list[Ideal] = []
    for n in range(1, n_max + confirm + 1):
        colons.append(ideal_colon(tower.power(n + 1), tower.power(n)))
        if len(colons) > confirm:
            window = colons[-confirm - 1:]
            if all(C == window[0] for C in window[1:]):
                start = n - confirm
                closed = _trim_copy(window[0])
                _check_contains(I, closed)
                return ClosureResult(I, closed, "ratliff_rush", n, start,
                                     f"colons agree for n = {start}..{n}; a finite window is heuristic")
        if n >= n_max and len(colons) > confirm:
            break
    distinct = [C for i, C in enumerate(colons) if i == 0 or C != colons[i - 1]]
    raise NoStabilization(f"(I^(n+1) : I^n) did not stabilise for n <= {n_max}",
                          tuple(distinct[-2:]) if len(distinct) > 1 else (colons[-1], colons[-1]))


def _trim_copy(C: Ideal) -> Ideal:
    if C.is_monomial:
        return _monomial_ideal(C.ring, C.monomial_exps())
    return C


def _require_plane(I: Ideal) -> None:
    ring = I.ring
    if ring.has_quotient or ring.nvars != 2:
        raise ClosureError("the S2 ideal is implemented for two-variable polynomial rings only")


def s2_ideal(I: Ideal, J: Ideal | None = None, seed: int = 0, cap: int = 10) -> ClosureResult:
    """``J : (J^r : I^r)`` with ``r = r_J(I)``; ``J=None`` draws a seeded reduction."""
    _require_plane(I)
    if not is_only_origin(I):
        raise ClosureError("the S2 ideal needs an ideal supported only at the origin")
    source = "given"
    if J is None:
        J = minimal_reduction(I, seed=seed, cap=cap)
        source = f"seeded random (seed {seed})"
    if len(J.gens) != 2:
        raise ClosureError(f"J must have two generators, got {len(J.gens)}")
    try:
        r = reduction_number(I, J, cap)
    except ReductionError as exc:
        raise ClosureError(str(exc)) from exc
    ring = I.ring
    if r == 0:
        closed = I
    else:
        Jr = localized_reduction(I, J, r, k=r)
        J1 = localized_reduction(I, J, r, k=1)
        inner = ideal_colon(Jr, tower_of(I).power(r))
        closed = ideal_colon(J1, inner)
        if closed.is_monomial:
            closed = _monomial_ideal(ring, closed.monomial_exps())
    _check_contains(I, closed)
    monomial_J = all(g.is_monomial() for g in J.gens)
    try:
        r_closed = reduction_number(closed, J, cap)
    except (ReductionError, InvariantError):
        r_closed = None
    return ClosureResult(
        I, closed, "s2_ideal", 1, r, f"reduction {source}; r_J(I) = {r}",
        extra={
            "reduction": [str(g) for g in J.gens],
            "reduction_kind": "monomial" if monomial_J else "non-monomial",
            "r_J": r,
            "reduction_number_of_closure": r_closed,
            "reduction_number_at_most_one": r_closed is not None and r_closed <= 1,
        },
    )


def integral_closure(I: Ideal) -> ClosureResult:
    """Integral closure of a monomial ideal of a polynomial ring."""
    if not I.is_monomial:
        raise ClosureError("integral closure is only available for monomial ideals of polynomial rings")
    A = MonomialIdeal(I.ring.nvars, I.monomial_exps())
    closed = _monomial_ideal(I.ring, integral_closure_monomial(A).gens)
    return ClosureResult(I, closed, "integral_monomial", 1, 0, "lattice points of the Newton polyhedron")
