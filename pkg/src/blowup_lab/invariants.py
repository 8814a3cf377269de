"""Blowup invariants of an ideal supported only at the origin.

All lengths here are local lengths at the origin.  Every ideal whose length
is taken contains a power of ``I`` (hence is supported only at the origin),
so the global staircase count from :mod:`blowup_lab.groebner` applies.  A
reduction ``J`` drawn at random may vanish at other points as well; wherever
``J`` enters, it is replaced by ``J + I^{r+1}``, which agrees with ``J`` at the
origin once ``I^{r+1} = J I^r`` holds there.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .fitting import FitError, fit_polynomial
from .groebner import (
    Ideal,
    ideal_from_gb_extension,
    ideal_product,
    is_only_origin,
    krull_dim,
    length_of_quotient,
    maximal_times,
)
from .monomial import INFINITE


class InvariantError(RuntimeError):
    pass


class ReductionError(InvariantError):
    """``J`` is not a reduction within the cap, or no random reduction was found."""


class StabilizationError(InvariantError):
    """A sampled function did not become polynomial within its budget."""


class ConsistencyError(InvariantError):
    """A hard cross-check failed; this points at a bug, not at the input."""


# -- cached powers -----------------------------------------------------------------


class PowerTower:
    """Caches ``I^m``, ``m I^m`` and the lengths derived from them."""

    def __init__(self, I: Ideal):
        self.I = I
        self.ring = I.ring
        self._powers: dict[int, Ideal] = {1: I}
        self._mpowers: dict[int, Ideal] = {}
        self._reductions: dict[tuple, dict] = {}

    def power(self, m: int) -> Ideal:
        if m == 0:
            return Ideal.unit(self.ring)
        top = max(k for k in self._powers if k <= m)
        while top < m:
            self._powers[top + 1] = ideal_product(self._powers[top], self.I)
            top += 1
        return self._powers[m]

    def m_power(self, m: int) -> Ideal:
        """``m I^m``, grown from the basis of ``I^{m+1}`` which it contains."""
        if m not in self._mpowers:
            P = self.power(m)
            if P.is_monomial:
                self._mpowers[m] = maximal_times(P)
            else:
                self._mpowers[m] = maximal_times(P, contained=self.power(m + 1))
        return self._mpowers[m]

    def length(self, m: int) -> int:
        return _finite_length(self.power(m))

    def mu(self, m: int) -> int:
        P = self.power(m)
        if P.is_monomial:
            return len(P.monomial_exps())
        return _finite_length(self.m_power(m)) - self.length(m)

    def layer_ideal(self, J: Ideal, j: int) -> Ideal:
        """``J I^{j-1} + m I^j``."""
        prods = [a * b for a in J.gens for b in self.power(j - 1).gens]
        return ideal_from_gb_extension(self.ring, prods, self.m_power(j))

    def layer(self, J: Ideal, j: int) -> int:
        """``mu(I^j / J I^{j-1})`` as a length difference."""
        cache = self._reductions.setdefault(_key(J), {})
        if j not in cache:
            cache[j] = _finite_length(self.layer_ideal(J, j)) - self.length(j)
        cache_val = cache[j]
        if cache_val < 0:
            raise ConsistencyError("J I^(j-1) + m I^j has larger colength than I^j")
        return cache_val


def _key(J: Ideal) -> tuple:
    return tuple(sorted(str(g) for g in J.gens))


def _finite_length(A: Ideal) -> int:
    L = length_of_quotient(A)
    if L == INFINITE:
        raise InvariantError(f"ideal {A} has infinite colength")
    return int(L)


def tower_of(I: Ideal) -> PowerTower:
    tower = getattr(I, "_tower", None)
    if tower is None:
        tower = PowerTower(I)
        I._tower = tower
    return tower


def _require_origin(I: Ideal) -> None:
    if not is_only_origin(I):
        raise InvariantError("the ideal must have finite colength and vanish only at the origin")


# -- reductions ----------------------------------------------------------------------


def reduction_number(I: Ideal, J: Ideal, cap: int = 10) -> int:
    """Least ``r <= cap`` with ``I^{r+1} = J I^r`` at the origin.

    Checked as ``I^{r+1} ⊆ J I^r + m I^{r+1}`` (Nakayama), i.e. a vanishing
    layer; when ``J`` vanishes only at the origin this is the plain equality
    of the two ideals.
    """
    if not J.issubset(I):
        raise ReductionError("J is not contained in I")
    tower = tower_of(I)
    for r in range(cap + 1):
        if tower.layer(J, r + 1) == 0:
            return r
    raise ReductionError(f"I^(r+1) != J I^r for every r <= {cap}; J may not be a reduction")


def analytic_dimension(I: Ideal) -> int:
    return krull_dim(Ideal(I.ring, []))


def minimal_reduction(I: Ideal, seed: int = 0, cap: int = 10, retries: int = 8) -> Ideal:
    """``d`` seeded random combinations of the generators of ``I`` forming a reduction."""
    _require_origin(I)
    d = analytic_dimension(I)
    if d < 1:
        raise InvariantError("the ring has dimension zero")
    ring = I.ring
    rng = random.Random(seed)
    gens = list(I.gens)
    for _ in range(retries):
        combos = []
        for _ in range(d):
            f = ring.zero()
            for g in gens:
                f = f + g.scale(rng.randrange(1, ring.p))
            combos.append(f)
        J = Ideal(ring, combos)
        if len(J.gens) < d:
            continue
        try:
            reduction_number(I, J, cap)
        except ReductionError:
            continue
        return J
    raise ReductionError(f"no reduction found in {retries} random draws (p = {ring.p}, cap = {cap})")


def localized_reduction(I: Ideal, J: Ideal, r: int, k: int = 1) -> Ideal:
    """``J^k + I^{k+r}``: the ideal ``J^k`` at the origin, with no other zeros.

    The products of generators of ``J`` are truncated modulo ``I^{k+r}``
    as they are formed, so the global (and much larger) basis of ``J^k`` is
    never computed.
    """
    tower = tower_of(I)
    prods = list(J.gens)
    for j in range(2, k + 1):
        base = tower.power(j + r).gb
        seen = {}
        for a in J.gens:
            for b in prods:
                h = base.normal_form(a * b)
                if h:
                    seen.setdefault(h, None)
        prods = list(seen)
    return ideal_from_gb_extension(I.ring, prods, tower.power(k + r))


# -- Hilbert functions ---------------------------------------------------------------


@dataclass
class FitPolicy:
    confirm: int = 2
    lambda_budget: int | None = None
    mu_budget: int | None = None


@dataclass
class HilbertSamples:
    """Samples ``(m, value)`` from ``m = 1`` and the fitted coefficients."""

    kind: str
    samples: list[tuple[int, int]]
    n0: int
    coeffs: tuple[int, ...]
    rejected: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "samples": [[m, v] for m, v in self.samples],
            "n0": self.n0,
            "coefficients": list(self.coeffs),
        }
        if self.rejected:
            out["rejected_windows"] = [{"n0": n0, "coefficients": list(c)} for n0, c in self.rejected]
        return out


def default_budget(base: int, r: int | None) -> int:
    """Sampling cap: ``base``, raised for large reduction numbers since the
    samples only settle after about ``r`` powers."""
    if r is None:
        return base
    return max(base, r + base - 3)


def _fit_lazily(sample, degree: int, shift: int, budget: int, confirm: int, kind: str,
                accept=None) -> HilbertSamples:
    """Sample until a fit holds; ``accept`` may veto a fit (it then needs
    more samples, since the fitted window must have been pre-stable)."""
    values: list[int] = []
    rejected: list[tuple[int, tuple[int, ...]]] = []
    need = degree + 1 + confirm
    for m in range(1, budget + 1):
        values.append(sample(m))
        if len(values) < need:
            continue
        try:
            n0, coeffs = fit_polynomial(values, degree, confirm=confirm, shift=shift)
        except FitError:
            continue
        if accept is not None and not accept(coeffs):
            if (n0, coeffs) not in rejected:
                rejected.append((n0, coeffs))
            continue
        return HilbertSamples(kind, list(enumerate(values, start=1)), n0, coeffs, rejected)
    raise StabilizationError(f"{kind} samples did not stabilise within m <= {budget}: {values}")


def hilbert_samuel_coeffs(I: Ideal, J: Ideal | None = None, window: FitPolicy | None = None,
                          r: int | None = None) -> tuple[tuple[int, ...], HilbertSamples]:
    """``(e_0, ..., e_d)`` from ``lambda(R/I^m)``; checks ``e_0 = lambda(R/J)``."""
    _require_origin(I)
    window = window or FitPolicy()
    d = analytic_dimension(I)
    tower = tower_of(I)
    if J is not None and r is None:
        r = reduction_number(I, J)
    budget = window.lambda_budget or default_budget(d + 6, r)
    colength = None if J is None else _finite_length(localized_reduction(I, J, r))
    accept = None if colength is None else (lambda c: c[0] == colength)
    try:
        hs = _fit_lazily(tower.length, d, -1, budget, window.confirm, "length", accept)
    except StabilizationError:
        if colength is None:
            raise
        # one more try without the veto, to report the disagreement
        hs = _fit_lazily(tower.length, d, -1, budget, window.confirm, "length")
    if colength is not None:
        if colength != hs.coeffs[0]:
            raise ConsistencyError(f"fitted e0 = {hs.coeffs[0]} but lambda(R/J) = {colength}")
    return hs.coeffs, hs


def fiber_multiplicity(I: Ideal, window: FitPolicy | None = None,
                       r: int | None = None) -> tuple[int, tuple[int, ...], HilbertSamples]:
    """``f_0`` and ``(f_0, ..., f_{d-1})`` from ``mu(I^m)``."""
    _require_origin(I)
    window = window or FitPolicy()
    d = analytic_dimension(I)
    tower = tower_of(I)
    budget = window.mu_budget or default_budget(d + 5, r)
    hs = _fit_lazily(tower.mu, d - 1, 0, budget, window.confirm, "mu")
    return hs.coeffs[0], hs.coeffs, hs


def sally_degree(e0: int, e1: int, length: int) -> int:
    s = e1 - e0 + length
    if s < 0:
        raise ConsistencyError(f"negative Sally degree {s} (e0={e0}, e1={e1}, length={length})")
    return s


@dataclass
class FiberCM:
    cm: bool
    lhs: int
    rhs: int
    layers: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"cm": self.cm, "lhs": self.lhs, "rhs": self.rhs, "layers": list(self.layers)}


def fiber_cm_test(I: Ideal, J: Ideal, r: int, f0: int) -> FiberCM:
    """Compare ``f_0`` with ``1 + sum_j mu(I^j / J I^{j-1})`` for ``j = 1..r``."""
    tower = tower_of(I)
    layers = tuple(tower.layer(J, j) for j in range(1, r + 1))
    rhs = 1 + sum(layers)
    if f0 > rhs:
        raise ConsistencyError(f"f0 = {f0} exceeds the generator count {rhs} of the fiber over J")
    return FiberCM(f0 == rhs, f0, rhs, layers)


# -- bounds ----------------------------------------------------------------------------


@dataclass
class BoundRecord:
    name: str
    formula: str
    lhs: int
    relation: str
    rhs: int
    hypothesis_met: bool
    note: str = ""

    @property
    def status(self) -> str:
        if self.relation == "==":
            return "equality" if self.lhs == self.rhs else "violated"
        if self.lhs < self.rhs:
            return "holds"
        return "equality" if self.lhs == self.rhs else "violated"

    @property
    def failed(self) -> bool:
        return self.hypothesis_met and self.status == "violated"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "formula": self.formula,
            "lhs": self.lhs,
            "relation": self.relation,
            "rhs": self.rhs,
            "status": self.status,
            "hypothesis_met": self.hypothesis_met,
            "note": self.note,
        }


@dataclass
class BoundInputs:
    d: int
    e0: int
    e1: int
    length: int
    mu: int
    f0: int
    r: int
    fiber_cm: bool
    fiber_rhs: int
    cm_ring: bool = True
    char0_assert: bool = False
    rr: tuple[int, int] | None = None  # (length, mu) of the Ratliff-Rush closure
    s2: tuple[int, int] | None = None  # (length, mu) of the S2 ideal
    s2_reduction_one: bool = False
    closure_gap: int | None = None  # lambda(Ibar / I), two-variable polynomial rings only


def sally_rhs(v: BoundInputs, length: int | None = None, mu: int | None = None) -> int:
    length = v.length if length is None else length
    mu = v.mu if mu is None else mu
    return v.e1 - v.e0 + length + mu - v.d + 1


R_NOTE = "r is r_J for the reduction used, an upper bound for the minimum over minimal reductions"


def evaluate_bounds(v: BoundInputs) -> list[BoundRecord]:
    cm = v.cm_ring
    sally = v.e1 - v.e0 + v.length
    main = sally_rhs(v)
    out = [
        BoundRecord("fiber_vs_e0_e1", "f0 <= min(e0, e1 + 1)", v.f0, "<=", min(v.e0, v.e1 + 1), cm),
        BoundRecord("fiber_vs_sally", "f0 <= e1 - e0 + lambda(R/I) + mu(I) - d + 1", v.f0, "<=", main, cm),
        BoundRecord("sally_vs_e1", "e1 - e0 + lambda(R/I) + mu(I) - d + 1 <= e1 + 1", main, "<=", v.e1 + 1, cm),
        BoundRecord("fiber_vs_layers", "f0 <= 1 + sum_j mu(I^j / J I^(j-1))", v.f0, "<=", v.fiber_rhs, True,
                    "equality exactly when the fiber cone is Cohen-Macaulay"),
        BoundRecord("e0_vs_length_times_f0", "e0 <= lambda(R/I) * f0", v.e0, "<=", v.length * v.f0, True),
        BoundRecord("e0_e1_vs_mu", "2*e0 - e1 <= lambda(R/I) * (mu(I) - d + 2)", 2 * v.e0 - v.e1, "<=",
                    v.length * (v.mu - v.d + 2), cm),
        BoundRecord("reduction_vs_sally_minus_one", "r <= e1 - e0 + lambda(R/I) + mu(I) - d", v.r, "<=",
                    main - 1, cm and v.char0_assert and v.f0 == main,
                    R_NOTE + "; needs the characteristic-zero assertion and equality in fiber_vs_sally"),
        BoundRecord("reduction_vs_fiber", "r <= f0 - mu(I) + d", v.r, "<=", v.f0 - v.mu + v.d,
                    cm and v.fiber_cm, "needs a Cohen-Macaulay fiber cone"),
        BoundRecord("reduction_vs_sally_degree", "r <= e1 - e0 + lambda(R/I) + 1", v.r, "<=", sally + 1,
                    cm and (v.fiber_cm or v.d <= 2), "needs a Cohen-Macaulay fiber cone or d <= 2"),
    ]
    if v.r == 1:
        out.append(BoundRecord("reduction_one_fiber", "f0 = mu(I) - d + 1", v.f0, "==", v.mu - v.d + 1, cm,
                               "reduction number one"))
    if v.rr is not None:
        rr = sally_rhs(v, *v.rr)
        out.append(BoundRecord("fiber_vs_ratliff_rush", "f0 <= e1 - e0 + lambda(R/I~) + mu(I~) - d + 1",
                               v.f0, "<=", rr, cm))
        out.append(BoundRecord("ratliff_rush_sharpens", "lambda(R/I~) + mu(I~) <= lambda(R/I) + mu(I)",
                               sum(v.rr), "<=", v.length + v.mu, True))
    if v.s2 is not None:
        s2 = sally_rhs(v, *v.s2)
        out.append(BoundRecord("fiber_vs_s2", "f0 <= e1 - e0 + lambda(R/I^) + mu(I^) - d + 1",
                               v.f0, "<=", s2, cm))
        out.append(BoundRecord("fiber_vs_s2_generators", "f0 = mu(I^) - 1", v.f0, "==", v.s2[1] - 1,
                               v.s2_reduction_one, "follows once I^ has reduction number at most one"))
    if v.closure_gap is not None:
        out.append(BoundRecord("reduction_vs_closure_gap", "r <= lambda(Ibar/I) + 1", v.r, "<=",
                               v.closure_gap + 1, True, R_NOTE))
        out.append(BoundRecord("fiber_vs_closure_gap", "f0 <= lambda(Ibar/I) + mu(I) - 1", v.f0, "<=",
                               v.closure_gap + v.mu - 1, True))
    return out


def asserted_implications(v: BoundInputs, bounds: Sequence[BoundRecord], *, normal_assert: bool = False,
                          gorenstein_assert: bool = False) -> list[dict]:
    """Structural consequences stated in the literature for the observed
    equalities.  None of these is computed here."""
    by_name = {b.name: b for b in bounds}
    notes = []

    def add(trigger: str, claim: str) -> None:
        notes.append({"kind": "paper-asserted implication", "trigger": trigger, "claim": claim,
                      "computed": False})

    main = by_name["fiber_vs_sally"]
    if main.status == "equality" and v.cm_ring:
        add("fiber_vs_sally equality", "the fiber cone F is unmixed")
        add("fiber_vs_sally equality", "depth F >= min(depth G + 1, d); F is Cohen-Macaulay if depth G >= d - 1")
        if normal_assert:
            add("fiber_vs_sally equality with R and I normal", "m I^m is integrally closed for every m")
        if not v.fiber_cm and v.d >= 2:
            add("fiber_vs_sally equality and computed non-Cohen-Macaulay fiber",
                "depth F = 1" if v.d == 2 else "1 <= depth F < d")
    if by_name["e0_e1_vs_mu"].status == "equality" and v.cm_ring:
        add("e0_e1_vs_mu equality", "the associated graded ring G is unmixed")
    if by_name["e0_vs_length_times_f0"].status == "equality":
        add("e0_vs_length_times_f0 equality",
            "if all associated primes of F have the same dimension, R is normally flat along I")
    if v.f0 == v.e1 + 1 and v.cm_ring:
        add("f0 = e1 + 1", "I has minimal multiplicity: m I = m J for every minimal reduction J")
        if gorenstein_assert:
            add("f0 = e1 + 1 in a Gorenstein ring", "I^2 = J I and the fiber cone is Cohen-Macaulay")
    return notes


# -- full report ------------------------------------------------------------------------


@dataclass
class ReportOptions:
    seed: int = 0
    reduction: Ideal | None = None
    cap: int = 10
    retries: int = 8
    window: FitPolicy = field(default_factory=FitPolicy)
    char0_assert: bool = False
    cm_ring: bool = True
    normal_assert: bool = False
    gorenstein_assert: bool = False
    ratliff_rush: bool = False
    s2_ideal: bool = False
    integral_closure: bool = False
    rr_max: int = 12
    rr_confirm: int = 2
    s2_max_r: int | None = None  # skip the S2 ideal when r_J is larger


@dataclass
class InvariantReport:
    d: int
    ell: int
    length: int
    mu: int
    e: tuple[int, ...]
    f: tuple[int, ...]
    reduction: tuple[str, ...]
    reduction_source: str
    r: int
    sally_degree: int
    fiber_cm: FiberCM
    bounds: list[BoundRecord]
    flags: dict
    implications: list[dict]
    samples: list[HilbertSamples]
    closures: dict = field(default_factory=dict)

    @property
    def e0(self) -> int:
        return self.e[0]

    @property
    def e1(self) -> int:
        return self.e[1]

    @property
    def f0(self) -> int:
        return self.f[0]

    def bound(self, name: str) -> BoundRecord:
        return next(b for b in self.bounds if b.name == name)

    @property
    def violations(self) -> list[BoundRecord]:
        return [b for b in self.bounds if b.failed]

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "analytic_spread": self.ell,
            "length": self.length,
            "mu": self.mu,
            "e": list(self.e),
            "f": list(self.f),
            "reduction": {"generators": list(self.reduction), "source": self.reduction_source, "r_J": self.r,
                          "note": R_NOTE},
            "sally_degree": self.sally_degree,
            "fiber_cm": self.fiber_cm.to_dict(),
            "samples": [s.to_dict() for s in self.samples],
            "closures": self.closures,
            "bounds": [b.to_dict() for b in self.bounds],
            "flags": self.flags,
            "asserted_implications": self.implications,
        }


def bounds_report(I: Ideal, options: ReportOptions | None = None) -> InvariantReport:
    from . import closures

    opts = options or ReportOptions()
    _require_origin(I)
    ring = I.ring
    d = analytic_dimension(I)
    tower = tower_of(I)

    if opts.reduction is not None:
        J = opts.reduction
        source = "given"
    else:
        J = minimal_reduction(I, opts.seed, opts.cap, opts.retries)
        source = f"seeded random (seed {opts.seed})"
    if len(J.gens) != d:
        raise ReductionError(f"a minimal reduction needs {d} generators, got {len(J.gens)}")
    r = reduction_number(I, J, opts.cap)

    e, lam_samples = hilbert_samuel_coeffs(I, J, opts.window, r=r)
    f0, f, mu_samples = fiber_multiplicity(I, opts.window, r)
    length = tower.length(1)
    mu = tower.mu(1)
    e0, e1 = e[0], (e[1] if len(e) > 1 else 0)
    sd = sally_degree(e0, e1, length)
    fcm = fiber_cm_test(I, J, r, f0)

    inputs = BoundInputs(d=d, e0=e0, e1=e1, length=length, mu=mu, f0=f0, r=r, fiber_cm=fcm.cm,
                         fiber_rhs=fcm.rhs, cm_ring=opts.cm_ring, char0_assert=opts.char0_assert)
    closure_out: dict = {}
    if opts.ratliff_rush:
        res = closures.ratliff_rush(I, opts.rr_max, opts.rr_confirm)
        inputs.rr = (res.length, res.mu)
        closure_out["ratliff_rush"] = res.to_dict()
    if opts.s2_ideal and opts.s2_max_r is not None and r > opts.s2_max_r:
        closure_out["s2_ideal"] = {"kind": "s2_ideal", "skipped": f"r_J = {r} exceeds s2_max_r = {opts.s2_max_r}"}
    elif opts.s2_ideal:
        res = closures.s2_ideal(I, J, cap=opts.cap)
        inputs.s2 = (res.length, res.mu)
        inputs.s2_reduction_one = bool(res.extra.get("reduction_number_at_most_one"))
        closure_out["s2_ideal"] = res.to_dict()
    if opts.integral_closure or (ring.nvars == 2 and not ring.has_quotient and I.is_monomial):
        if I.is_monomial:
            res = closures.integral_closure(I)
            inputs.closure_gap = length - res.length if ring.nvars == 2 and not ring.has_quotient else None
            if opts.integral_closure:
                closure_out["integral_closure"] = res.to_dict()
        elif opts.integral_closure:
            raise closures.ClosureError("integral closure is only available for monomial ideals")

    bounds = evaluate_bounds(inputs)
    flags = {
        "goto_minimal_multiplicity": None,
        "normally_flat_equality": e0 == length * f0,
        "reduction_one_consistent": (f0 == mu - d + 1) if r == 1 else None,
    }
    if f0 == e1 + 1:
        L = localized_reduction(I, J, r)
        mJ = maximal_times(L, contained=tower.m_power(r + 1))
        goto = _finite_length(mJ) == _finite_length(tower.m_power(1))
        flags["goto_minimal_multiplicity"] = goto
        if opts.cm_ring and not goto:
            raise ConsistencyError("f0 = e1 + 1 but m I != m J")
    notes = asserted_implications(inputs, bounds, normal_assert=opts.normal_assert,
                                  gorenstein_assert=opts.gorenstein_assert)
    return InvariantReport(
        d=d, ell=d, length=length, mu=mu, e=tuple(e), f=tuple(f),
        reduction=tuple(str(g) for g in J.gens), reduction_source=source, r=r, sally_degree=sd,
        fiber_cm=fcm, bounds=bounds, flags=flags, implications=notes,
        samples=[lam_samples, mu_samples], closures=closure_out,
    )
