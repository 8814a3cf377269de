from __future__ import annotations

import json
import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blowup_lab import Ideal, Ring, length_of_quotient
from blowup_lab.invariants import (
    BoundInputs,
    ConsistencyError,
    FitPolicy,
    ReductionError,
    ReportOptions,
    StabilizationError,
    bounds_report,
    evaluate_bounds,
    fiber_cm_test,
    fiber_multiplicity,
    hilbert_samuel_coeffs,
    localized_reduction,
    minimal_reduction,
    reduction_number,
    sally_degree,
    tower_of,
)

from conftest import fixture_job, monomial_ideal, random_plane_ideal

CIUPERCA = ["x^8", "x^3*y^2", "x^2*y^4", "y^8"]
CIUPERCA_J = ["x^8 + y^8 + x^2*y^4", "x^3*y^2"]


@pytest.fixture(scope="module")
def huhu():
    job = fixture_job("huckaba-huneke.job")
    R = job.make_ring()
    return R, Ideal(R, job.ideal), Ideal(R, job.reduction)


@pytest.fixture(scope="module")
def hankel():
    job = fixture_job("hankel.job")
    R = job.make_ring()
    return R, Ideal(R, job.ideal), Ideal(R, job.reduction)


class TestReductions:
    def test_maximal_ideal(self, R2):
        m = Ideal.maximal(R2)
        J = minimal_reduction(m)
        assert len(J.gens) == 2 and reduction_number(m, J) == 0 and J == m

    def test_identity(self, R2):
        I = Ideal(R2, CIUPERCA)
        assert reduction_number(I, I) == 0

    def test_huckaba_huneke(self, huhu):
        R, I, J = huhu
        assert reduction_number(I, J) == 3
        I3 = I ** 3
        assert I3 * I == J * I3
        assert I ** 3 != J * I ** 2

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_random_reduction_is_certified(self, R2, seed):
        I = Ideal(R2, CIUPERCA)
        J = minimal_reduction(I, seed=seed)
        r = reduction_number(I, J)
        assert len(J.gens) == 2
        # a random J may vanish away from the origin too, so certify at the
        # origin: I^(r+1) = J I^r + m I^(r+1), and not one step earlier
        m = Ideal.maximal(R2)
        assert I ** (r + 1) == J * I ** r + m * I ** (r + 1)
        if r:
            assert I ** r != J * I ** (r - 1) + m * I ** r
        assert minimal_reduction(I, seed=seed).gens == J.gens

    def test_not_a_reduction(self, R2):
        I = Ideal(R2, CIUPERCA)
        with pytest.raises(ReductionError):
            reduction_number(I, Ideal(R2, ["x^8", "x^3*y^2"]), cap=4)
        with pytest.raises(ReductionError):
            reduction_number(I, Ideal(R2, ["x"]))

    def test_localized_reduction_keeps_colength(self, R2):
        I = Ideal(R2, CIUPERCA)
        J = Ideal(R2, CIUPERCA_J)
        assert length_of_quotient(localized_reduction(I, J, 2)) == 40 == length_of_quotient(J)


class TestFits:
    def test_veronese(self, R2):
        I = Ideal.maximal(R2) ** 2
        e, hs = hilbert_samuel_coeffs(I, minimal_reduction(I))
        assert e == (4, 1, 0)
        assert [v for _, v in hs.samples] == [comb(2 * m + 1, 2) for m in range(1, len(hs.samples) + 1)]
        f0, f, ms = fiber_multiplicity(I)
        assert (f0, f) == (2, (2, 1))
        assert [v for _, v in ms.samples] == [2 * m + 1 for m in range(1, len(ms.samples) + 1)]

    def test_maximal_ideal_three_variables(self, R3):
        assert fiber_multiplicity(Ideal.maximal(R3))[0] == 1

    def test_ciuperca(self, R2):
        I = Ideal(R2, CIUPERCA)
        e, _ = hilbert_samuel_coeffs(I, Ideal(R2, CIUPERCA_J))
        assert e[:2] == (40, 12)

    def test_huckaba_huneke(self, huhu):
        R, I, J = huhu
        e, _ = hilbert_samuel_coeffs(I, J, FitPolicy(lambda_budget=6))
        assert e[:2] == (76, 48)

    def test_hankel(self, hankel):
        R, I, J = hankel
        assert fiber_multiplicity(I)[0] == 4

    def test_budget_too_small(self, R2):
        I = Ideal(R2, CIUPERCA)
        with pytest.raises(StabilizationError):
            hilbert_samuel_coeffs(I, None, FitPolicy(lambda_budget=4))

    def test_pre_stable_window_rejected(self):
        # samples 3..7 of this ideal lie on a quadratic with the wrong e0
        R = Ring(["x", "y"])
        I = monomial_ideal(R, [(0, 8), (1, 7), (9, 0), (5, 5)])
        J = minimal_reduction(I, seed=53)
        e, hs = hilbert_samuel_coeffs(I, J)
        assert e[0] == 71 == length_of_quotient(localized_reduction(I, J, reduction_number(I, J)))
        assert hs.rejected and hs.rejected[0][1][0] == 70

    @settings(max_examples=12, deadline=None)
    @given(st.integers(0, 10**6))
    def test_wider_window_changes_nothing(self, seed):
        R = Ring(["x", "y"])
        I = monomial_ideal(R, random_plane_ideal(random.Random(seed), 6))
        J = minimal_reduction(I, seed=seed)
        r = reduction_number(I, J)
        e, hs = hilbert_samuel_coeffs(I, J, r=r)
        f0, f, ms = fiber_multiplicity(I, r=r)
        wide = FitPolicy(confirm=4, lambda_budget=len(hs.samples) + 2, mu_budget=len(ms.samples) + 2)
        assert hilbert_samuel_coeffs(I, J, wide, r=r)[0] == e
        assert fiber_multiplicity(I, wide, r=r)[1] == f


class TestSallyAndFiber:
    def test_sally_degree(self):
        assert sally_degree(4, 0, 4) == 0
        assert sally_degree(6, 5, 2) == 1
        assert sally_degree(76, 48, 31) == 3
        with pytest.raises(ConsistencyError):
            sally_degree(10, 2, 3)

    def test_fiber_cm_huckaba_huneke(self, huhu):
        R, I, J = huhu
        res = fiber_cm_test(I, J, 3, 16)
        assert res.cm and res.layers == (13, 1, 1) and res.rhs == 16

    def test_fiber_cm_hankel(self, hankel):
        R, I, J = hankel
        res = fiber_cm_test(I, J, reduction_number(I, J), 4)
        assert not res.cm and res.rhs == 5

    def test_fiber_cm_parameter_ideal(self, R2):
        I = Ideal(R2, ["x^2", "y^2"])
        res = fiber_cm_test(I, I, 0, 1)
        assert res.cm and (res.lhs, res.rhs) == (1, 1)

    def test_fiber_bound_is_enforced(self, R2):
        I = Ideal(R2, ["x^2", "y^2"])
        with pytest.raises(ConsistencyError):
            fiber_cm_test(I, I, 0, 2)


class TestBoundsReport:
    def test_hankel(self, hankel):
        R, I, J = hankel
        rep = bounds_report(I, ReportOptions(reduction=J))
        assert (rep.e0, rep.e1, rep.f0, rep.mu, rep.d, rep.length) == (4, 3, 4, 4, 2, 2)
        assert rep.bound("fiber_vs_sally").status == "equality"
        assert not rep.fiber_cm.cm
        assert rep.flags["goto_minimal_multiplicity"] is True
        claims = " ".join(n["claim"] for n in rep.implications)
        assert "unmixed" in claims and "depth F = 1" in claims
        assert all(n["computed"] is False for n in rep.implications)

    def test_huckaba_huneke(self, huhu):
        R, I, J = huhu
        rep = bounds_report(I, ReportOptions(reduction=J, window=FitPolicy(lambda_budget=6, mu_budget=5)))
        assert (rep.e0, rep.e1, rep.f0, rep.r, rep.length, rep.mu) == (76, 48, 16, 3, 31, 16)
        assert rep.sally_degree == 3
        b = rep.bound("fiber_vs_sally")
        assert b.status == "holds" and (b.lhs, b.rhs) == (16, 17)
        assert rep.fiber_cm.cm
        assert rep.bound("reduction_vs_fiber").hypothesis_met
        assert rep.violations == []

    def test_ciuperca_with_closures(self, R2):
        I = Ideal(R2, CIUPERCA)
        rep = bounds_report(I, ReportOptions(reduction=Ideal(R2, CIUPERCA_J), ratliff_rush=True,
                                             s2_ideal=True, integral_closure=True))
        assert (rep.bound("fiber_vs_sally").lhs, rep.bound("fiber_vs_sally").rhs) == (4, 5)
        s2 = rep.bound("fiber_vs_s2")
        assert s2.status == "equality" and s2.rhs == 4
        assert rep.bound("fiber_vs_s2_generators").status == "equality"
        assert rep.bound("fiber_vs_ratliff_rush").rhs <= rep.bound("fiber_vs_sally").rhs
        assert rep.violations == []

    def test_veronese(self, R2):
        rep = bounds_report(Ideal.maximal(R2) ** 2)
        assert (rep.e0, rep.e1, rep.f0, rep.r) == (4, 1, 2, 1)
        assert rep.flags["reduction_one_consistent"] is True
        assert rep.bound("reduction_one_fiber").status == "equality"

    def test_hypothesis_gating(self):
        v = BoundInputs(d=1, e0=6, e1=5, length=2, mu=3, f0=3, r=2, fiber_cm=False, fiber_rhs=4)
        recs = {b.name: b for b in evaluate_bounds(v)}
        rf = recs["reduction_vs_fiber"]
        assert rf.status == "violated" and not rf.hypothesis_met and not rf.failed
        assert recs["reduction_vs_sally_degree"].status == "equality"
        assert recs["reduction_vs_sally_minus_one"].hypothesis_met is False

    def test_violation_is_flagged(self):
        v = BoundInputs(d=2, e0=4, e1=1, length=3, mu=3, f0=9, r=1, fiber_cm=True, fiber_rhs=9)
        failed = {b.name for b in evaluate_bounds(v) if b.failed}
        assert "fiber_vs_e0_e1" in failed and "fiber_vs_sally" in failed

    def test_deterministic(self, R2):
        I = Ideal(R2, ["x^7", "x^2*y^3", "y^6"])
        a = bounds_report(I, ReportOptions(seed=3, ratliff_rush=True, s2_ideal=True)).to_dict()
        b = bounds_report(Ideal(R2, ["x^7", "x^2*y^3", "y^6"]),
                          ReportOptions(seed=3, ratliff_rush=True, s2_ideal=True)).to_dict()
        assert json.dumps(a) == json.dumps(b)

    def test_rejects_non_primary(self, R2):
        with pytest.raises(Exception):
            bounds_report(Ideal(R2, ["x^2"]))

    def test_power_tower_is_cached(self, R2):
        I = Ideal(R2, CIUPERCA)
        t = tower_of(I)
        assert t is tower_of(I)
        assert t.length(1) == 30 and t.mu(1) == 4
