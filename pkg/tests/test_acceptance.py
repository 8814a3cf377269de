"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

from __future__ import annotations

import random
import time
from math import comb

from blowup_lab import Ideal, MonomialIdeal, Ring, length_of_quotient, min_gens
from blowup_lab.cli import random_monomial_ideal
from blowup_lab.closures import integral_closure, ratliff_rush, s2_ideal
from blowup_lab.fitting import fit_polynomial
from blowup_lab.invariants import (
    FitPolicy,
    ReportOptions,
    bounds_report,
    fiber_cm_test,
    hilbert_samuel_coeffs,
    localized_reduction,
    reduction_number,
    tower_of,
)
from blowup_lab.jobs import run_job
from blowup_lab.monomial import lattice_length
from blowup_lab.semigroup import NumericalSemigroup, SemigroupIdeal, sg_invariants

from conftest import fixture_job


def bounds_by_name(records):
    return {b["name"]: b for b in records}


def test_semigroup_fixture(criterion):
    with criterion(1, "semigroup ring k[[t^6,t^11,t^15,t^31]], I=(t^6,t^11,t^31)") as check:
        t0 = time.perf_counter()
        report = run_job(fixture_job("semigroup.job")).data
        S = NumericalSemigroup((6, 11, 15, 31))
        inv = sg_invariants(S, SemigroupIdeal(S, (6, 11, 31)))
        seconds = time.perf_counter() - t0
        e, f, r = report["invariants"]["e"], report["invariants"]["f"], report["invariants"]["reduction"]["r_J"]
        check(e == [6, 5] and f == [3] and r == 2, f"e0={e[0]} e1={e[1]} f0={f[0]} r={r}")
        check((inv.e0, inv.e1, inv.f0, inv.r) == (6, 5, 3, 2), "direct backend agrees")
        check(report["invariants"]["length"] == 2 == inv.length, "lambda(R/I)=2")
        b = bounds_by_name(report["bounds"])
        rs = b["reduction_vs_sally_degree"]
        check(rs["status"] == "equality" and (rs["lhs"], rs["rhs"]) == (2, 2), "r = e1-e0+lambda+1 = 2 (equality)")
        rf = b["reduction_vs_fiber"]
        check(rf["status"] == "violated" and (rf["lhs"], rf["rhs"]) == (2, 1) and not rf["hypothesis_met"],
              "r <= f0-mu+d fails as expected (2 > 1)")
        check(report["fiber_cm"]["cm"] is False, "fiber_cm_test false (4 != 3)")
        check(report["exit_code"] == 0, "exit 0")
        check(seconds < 1.0, f"{seconds:.2f}s < 1s")


def test_hankel_fixture(criterion):
    with criterion(2, "Hankel determinantal ring, I=(t1,t2,t4,t5)") as check:
        t0 = time.perf_counter()
        job = fixture_job("hankel.job")
        R = job.make_ring()
        I = Ideal(R, job.ideal)
        rep = bounds_report(I, ReportOptions(reduction=Ideal(R, job.reduction)))
        check((rep.f0, rep.e0, rep.e1, rep.mu, rep.d) == (4, 4, 3, 4, 2),
              f"f0={rep.f0} e0={rep.e0} e1={rep.e1} mu={rep.mu} d={rep.d}")
        check(rep.length == 2, f"lambda(R/I)={rep.length}")
        main = rep.bound("fiber_vs_sally")
        check(main.status == "equality", f"fiber_vs_sally {main.lhs} {main.relation} {main.rhs}: {main.status}")
        # the reduction named in the criterion
        J = Ideal(R, ["T1", "T2"])
        tower = tower_of(I)
        layers = [tower.layer(J, 1), tower.layer(J, 2)]
        check(layers[0] == 2, f"mu(I/J)={layers[0]} with J=(t1,t2)")
        check(layers[1] == 2, f"mu(I^2/JI)={layers[1]} with J=(t1,t2)")
        r = reduction_number(I, J)
        check(r == 2, f"r_J={r} with J=(t1,t2)")
        cm = fiber_cm_test(I, J, r, rep.f0)
        check(not cm.cm and (cm.lhs, cm.rhs) == (4, 5), f"fiber_cm false via {cm.lhs} < {cm.rhs}")
        seconds = time.perf_counter() - t0
        check(seconds < 30, f"{seconds:.1f}s < 30s")


def test_huckaba_huneke_fixture(criterion):
    with criterion(3, "16-generated normal ideal of k[x,y,z], p=32003") as check:
        t0 = time.perf_counter()
        job = fixture_job("huckaba-huneke.job")
        check(job.options.lambda_budget <= 6 and job.options.mu_budget <= 5,
              f"budgets m<={job.options.lambda_budget} (lambda), m<={job.options.mu_budget} (mu)")
        R = job.make_ring()
        check(R.p == 32003, "p=32003")
        I, J = Ideal(R, job.ideal), Ideal(R, job.reduction)
        window = FitPolicy(lambda_budget=job.options.lambda_budget, mu_budget=job.options.mu_budget)
        rep = bounds_report(I, ReportOptions(reduction=J, window=window))
        check(rep.mu == 16 and min_gens(I) == 16, "mu(I)=16")
        check((rep.e0, rep.e1) == (76, 48), f"e0={rep.e0} e1={rep.e1}")
        check(rep.length == 31, f"lambda(R/I)={rep.length}")
        check(rep.f0 == 16, f"f0={rep.f0}")
        check(rep.r == 3, f"r_J={rep.r}")
        fc = rep.fiber_cm
        check(fc.cm and fc.layers == (13, 1, 1) and fc.rhs == 16, f"fiber_cm true via 16 = 1+{'+'.join(map(str, fc.layers))}")
        main = rep.bound("fiber_vs_sally")
        check(main.status == "holds" and (main.lhs, main.rhs) == (16, 17), "strict 16 < 17")
        check(max(m for m, _ in rep.samples[0].samples) <= 6 and max(m for m, _ in rep.samples[1].samples) <= 5,
              "sampled within budget")
        seconds = time.perf_counter() - t0
        check(seconds <= 600, f"{seconds:.1f}s <= 600s")


def test_ciuperca_fixture(criterion):
    with criterion(4, "I=(x^8,x^3y^2,x^2y^4,y^8) and its S2 ideal") as check:
        t0 = time.perf_counter()
        job = fixture_job("ciuperca.job")
        R = job.make_ring()
        I, J = Ideal(R, job.ideal), Ideal(R, job.reduction)
        rep = bounds_report(I, ReportOptions(reduction=J, s2_ideal=True, char0_assert=True))
        check((rep.e0, rep.e1, rep.length, rep.f0) == (40, 12, 30, 4),
              f"e0={rep.e0} e1={rep.e1} lambda={rep.length} f0={rep.f0}")
        main = rep.bound("fiber_vs_sally")
        check(main.status == "holds" and (main.lhs, main.rhs) == (4, 5), "strict 4 < 5 for I")
        res = s2_ideal(I, J)
        expected = Ideal(R, ["x^8", "x^3*y^2", "x^2*y^4", "x*y^6", "y^8"])
        check(res.closed == expected, "S2 ideal = (x^8, x^3y^2, x^2y^4, xy^6, y^8)")
        check(res.length == 28 and res.mu == 5, f"lambda(R/I^)={res.length} mu(I^)={res.mu}")
        s2 = rep.bound("fiber_vs_s2")
        check(s2.status == "equality" and s2.rhs == 12 - 40 + 28 + 5 - 2 + 1 == 4, "4 = 12-40+28+5-2+1")
        check(res.closed ** 2 == J * res.closed, "I^^2 = J I^")
        check(rep.f0 == res.mu - 1, "f0 = mu(I^) - 1")
        seconds = time.perf_counter() - t0
        check(seconds < 120, f"{seconds:.1f}s < 120s")


def test_veronese_oracle(criterion):
    with criterion(5, "I=m^2 in k[x,y] against closed forms") as check:
        R = Ring(["x", "y"])
        I = Ideal.maximal(R) ** 2
        rep = bounds_report(I)
        lengths = [v for _, v in rep.samples[0].samples]
        mus = [v for _, v in rep.samples[1].samples]
        check(lengths == [comb(2 * m + 1, 2) for m in range(1, len(lengths) + 1)], "lambda(R/I^m)=C(2m+1,2)")
        check(mus == [2 * m + 1 for m in range(1, len(mus) + 1)], "mu(I^m)=2m+1")
        check((rep.e0, rep.e1, rep.f0) == (4, 1, 2), f"e0={rep.e0} e1={rep.e1} f0={rep.f0}")
        check(rep.r == 0, f"r={rep.r} (expected 0)")
        main = rep.bound("fiber_vs_sally")
        check(main.status == "equality" and main.rhs == 1 - 4 + 3 + 3 - 2 + 1, "2 = 1-4+3+3-2+1")
        P = bounds_report(Ideal(R, ["x^2", "y^2"]))
        check(P.sally_degree == 0 and P.f0 == 1, "(x^2, y^2): Sally degree 0, f0=1")


def _fitted_e0_without_reduction(I, upto):
    values = [tower_of(I).length(m) for m in range(1, upto + 1)]
    return fit_polynomial(values, 2, confirm=4)[1][0]


def test_property_suite(criterion):
    with criterion(6, "property suite on 60 random monomial ideals of k[x,y]") as check:
        t0 = time.perf_counter()
        rng = random.Random(20240601)
        R = Ring(["x", "y"])
        counts = dict.fromkeys("abcdefghij", 0)

        def verify(letter: str, ok: bool, tag: str) -> None:
            counts[letter] += 1
            if not ok:
                check(False, f"({letter}) {tag}")

        n = 0
        for k in range(60):
            exps = random_monomial_ideal(rng, 2, 10)
            I = Ideal(R, [R.monomial(e) for e in exps])
            rep = bounds_report(I, ReportOptions(seed=k, ratliff_rush=True))
            n += 1
            b = {x.name: x for x in rep.bounds}
            tag = f"ideal {k} {exps}"
            main_rhs = b["fiber_vs_sally"].rhs
            verify("a", rep.f0 <= min(rep.e0, rep.e1 + 1) and rep.f0 <= main_rhs, tag)
            rr_rhs = b["fiber_vs_ratliff_rush"].rhs
            verify("b", rr_rhs <= main_rhs and rep.f0 <= rr_rhs, tag)
            # (c) compare with a fit over a longer window that never sees J
            J = Ideal(R, rep.reduction)
            colength = length_of_quotient(localized_reduction(I, J, rep.r))
            e0_free = _fitted_e0_without_reduction(I, len(rep.samples[0].samples) + 2)
            verify("c", rep.e0 == colength == e0_free, f"{tag}: fit {rep.e0}/{e0_free}, lambda(R/J) {colength}")
            verify("d", rep.e0 <= rep.length * rep.f0, tag)
            verify("e", 2 * rep.e0 - rep.e1 <= rep.length * (rep.mu - rep.d + 2), tag)
            if rep.r == 1:
                verify("f", rep.f0 == rep.mu - rep.d + 1, tag)
            verify("g", rep.r <= rep.e1 - rep.e0 + rep.length + 1, f"{tag}: r={rep.r}")
            rr = ratliff_rush(I).closed
            e_rr, _ = hilbert_samuel_coeffs(rr, J)
            verify("h", e_rr == rep.e and length_of_quotient(rr) + min_gens(rr) <= rep.length + rep.mu, tag)
            bar = integral_closure(I).closed
            e_bar, _ = hilbert_samuel_coeffs(bar, J)
            verify("i", I.issubset(bar) and integral_closure(bar).closed == bar and e_bar[0] == rep.e0, tag)
            # (j) Buchberger on a non-monomial presentation against the grid scan
            twisted = Ideal(R, list(I.gens) + [I.gens[0] + I.gens[-1]])
            grid = lattice_length(MonomialIdeal(2, tuple(exps)))
            verify("j", length_of_quotient(twisted) == grid == rep.length, tag)
        seconds = time.perf_counter() - t0
        check(n >= 50, f"{n} ideals")
        check(True, "instances checked " + " ".join(f"({key}) {v}" for key, v in counts.items()))
        check(seconds < 300, f"{seconds:.1f}s < 300s")


def test_asserted_implications(criterion):
    with criterion(7, "structural claims carried as annotations only") as check:
        job = fixture_job("hankel.job")
        R = job.make_ring()
        I = Ideal(R, job.ideal)
        rep = bounds_report(I, ReportOptions(reduction=Ideal(R, job.reduction), normal_assert=True))
        notes = rep.implications
        kinds = {n["kind"] for n in notes}
        check(kinds == {"paper-asserted implication"}, "every note is a paper-asserted implication")
        check(all(n["computed"] is False for n in notes), "none marked as computed")
        claims = [n["claim"] for n in notes]
        for needle, what in [("unmixed", "F unmixed"), ("depth F >= min(depth G + 1, d)", "depth bound"),
                             ("integrally closed", "m I^m integrally closed"), ("depth F = 1", "depth F = 1")]:
            check(any(needle in c for c in claims), f"{what} annotated")
        names = {b.name for b in rep.bounds}
        check(not any("depth" in nm or "unmixed" in nm for nm in names), "no bound record claims them")
        report = run_job(job).data
        check(report["asserted_implications"] and all(n["computed"] is False for n in report["asserted_implications"]),
              "job report carries them")
