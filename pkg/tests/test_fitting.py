from __future__ import annotations

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blowup_lab.fitting import FitError, binom, evaluate, fit_polynomial


def samuel(coeffs, m):
    """sum (-1)^i e_i C(m + d - 1 - i, d - i), written out directly."""
    d = len(coeffs) - 1
    return sum((-1) ** i * e * comb(m + d - 1 - i, d - i) if m + d - 1 - i >= 0 else 0
               for i, e in enumerate(coeffs))


def test_binom_is_polynomial():
    assert binom(5, 2) == 10
    assert binom(-1, 2) == 1  # (-1)(-2)/2
    assert binom(3, -1) == 0


def test_veronese_closed_form():
    values = [comb(2 * m + 1, 2) for m in range(1, 8)]
    n0, coeffs = fit_polynomial(values, 2)
    assert coeffs == (4, 1, 0) and n0 == 1


def test_fiber_line():
    n0, coeffs = fit_polynomial([2 * m + 1 for m in range(1, 6)], 1, shift=0)
    assert coeffs == (2, 1)


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=4), st.integers(0, 4),
       st.lists(st.integers(-50, 50), max_size=4))
def test_recovers_coefficients_after_noise(coeffs, extra, noise):
    d = len(coeffs) - 1
    head = [v + 1000 for v in noise]  # arbitrary pre-stable prefix
    values = head + [samuel(coeffs, m) for m in range(len(head) + 1, len(head) + d + 4 + extra)]
    n0, got = fit_polynomial(values, d)
    assert got == tuple(coeffs)
    assert n0 <= len(head) + 1
    assert all(evaluate(got, m, -1) == values[m - 1] for m in range(n0, len(values) + 1))


def test_needs_confirmation_samples():
    with pytest.raises(FitError):
        fit_polynomial([1, 4, 9, 16], 2)


def test_rejects_non_polynomial_tail():
    with pytest.raises(FitError):
        fit_polynomial([2 ** m for m in range(1, 10)], 2)


def test_pre_stable_window_is_skipped():
    # quadratic from m = 4 on, garbage before
    values = [7, 7, 7] + [samuel((3, 2, 1), m) for m in range(4, 10)]
    assert fit_polynomial(values, 2) == (4, (3, 2, 1))
