"""Exact fitting of eventually-polynomial integer sequences.

A sequence ``y(1), y(2), ...`` is matched against

    P(m) = sum_i (-1)^i c_i * C(m + shift + D - i, D - i),   i = 0..D

with ``shift = -1`` for Hilbert-Samuel functions (so that ``c_0`` is the
multiplicity) and ``shift = 0`` for Hilbert functions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class FitError(ValueError):
    pass


def binom(n: int, k: int) -> int:
    """Binomial coefficient as a polynomial in ``n`` (zero for k < 0)."""
    if k < 0:
        return 0
    num = 1
    for j in range(k):
        num *= n - j
    den = 1
    for j in range(1, k + 1):
        den *= j
    return num // den


def evaluate(coeffs: Sequence[int], m: int, shift: int) -> int:
    D = len(coeffs) - 1
    return sum((-1) ** i * c * binom(m + shift + D - i, D - i) for i, c in enumerate(coeffs))


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rows)
    a = [row[:] + [b] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise FitError("singular interpolation system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def interpolate(values: Sequence[int], start: int, degree: int, shift: int) -> list[Fraction]:
    """Binomial-basis coefficients of the polynomial through ``degree + 1``
    consecutive samples beginning at ``m = start``."""
    D = degree
    rows = []
    for k in range(D + 1):
        m = start + k
        rows.append([Fraction((-1) ** i * binom(m + shift + D - i, D - i)) for i in range(D + 1)])
    return _solve(rows, [Fraction(values[start - 1 + k]) for k in range(D + 1)])


def fit_polynomial(values: Sequence[int], degree: int, confirm: int = 2, shift: int = -1) -> tuple[int, tuple[int, ...]]:
    """Least ``n0`` such that the interpolant through samples ``n0..n0+degree``
    reproduces every later sample (at least ``confirm`` of them).

    ``values[m-1]`` is the sample at ``m``.  Returns ``(n0, coefficients)``.
    """
    if degree < 0:
        raise FitError("negative degree")
    needed = degree + 1 + confirm
    if len(values) < needed:
        raise FitError(f"need at least {needed} samples, got {len(values)}")
    for n0 in range(1, len(values) - needed + 2):
        coeffs = interpolate(values, n0, degree, shift)
        if any(c.denominator != 1 for c in coeffs):
            continue
        ints = tuple(int(c) for c in coeffs)
        if all(evaluate(ints, m, shift) == values[m - 1] for m in range(n0, len(values) + 1)):
            return n0, ints
    raise FitError(f"no polynomial of degree {degree} fits the last {needed} of {len(values)} samples")


__all__ = ["FitError", "binom", "evaluate", "fit_polynomial", "interpolate"]
