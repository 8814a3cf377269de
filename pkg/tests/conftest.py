from __future__ import annotations

import random

import pytest

from blowup_lab import Ideal, Ring
from blowup_lab.cli import fixture_paths, load_job


def random_plane_ideal(rng: random.Random, max_exp: int = 10) -> list[tuple[int, int]]:
    """Exponent vectors of an m-primary monomial ideal of k[x, y]."""
    a, b = rng.randint(1, max_exp), rng.randint(1, max_exp)
    gens = [(a, 0), (0, b)]
    for _ in range(rng.randint(0, 4)):
        gens.append((rng.randint(0, a - 1), rng.randint(0, b - 1)))
    return [g for g in gens if any(g)]


def monomial_ideal(ring: Ring, exps) -> Ideal:
    return Ideal(ring, [ring.monomial(e) for e in exps])


@pytest.fixture
def R2() -> Ring:
    return Ring(["x", "y"])


@pytest.fixture
def R3() -> Ring:
    return Ring(["x", "y", "z"])


def fixture_job(name: str):
    path = next(p for p in fixture_paths() if p.name == name)
    return load_job(path)


_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record the pass/fail line of an acceptance criterion.

    Usage: ``with criterion(n, "label") as check: check(cond, "what")``.
    """
    from contextlib import contextmanager

    @contextmanager
    def run(number: int, label: str):
        failures: list[str] = []
        facts: list[str] = []

        def check(ok: bool, what: str) -> None:
            (facts if ok else failures).append(what)

        try:
            yield check
        except Exception as exc:  # an exception is a failure of the criterion too
            failures.append(f"{type(exc).__name__}: {exc}")
        status = "FAIL" if failures else "PASS"
        detail = "; ".join(failures) if failures else "; ".join(facts)
        line = f"criterion {number} [{label}]: {status} - {detail}"
        _ACCEPTANCE[number] = line
        print(line)
        assert not failures, line

    return run


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[number])
