"""Job files and the task runner behind the command line.

A job file is line oriented::

    # comment
    [ring]
    vars = x, y
    char = 0
    order = degrevlex
    quotient = x^3 - y^2        # repeatable

    [ideal]                     # one generator per line
    x^2
    x*y

    [reduction]                 # optional, same layout as [ideal]
    x^2 + y^2

    [tasks]
    invariants
    bounds

    [options]
    seed = 0

A ``[semigroup]`` section (``generators = ...`` and ``ideal = ...``) replaces
``[ring]``/``[ideal]`` for the one-dimensional backend.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any

from . import __version__
from .closures import ClosureError, integral_closure, ratliff_rush, s2_ideal
from .groebner import Ideal
from .invariants import (
    BoundInputs,
    ConsistencyError,
    FitPolicy,
    InvariantError,
    ReportOptions,
    asserted_implications,
    bounds_report,
    evaluate_bounds,
    sally_degree,
)
from .parser import ParseError
from .ring import DEFAULT_PRIME, MonomialOrder, RingError, is_prime, make_ring
from .semigroup import NumericalSemigroup, SemigroupError, SemigroupIdeal, sg_invariants

TASKS = ("invariants", "bounds", "cm_test", "ratliff_rush", "s2_ideal", "integral_closure")
DEFAULT_TASKS = ("invariants", "bounds", "cm_test")
SECTIONS = ("ring", "ideal", "semigroup", "reduction", "tasks", "options")

EXIT_OK, EXIT_TASK_ERROR, EXIT_VIOLATION, EXIT_PARSE_ERROR = 0, 1, 2, 3


class JobError(ValueError):
    """Malformed job file; carries a 1-based position."""

    def __init__(self, message: str, line: int = 0, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}" if line else message)


@dataclass(frozen=True)
class JobOptions:
    seed: int = 0
    p: int = DEFAULT_PRIME
    cap: int = 10
    retries: int = 8
    lambda_budget: int = 0  # 0: d + 6
    mu_budget: int = 0  # 0: d + 5
    confirm: int = 2
    rr_max: int = 12
    rr_confirm: int = 2
    char0_assert: bool = False
    cm_ring: bool = True
    normal_assert: bool = False
    gorenstein_assert: bool = False


@dataclass(frozen=True)
class Job:
    variables: tuple[str, ...] = ()
    char: int = 0
    order: str = "degrevlex"
    quotient: tuple[str, ...] = ()
    ideal: tuple[str, ...] | None = None
    semigroup: tuple[int, ...] | None = None
    semigroup_ideal: tuple[int, ...] | None = None
    reduction: tuple[str, ...] | None = None
    tasks: tuple[str, ...] = DEFAULT_TASKS
    options: JobOptions = field(default_factory=JobOptions)

    @property
    def backend(self) -> str:
        return "semigroup" if self.semigroup is not None else "polynomial"

    @property
    def prime(self) -> int:
        """Characteristic zero is modelled by the prime from the options."""
        return self.char if self.char else self.options.p

    def make_ring(self):
        return make_ring(self.variables, self.prime, self.order, self.quotient)

    def to_dict(self) -> dict:
        out = {
            "backend": self.backend,
            "ring": {"vars": list(self.variables), "char": self.char, "order": self.order,
                     "quotient": list(self.quotient)},
            "ideal": list(self.ideal) if self.ideal is not None else None,
            "semigroup": None,
            "reduction": list(self.reduction) if self.reduction is not None else None,
            "tasks": list(self.tasks),
            "options": asdict(self.options),
        }
        if self.semigroup is not None:
            out["semigroup"] = {"generators": list(self.semigroup), "ideal": list(self.semigroup_ideal)}
        return out


# -- parsing -----------------------------------------------------------------------------


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _int_list(value: str, lineno: int, col: int) -> tuple[int, ...]:
    out = []
    for part in value.split(","):
        part = part.strip()
        try:
            out.append(int(part))
        except ValueError:
            raise JobError(f"expected an integer, got {part!r}", lineno, col) from None
    return tuple(out)


def _bool(value: str, lineno: int, col: int) -> bool:
    v = value.strip().lower()
    if v in ("true", "yes", "1", "on"):
        return True
    if v in ("false", "no", "0", "off"):
        return False
    raise JobError(f"expected true or false, got {value!r}", lineno, col)


def parse_job(text: str) -> Job:
    """Parse and fully validate a job file."""
    section = None
    seen: dict[str, int] = {}
    ring: dict[str, Any] = {"quotient": []}
    sg: dict[str, tuple[int, ...]] = {}
    lists: dict[str, list[tuple[str, int, int]]] = {"ideal": [], "reduction": [], "quotient": []}
    tasks: list[str] = []
    opts: dict[str, Any] = {}
    option_types = {f.name: f.type for f in fields(JobOptions)}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        stripped = line.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise JobError("unterminated section header", lineno, indent + 1)
            section = stripped[1:-1].strip()
            if section not in SECTIONS:
                raise JobError(f"unknown section [{section}]", lineno, indent + 2)
            if section in seen:
                raise JobError(f"section [{section}] appears twice (first on line {seen[section]})", lineno, indent + 1)
            seen[section] = lineno
            continue
        if section is None:
            raise JobError("content before the first section header", lineno, indent + 1)
        if section in ("ideal", "reduction"):
            lists[section].append((stripped, lineno, indent))
            continue
        if section == "tasks":
            for name in stripped.replace(",", " ").split():
                if name not in TASKS:
                    raise JobError(f"unknown task {name!r}; choose from {', '.join(TASKS)}", lineno,
                                   line.find(name) + 1)
                if name not in tasks:
                    tasks.append(name)
            continue
        if "=" not in line:
            raise JobError("expected 'key = value'", lineno, indent + 1)
        eq = line.index("=")
        key = line[:eq].strip()
        vcol = eq + 1  # 0-based offset of the value
        while vcol < len(line) and line[vcol].isspace():
            vcol += 1
        value = line[vcol:].rstrip()
        if section == "ring":
            if key == "vars":
                names = tuple(v.strip() for v in value.split(",") if v.strip())
                if not names:
                    raise JobError("empty variable list", lineno, vcol + 1)
                ring["vars"] = names
            elif key == "char":
                ring["char"] = _int_list(value, lineno, vcol + 1)[0]
            elif key == "order":
                ring["order"] = value
            elif key == "quotient":
                lists["quotient"].append((value, lineno, vcol))
            else:
                raise JobError(f"unknown ring key {key!r}", lineno, indent + 1)
        elif section == "semigroup":
            if key not in ("generators", "ideal"):
                raise JobError(f"unknown semigroup key {key!r}", lineno, indent + 1)
            sg[key] = _int_list(value, lineno, vcol + 1)
        elif section == "options":
            if key not in option_types:
                raise JobError(f"unknown option {key!r}", lineno, indent + 1)
            opts[key] = _bool(value, lineno, vcol + 1) if option_types[key] == "bool" \
                else _int_list(value, lineno, vcol + 1)[0]

    has_ideal = "ideal" in seen
    has_sg = "semigroup" in seen
    if has_ideal == has_sg:
        raise JobError("a job needs exactly one of [ideal] or [semigroup]")
    options = JobOptions(**opts)
    if not is_prime(options.p):
        raise JobError(f"option p = {options.p} is not prime")
    job_tasks = tuple(tasks) if tasks else DEFAULT_TASKS

    if has_sg:
        if "generators" not in sg or "ideal" not in sg:
            raise JobError("[semigroup] needs 'generators' and 'ideal'", seen["semigroup"])
        if "reduction" in seen:
            raise JobError("the semigroup backend always uses the smallest generator as reduction",
                           seen["reduction"])
        job = Job(semigroup=sg["generators"], semigroup_ideal=sg["ideal"], tasks=job_tasks,
                       options=options, char=ring.get("char", 0))
        _validate_semigroup(job)
        return job

    if "vars" not in ring:
        raise JobError("[ring] must declare vars", seen.get("ring", 0))
    if not lists["ideal"]:
        raise JobError("[ideal] has no generators", seen["ideal"])
    job = Job(
        variables=ring["vars"],
        char=ring.get("char", 0),
        order=ring.get("order", "degrevlex"),
        quotient=tuple(v for v, _, _ in lists["quotient"]),
        ideal=tuple(v for v, _, _ in lists["ideal"]),
        reduction=tuple(v for v, _, _ in lists["reduction"]) if "reduction" in seen else None,
        tasks=job_tasks,
        options=options,
    )
    _validate_polynomial(job, lists, seen)
    return job


def _validate_semigroup(job: Job) -> None:
    try:
        S = NumericalSemigroup(job.semigroup)
        SemigroupIdeal(S, job.semigroup_ideal)
    except SemigroupError as exc:
        raise JobError(str(exc)) from None


def _validate_polynomial(job: Job, lists: dict, seen: dict) -> None:
    if job.char and not is_prime(job.char):
        raise JobError(f"char = {job.char} is neither 0 nor prime", seen.get("ring", 0))
    try:
        MonomialOrder.parse(job.order)
        ring = make_ring(job.variables, job.prime, job.order)
    except (RingError, ValueError) as exc:
        raise JobError(str(exc), seen.get("ring", 0)) from None
    for name in ("quotient", "ideal", "reduction"):
        for text, lineno, col in lists[name]:
            ring.parse(text, line=lineno, column_offset=col)
    if job.quotient:
        try:
            job.make_ring()
        except RingError as exc:
            raise JobError(str(exc), seen.get("ring", 0)) from None


def format_job(job: Job) -> str:
    """Inverse of :func:`parse_job`."""
    lines = []
    if job.backend == "polynomial":
        lines += ["[ring]", f"vars = {', '.join(job.variables)}", f"char = {job.char}", f"order = {job.order}"]
        lines += [f"quotient = {q}" for q in job.quotient]
        lines += ["", "[ideal]", *job.ideal]
        if job.reduction is not None:
            lines += ["", "[reduction]", *job.reduction]
    else:
        lines += ["[semigroup]", f"generators = {', '.join(map(str, job.semigroup))}",
                  f"ideal = {', '.join(map(str, job.semigroup_ideal))}"]
    lines += ["", "[tasks]", *job.tasks, "", "[options]"]
    for f in fields(JobOptions):
        v = getattr(job.options, f.name)
        lines.append(f"{f.name} = {str(v).lower() if isinstance(v, bool) else v}")
    return "\n".join(lines) + "\n"


# -- running -------------------------------------------------------------------------------


@dataclass
class Report:
    data: dict
    exit_code: int

    def to_text(self, include_timing: bool = True) -> str:
        data = self.data if include_timing else {k: v for k, v in self.data.items() if k != "timing_ms"}
        return json.dumps(data, indent=2) + "\n"


def apply_overrides(job: Job, seed: int | None = None, p: int | None = None,
                    max_power: int | None = None) -> Job:
    opts = job.options
    if seed is not None:
        opts = replace(opts, seed=seed)
    if p is not None:
        if not is_prime(p):
            raise JobError(f"--p {p} is not prime")
        opts = replace(opts, p=p)
    if max_power is not None:
        opts = replace(opts, lambda_budget=max_power, mu_budget=max(max_power - 1, 1))
    return replace(job, options=opts)


def _report_options(job: Job, reduction: Ideal | None) -> ReportOptions:
    o = job.options
    window = FitPolicy(confirm=o.confirm, lambda_budget=o.lambda_budget or None, mu_budget=o.mu_budget or None)
    return ReportOptions(
        seed=o.seed, reduction=reduction, cap=o.cap, retries=o.retries, window=window,
        char0_assert=o.char0_assert, cm_ring=o.cm_ring, normal_assert=o.normal_assert,
        gorenstein_assert=o.gorenstein_assert, ratliff_rush="ratliff_rush" in job.tasks,
        s2_ideal="s2_ideal" in job.tasks, integral_closure="integral_closure" in job.tasks,
        rr_max=o.rr_max, rr_confirm=o.rr_confirm,
    )


def _error_record(task: str, exc: Exception) -> dict:
    return {"task": task, "error": type(exc).__name__, "message": str(exc)}


def _run_polynomial(job: Job, out: dict, timing: dict) -> None:
    ring = job.make_ring()
    I = Ideal(ring, job.ideal)
    J = Ideal(ring, job.reduction) if job.reduction is not None else None
    numeric = {"invariants", "bounds", "cm_test"} & set(job.tasks)
    if numeric:
        t0 = time.perf_counter()
        try:
            rep = bounds_report(I, _report_options(job, J))
        except ConsistencyError as exc:
            out["errors"].append(_error_record("bounds", exc))
            out["violation"] = True
            return
        except (InvariantError, ClosureError, ArithmeticError) as exc:
            out["errors"].append(_error_record(",".join(sorted(numeric)), exc))
            return
        finally:
            timing["invariants"] = int((time.perf_counter() - t0) * 1000)
        data = rep.to_dict()
        inv = {k: data[k] for k in ("d", "analytic_spread", "length", "mu", "e", "f", "reduction",
                                    "sally_degree", "samples")}
        if "invariants" in job.tasks:
            out["invariants"] = inv
        if "cm_test" in job.tasks:
            out["fiber_cm"] = data["fiber_cm"]
        if "bounds" in job.tasks:
            out["bounds"] = data["bounds"]
            out["flags"] = data["flags"]
            out["asserted_implications"] = data["asserted_implications"]
            if rep.violations:
                out["violation"] = True
        out["closures"] = data["closures"]
        return
    # closures on their own
    t0 = time.perf_counter()
    for task, fn in (("ratliff_rush", lambda: ratliff_rush(I, job.options.rr_max, job.options.rr_confirm)),
                     ("s2_ideal", lambda: s2_ideal(I, J, seed=job.options.seed, cap=job.options.cap)),
                     ("integral_closure", lambda: integral_closure(I))):
        if task not in job.tasks:
            continue
        try:
            out["closures"][task] = fn().to_dict()
        except (ClosureError, InvariantError, ArithmeticError) as exc:
            out["errors"].append(_error_record(task, exc))
    timing["closures"] = int((time.perf_counter() - t0) * 1000)


def semigroup_report(job: Job) -> dict:
    o = job.options
    S = NumericalSemigroup(job.semigroup)
    I = SemigroupIdeal(S, job.semigroup_ideal)
    inv = sg_invariants(S, I, cap=o.cap, confirm=max(o.confirm + 1, 3), budget=o.lambda_budget or None)
    sd = sally_degree(inv.e0, inv.e1, inv.length)
    inputs = BoundInputs(d=1, e0=inv.e0, e1=inv.e1, length=inv.length, mu=inv.mu, f0=inv.f0, r=inv.r,
                         fiber_cm=inv.cm_fiber, fiber_rhs=inv.fiber_rhs, cm_ring=True,
                         char0_assert=o.char0_assert)
    bounds = evaluate_bounds(inputs)
    return {
        "invariants": {
            "d": 1, "analytic_spread": 1, "length": inv.length, "mu": inv.mu, "e": [inv.e0, inv.e1],
            "f": [inv.f0],
            "reduction": {"generators": [f"t^{inv.reduction}"], "source": "smallest generator", "r_J": inv.r},
            "sally_degree": sd,
            "samples": [
                {"kind": "length", "samples": [[m, v] for m, v in enumerate(inv.lengths, 1)],
                 "n0": inv.n0_length, "coefficients": [inv.e0, inv.e1]},
                {"kind": "mu", "samples": [[m, v] for m, v in enumerate(inv.mus, 1)],
                 "n0": inv.n0_mu, "coefficients": [inv.f0]},
            ],
        },
        "fiber_cm": {"cm": inv.cm_fiber, "lhs": inv.f0, "rhs": inv.fiber_rhs, "layers": list(inv.layers)},
        "bounds": [b.to_dict() for b in bounds],
        "flags": {"goto_minimal_multiplicity": None, "normally_flat_equality": inv.e0 == inv.length * inv.f0,
                  "reduction_one_consistent": (inv.f0 == inv.mu) if inv.r == 1 else None},
        "asserted_implications": asserted_implications(inputs, bounds),
        "violation": any(b.failed for b in bounds),
    }


def _run_semigroup(job: Job, out: dict, timing: dict) -> None:
    t0 = time.perf_counter()
    try:
        res = semigroup_report(job)
    except ConsistencyError as exc:
        out["errors"].append(_error_record("invariants", exc))
        out["violation"] = True
        return
    except SemigroupError as exc:
        out["errors"].append(_error_record("invariants", exc))
        return
    finally:
        timing["invariants"] = int((time.perf_counter() - t0) * 1000)
    out["violation"] = res.pop("violation")
    unsupported = {"ratliff_rush", "s2_ideal", "integral_closure"} & set(job.tasks)
    for task in sorted(unsupported):
        out["errors"].append({"task": task, "error": "Unsupported",
                              "message": "closures are not available in the semigroup backend"})
    if "invariants" in job.tasks:
        out["invariants"] = res["invariants"]
    if "cm_test" in job.tasks:
        out["fiber_cm"] = res["fiber_cm"]
    if "bounds" in job.tasks:
        for key in ("bounds", "flags", "asserted_implications"):
            out[key] = res[key]


def run_job(job: Job) -> Report:
    """Execute the tasks of ``job``.  Exit code 2 on a violated bound whose
    hypotheses hold, 1 on any other task error, else 0."""
    t0 = time.perf_counter()
    out: dict[str, Any] = {
        "toolkit": {"name": "blowup-lab", "version": __version__},
        "seed": job.options.seed,
        "prime": job.prime,
        "job": job.to_dict(),
        "status": "ok",
        "exit_code": EXIT_OK,
        "invariants": None,
        "fiber_cm": None,
        "bounds": None,
        "flags": None,
        "asserted_implications": None,
        "closures": {},
        "errors": [],
        "violation": False,
    }
    timing: dict[str, int] = {}
    if job.backend == "semigroup":
        _run_semigroup(job, out, timing)
    else:
        try:
            _run_polynomial(job, out, timing)
        except (RingError, ParseError) as exc:
            out["errors"].append(_error_record("setup", exc))
    violation = out.pop("violation")
    if violation:
        code, status = EXIT_VIOLATION, "bound_violation"
    elif out["errors"]:
        code, status = EXIT_TASK_ERROR, "task_error"
    else:
        code, status = EXIT_OK, "ok"
    out["status"] = status
    out["exit_code"] = code
    timing["total"] = int((time.perf_counter() - t0) * 1000)
    out["timing_ms"] = timing
    return Report(out, code)
