"""Verification-suite configuration, runner and report rendering.

A suite is a list of (system, dimension, angular momentum, level range)
cases with a subset of checks; the runner executes every requested check,
collects all failures (it never aborts early) and the renderer serializes
the outcome deterministically as json, csv or markdown.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import __version__
from .opalg import DiffOperator, format_coefficient, format_operator
from .systems import (
    DomainError,
    SystemKind,
    SystemSpec,
    build_generators,
    casimir,
    expected_casimir_constant,
    factorize_system,
    verify_factorization_identity,
)
from .numeric_verify import (
    QuadratureRule,
    WeightKind,
    default_rule,
    fd_spectrum,
    verify_adjointness,
    verify_casimir,
    verify_ladder,
)

__all__ = [
    "ALL_CHECKS",
    "ConfigError",
    "SuiteCase",
    "SuiteConfig",
    "CaseResult",
    "Report",
    "default_config",
    "parse_config_file",
    "build_config",
    "run_suite",
    "render_report",
]

ALL_CHECKS = ("algebra", "casimir", "factorization", "ladder", "adjoint", "spectrum")

DEFAULT_TOLERANCES = {
    "ladder": 1e-8,
    "ladder_ground": 1e-10,
    "adjoint": 1e-10,
    "adjoint_wrong_weight": 1e-3,
    "casimir": 1e-8,
    "spectrum": 1e-3,
}

#: Default grid extents for the finite-difference oracle.
SPECTRUM_XMAX = {True: 12.0, False: 60.0}  # keyed by kind.oscillator_like


class ConfigError(ValueError):
    """Invalid suite configuration; carries every violation found."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class SuiteCase:
    """One verification case: a system spec plus the checks to run on it."""

    kind: SystemKind
    dim: int
    ell: int
    nmax: int = 8
    b: Fraction = Fraction(0)
    checks: tuple = ALL_CHECKS

    def spec(self) -> SystemSpec:
        if self.kind is SystemKind.PSEUDO_HARMONIC:
            return SystemSpec.pseudo_harmonic(self.dim, self.ell, B=self.b)
        if self.kind is SystemKind.MIE:
            return SystemSpec.mie(self.dim, self.ell, B=self.b)
        return SystemSpec(self.kind, self.dim, self.ell)


@dataclass(frozen=True)
class SuiteConfig:
    cases: tuple
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    spectrum_points: int = 2000
    spectrum_levels: int = 5
    format: str = "json"

    def echo(self) -> dict:
        """Canonical dictionary form for the report header."""
        return {
            "cases": [
                {
                    "kind": case.kind.value,
                    "N": case.dim,
                    "ell": case.ell,
                    "nmax": case.nmax,
                    "B": str(case.b),
                    "checks": list(case.checks),
                }
                for case in self.cases
            ],
            "tolerances": {k: self.tolerances[k] for k in sorted(self.tolerances)},
            "spectrum_points": self.spectrum_points,
            "spectrum_levels": self.spectrum_levels,
            "format": self.format,
        }


@dataclass(frozen=True)
class CaseResult:
    id: str
    check: str
    inputs: dict
    predicted: object
    measured: object
    residual: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class Report:
    version: str
    config: dict
    cases: tuple

    @property
    def passed(self) -> int:
        return sum(1 for c in self.cases if c.passed)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.cases if not c.passed)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _default_checks(dim: int, ell: int, b: Fraction) -> tuple:
    """All checks everywhere, except that the finite-difference oracle runs
    on the canonical (N=3, l=0, B=0) cases only: that is where its stated
    grid carries a second-order accuracy guarantee.  Spectra elsewhere can
    be requested explicitly (per-case accuracy then depends on the grid)."""
    if (dim, ell, b) == (3, 0, Fraction(0)):
        return ALL_CHECKS
    return tuple(c for c in ALL_CHECKS if c != "spectrum")


def default_config(checks: Optional[Iterable[str]] = None, nmax: int = 8,
                   dims: Iterable[int] = (2, 3, 5, 10),
                   ells: Iterable[int] = (0, 1, 2),
                   b_values: Iterable[Fraction] = (Fraction(0), Fraction(1)),
                   **kwargs) -> SuiteConfig:
    """The full verification campaign: every kind over the standard grid,
    with both inverse-square strengths for the pseudo-harmonic and Mie
    systems.  Passing ``checks`` applies that exact set to every case."""
    fixed = None if checks is None else tuple(checks)
    cases = []
    for kind in SystemKind:
        bs = tuple(b_values) if kind in (SystemKind.PSEUDO_HARMONIC, SystemKind.MIE) \
            else (Fraction(0),)
        for dim in dims:
            for ell in ells:
                for b in bs:
                    case_checks = fixed if fixed is not None \
                        else _default_checks(dim, ell, Fraction(b))
                    cases.append(SuiteCase(kind=kind, dim=dim, ell=ell, nmax=nmax,
                                           b=Fraction(b), checks=case_checks))
    return SuiteConfig(cases=tuple(cases), **kwargs)


# -- config file -----------------------------------------------------------------

_CONFIG_KEYS = {
    "systems", "dims", "ells", "nmax", "b_values", "checks", "format",
    "spectrum_points", "spectrum_levels", "tol_ladder", "tol_ladder_ground",
    "tol_adjoint", "tol_adjoint_wrong_weight", "tol_casimir", "tol_spectrum",
}


def parse_config_file(path: str) -> dict:
    """Read a ``key = value`` file; '#' starts a comment."""
    values = {}
    problems = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                problems.append(f"{path}:{lineno}: expected 'key = value', got {line!r}")
                continue
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                problems.append(f"{path}:{lineno}: unknown key {key!r}")
                continue
            values[key] = value.strip()
    if problems:
        raise ConfigError(problems)
    return values


def _split_list(text: str) -> list:
    return [piece.strip() for piece in text.split(",") if piece.strip()]


def build_config(values: dict) -> SuiteConfig:
    """Build a SuiteConfig from string-valued settings (config file and/or
    CLI flags, flags already merged on top).  All violations are reported
    together."""
    problems = []

    def parse(key, caster, fallback):
        if key not in values or values[key] is None:
            return fallback
        try:
            return caster(values[key])
        except (ValueError, TypeError) as exc:
            problems.append(f"{key}: {exc}")
            return fallback

    kinds = parse("systems", lambda t: [SystemKind.parse(p) for p in _split_list(t)],
                  list(SystemKind))
    dims = parse("dims", lambda t: [int(p) for p in _split_list(t)], [2, 3, 5, 10])
    ells = parse("ells", lambda t: [int(p) for p in _split_list(t)], [0, 1, 2])
    nmax = parse("nmax", int, 8)
    b_values = parse("b_values", lambda t: [Fraction(p) for p in _split_list(t)],
                     [Fraction(0), Fraction(1)])
    checks = parse("checks", _split_list, list(ALL_CHECKS))
    fmt = parse("format", str, "json")
    points = parse("spectrum_points", int, 2000)
    levels = parse("spectrum_levels", int, 5)
    for check in checks:
        if check not in ALL_CHECKS:
            problems.append(f"checks: unknown check {check!r} "
                            f"(expected subset of {', '.join(ALL_CHECKS)})")
    if fmt not in ("json", "csv", "markdown"):
        problems.append(f"format: must be json, csv or markdown, got {fmt!r}")

    tolerances = dict(DEFAULT_TOLERANCES)
    for name in DEFAULT_TOLERANCES:
        key = f"tol_{name}"
        if key in values and values[key] is not None:
            try:
                tolerances[name] = float(values[key])
            except (ValueError, TypeError) as exc:
                problems.append(f"{key}: {exc}")

    explicit_checks = "checks" in values and values["checks"] is not None
    cases = []
    for kind in kinds:
        bs = b_values if kind in (SystemKind.PSEUDO_HARMONIC, SystemKind.MIE) else [Fraction(0)]
        for dim in dims:
            for ell in ells:
                for b in bs:
                    case_checks = tuple(checks) if explicit_checks \
                        else _default_checks(dim, ell, b)
                    case = SuiteCase(kind=kind, dim=dim, ell=ell, nmax=nmax,
                                     b=b, checks=case_checks)
                    try:
                        case.spec()
                    except DomainError as exc:
                        problems.append(f"case {kind.value} N={dim} l={ell} B={b}: {exc}")
                        continue
                    cases.append(case)
    if nmax < 0:
        problems.append(f"nmax must be >= 0, got {nmax}")
    if problems:
        raise ConfigError(problems)
    return SuiteConfig(cases=tuple(cases), tolerances=tolerances,
                       spectrum_points=points, spectrum_levels=levels, format=fmt)


# -- runner ----------------------------------------------------------------------


def _symbolic_result(case_id: str, check: str, inputs: dict, label: str,
                     residual_op: DiffOperator) -> CaseResult:
    ok = residual_op.is_zero
    return CaseResult(
        id=f"{case_id}/{check}/{label}",
        check=check,
        inputs=inputs,
        predicted="0",
        measured="0" if ok else format_operator(residual_op),
        residual=float(len(residual_op.terms)),
        tolerance=0.0,
        passed=ok,
    )


def _run_algebra(case: SuiteCase, spec: SystemSpec) -> list:
    results = []
    variables = ["x"]
    if case.kind in (SystemKind.OSCILLATOR, SystemKind.HYDROGEN):
        variables.append("r")
    for variable in variables:
        triple = build_generators(spec, variable)
        for label, residual in triple.commutator_residuals().items():
            inputs = {"kind": case.kind.value, "N": case.dim, "ell": case.ell,
                      "variable": variable, "relation": label}
            results.append(_symbolic_result(
                spec.case_id(), "algebra", inputs, f"{variable}/{label}", residual))
    return results


def _run_casimir(case: SuiteCase, spec: SystemSpec, tolerances: dict,
                 rule: QuadratureRule) -> list:
    results = []
    base_inputs = {"kind": case.kind.value, "N": case.dim, "ell": case.ell}
    plus, minus = casimir(spec, 1), casimir(spec, -1)
    results.append(_symbolic_result(spec.case_id(), "casimir", dict(base_inputs),
                                    "sign-independence", plus - minus))
    expected = DiffOperator.from_coefficient(expected_casimir_constant(spec))
    results.append(_symbolic_result(spec.case_id(), "casimir", dict(base_inputs),
                                    "constant", plus - expected))
    tol = tolerances["casimir"]
    for n in range(case.nmax + 1):
        residual = verify_casimir(spec, n)
        inputs = dict(base_inputs, n=n)
        results.append(CaseResult(
            id=f"{spec.case_id()}/casimir/n{n}",
            check="casimir",
            inputs=inputs,
            predicted=float(expected_casimir_constant(spec)
                            .substitute(spec.numeric_bindings()).constant_value()),
            measured=residual,
            residual=residual,
            tolerance=tol,
            passed=residual <= tol,
        ))
    return results


def _run_factorization(case: SuiteCase, spec: SystemSpec) -> list:
    results = []
    base_inputs = {"kind": case.kind.value, "N": case.dim, "ell": case.ell}
    try:
        solutions = factorize_system(spec)
        for sol in solutions:
            constants = (f"a={format_coefficient(sol.a)}; b={format_coefficient(sol.b)}; "
                         f"c={format_coefficient(sol.c)}; f={format_coefficient(sol.f)}; "
                         f"g={format_coefficient(sol.g)}")
            results.append(CaseResult(
                id=f"{spec.case_id()}/factorization/{sol.branch}",
                check="factorization",
                inputs=dict(base_inputs, branch=sol.branch),
                predicted="consistent",
                measured=constants,
                residual=0.0,
                tolerance=0.0,
                passed=True,
            ))
    except Exception as exc:  # a failed match is a reportable failure, not a crash
        results.append(CaseResult(
            id=f"{spec.case_id()}/factorization/solve",
            check="factorization",
            inputs=dict(base_inputs),
            predicted="consistent",
            measured=str(exc),
            residual=float("inf"),
            tolerance=0.0,
            passed=False,
        ))
    for branch in ("raise", "lower"):
        residual = verify_factorization_identity(spec, branch)
        results.append(_symbolic_result(spec.case_id(), "factorization",
                                        dict(base_inputs, branch=branch),
                                        f"identity-{branch}", residual))
    return results


def _run_ladder(case: SuiteCase, spec: SystemSpec, tolerances: dict,
                rule: QuadratureRule) -> list:
    results = []
    for n in range(case.nmax + 1):
        for direction in (1, -1):
            tol = tolerances["ladder_ground"] if (n == 0 and direction == -1) \
                else tolerances["ladder"]
            report = verify_ladder(spec, n, direction, tol=tol, rule=rule)
            arrow = "+" if direction == 1 else "-"
            results.append(CaseResult(
                id=f"{spec.case_id()}/ladder/n{n}{arrow}",
                check="ladder",
                inputs={"kind": case.kind.value, "N": case.dim, "ell": case.ell,
                        "n": n, "direction": arrow},
                predicted=report.predicted,
                measured=report.measured,
                residual=report.residual,
                tolerance=tol,
                passed=report.passed,
            ))
    return results


def _run_adjoint(case: SuiteCase, spec: SystemSpec, tolerances: dict,
                 rule: QuadratureRule) -> list:
    results = []
    tol = tolerances["adjoint"]
    top = min(case.nmax, 5)
    for m in range(top + 1):
        for n in range(top + 1):
            residual = verify_adjointness(spec, m, n, tol=tol, rule=rule)
            results.append(CaseResult(
                id=f"{spec.case_id()}/adjoint/m{m}n{n}",
                check="adjoint",
                inputs={"kind": case.kind.value, "N": case.dim, "ell": case.ell,
                        "m": m, "n": n},
                predicted=0.0,
                measured=residual,
                residual=residual,
                tolerance=tol,
                passed=residual <= tol,
            ))
    if case.kind.hydrogen_like:
        # the plain (dx) product must break adjointness; this is the reason
        # the dx/x product exists
        floor = tolerances["adjoint_wrong_weight"]
        worst = max(verify_adjointness(spec, m, n, weight=WeightKind.PLAIN, rule=rule)
                    for m, n in ((1, 0), (2, 1)))
        results.append(CaseResult(
            id=f"{spec.case_id()}/adjoint/plain-weight",
            check="adjoint",
            inputs={"kind": case.kind.value, "N": case.dim, "ell": case.ell,
                    "weight": "dx"},
            predicted=f"> {floor}",
            measured=worst,
            residual=worst,
            tolerance=floor,
            passed=worst > floor,
        ))
    return results


def _run_spectrum(case: SuiteCase, spec: SystemSpec, tolerances: dict,
                  points: int, levels: int) -> list:
    xmax = SPECTRUM_XMAX[case.kind.oscillator_like]
    tol = tolerances["spectrum"]
    report = fd_spectrum(spec, (xmax, points), levels)
    results = []
    for j in range(levels):
        err = report.relative_errors[j]
        results.append(CaseResult(
            id=f"{spec.case_id()}/spectrum/level{j}",
            check="spectrum",
            inputs={"kind": case.kind.value, "N": case.dim, "ell": case.ell,
                    "n": j, "xmax": xmax, "points": points},
            predicted=report.predicted[j],
            measured=report.eigenvalues[j],
            residual=err,
            tolerance=tol,
            passed=err <= tol,
        ))
    return results


_CHECK_RUNNERS = {
    "algebra": lambda case, spec, tolerances, rule, config:
        _run_algebra(case, spec),
    "casimir": lambda case, spec, tolerances, rule, config:
        _run_casimir(case, spec, tolerances, rule),
    "factorization": lambda case, spec, tolerances, rule, config:
        _run_factorization(case, spec),
    "ladder": lambda case, spec, tolerances, rule, config:
        _run_ladder(case, spec, tolerances, rule),
    "adjoint": lambda case, spec, tolerances, rule, config:
        _run_adjoint(case, spec, tolerances, rule),
    "spectrum": lambda case, spec, tolerances, rule, config:
        _run_spectrum(case, spec, tolerances, config.spectrum_points,
                      config.spectrum_levels),
}


def run_suite(config: SuiteConfig) -> Report:
    """Execute every requested check of every case; failures are collected,
    never raised.  Results come back in deterministic case order."""
    problems = []
    for case in config.cases:
        try:
            case.spec()
        except DomainError as exc:
            problems.append(f"case {case.kind.value} N={case.dim} l={case.ell}: {exc}")
        for check in case.checks:
            if check not in ALL_CHECKS:
                problems.append(f"unknown check {check!r}")
    if problems:
        raise ConfigError(problems)

    rule = default_rule()
    ordered = sorted(config.cases,
                     key=lambda c: (c.kind.value, c.dim, c.ell, c.b, c.nmax))
    results = []
    for case in ordered:
        spec = case.spec()
        for check in ALL_CHECKS:
            if check in case.checks:
                results.extend(
                    _CHECK_RUNNERS[check](case, spec, config.tolerances, rule, config))
    return Report(version=__version__, config=config.echo(), cases=tuple(results))


# -- rendering --------------------------------------------------------------------


def _case_dict(result: CaseResult) -> dict:
    return {
        "id": result.id,
        "check": result.check,
        "inputs": result.inputs,
        "predicted": result.predicted,
        "measured": result.measured,
        "residual": result.residual,
        "tolerance": result.tolerance,
        "pass": result.passed,
    }


def render_report(report: Report, format: str = "json") -> bytes:
    """Serialize a report; identical reports give identical bytes."""
    if format == "json":
        payload = {
            "version": report.version,
            "config": report.config,
            "cases": [_case_dict(c) for c in report.cases],
            "summary": {"passed": report.passed, "failed": report.failed},
        }
        return (json.dumps(payload, indent=2) + "\n").encode()
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["id", "check", "kind", "N", "ell", "n", "predicted",
                         "measured", "residual", "tolerance", "pass"])
        for result in report.cases:
            writer.writerow([
                result.id,
                result.check,
                result.inputs.get("kind", ""),
                result.inputs.get("N", ""),
                result.inputs.get("ell", ""),
                result.inputs.get("n", ""),
                result.predicted,
                result.measured,
                result.residual,
                result.tolerance,
                str(result.passed).lower(),
            ])
        return buffer.getvalue().encode()
    if format == "markdown":
        return _render_markdown(report)
    raise ValueError(f"unknown report format {format!r}")


def _render_markdown(report: Report) -> bytes:
    lines = [
        "# su(1,1) ladder verification report",
        "",
        f"- version: {report.version}",
        f"- cases: {len(report.cases)}",
        f"- passed: {report.passed}",
        f"- failed: {report.failed}",
        "",
    ]
    by_check = {}
    for result in report.cases:
        by_check.setdefault(result.check, []).append(result)
    for check in ALL_CHECKS:
        rows = by_check.get(check)
        if not rows:
            continue
        lines.append(f"## {check}")
        lines.append("")
        lines.append("| id | predicted | measured | residual | tolerance | pass |")
        lines.append("| --- | --- | --- | --- | --- | --- |")
        for result in rows:
            lines.append(
                f"| {result.id} | {result.predicted} | {result.measured} "
                f"| {result.residual} | {result.tolerance} "
                f"| {'yes' if result.passed else 'NO'} |")
        lines.append("")
    status = "PASS" if report.ok else "FAIL"
    lines.append(f"**{status}** ({report.passed} passed, {report.failed} failed)")
    lines.append("")
    return "\n".join(lines).encode()
