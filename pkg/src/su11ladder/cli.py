"""Command-line interface.

Exit codes: 0 when every executed check passes, 1 when any check fails,
2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .opalg import commutator, format_coefficient, format_operator
from .opexpr import OperatorExprError, parse_operator_expression
from .report import (
    ConfigError,
    build_config,
    parse_config_file,
    render_report,
    run_suite,
)
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
from .numeric_verify import fd_spectrum, verify_ladder


def _make_spec(args) -> SystemSpec:
    kind = SystemKind.parse(args.system)
    a = None if args.A is None else Fraction(args.A)
    b = Fraction(0) if getattr(args, "B", None) is None else Fraction(args.B)
    c = Fraction(0) if getattr(args, "C", None) is None else Fraction(args.C)
    if kind is SystemKind.PSEUDO_HARMONIC:
        return SystemSpec.pseudo_harmonic(args.dim, args.l,
                                          A=a if a is not None else Fraction(1, 2),
                                          B=b, C=c)
    if kind is SystemKind.MIE:
        return SystemSpec.mie(args.dim, args.l, A=a if a is not None else Fraction(-1),
                              B=b, C=c)
    if a is not None or b or c:
        raise DomainError(f"{kind.value} takes no potential constants")
    return SystemSpec(kind, args.dim, args.l)


def _cmd_algebra_verify(args) -> int:
    kinds = [SystemKind.parse(args.system)] if args.system else list(SystemKind)
    failed = 0
    for kind in kinds:
        variables = ["x"]
        if kind in (SystemKind.OSCILLATOR, SystemKind.HYDROGEN):
            variables.append("r")
        for variable in variables:
            spec = _default_spec(kind)
            triple = build_generators(spec, variable)
            for label, residual in triple.commutator_residuals().items():
                ok = residual.is_zero
                failed += not ok
                state = "ok" if ok else "FAIL"
                print(f"{kind.value:16s} {variable}  {label:14s} {state}")
                if not ok:
                    print(f"    residual: {format_operator(residual)}")
            plus, minus = casimir(spec, 1), casimir(spec, -1)
            if variable == "x":
                expected = expected_casimir_constant(spec)
                same = (plus - minus).is_zero
                const = plus.constant_multiple_of_identity()
                good = same and const == expected
                failed += not good
                print(f"{kind.value:16s} {variable}  casimir        "
                      f"{'ok' if good else 'FAIL'} "
                      f"[{format_coefficient(expected)}]")
    print("algebra:", "all identities hold" if failed == 0 else f"{failed} failures")
    return 0 if failed == 0 else 1


def _default_spec(kind: SystemKind) -> SystemSpec:
    if kind is SystemKind.PSEUDO_HARMONIC:
        return SystemSpec.pseudo_harmonic(3, 0)
    if kind is SystemKind.MIE:
        return SystemSpec.mie(3, 0)
    return SystemSpec(kind, 3, 0)


def _cmd_algebra_commutator(args) -> int:
    a = parse_operator_expression(args.expr_a)
    b = parse_operator_expression(args.expr_b)
    print(format_operator(commutator(a, b)))
    return 0


def _cmd_factorize(args) -> int:
    spec = _default_spec(SystemKind.parse(args.system))
    failed = 0
    for sol in factorize_system(spec):
        print(f"{sol.branch} branch (ansatz power {sol.ansatz_xpow}):")
        for name in ("a", "b", "c", "f", "g"):
            print(f"  {name} = {format_coefficient(getattr(sol, name))}")
    for branch in ("raise", "lower"):
        residual = verify_factorization_identity(spec, branch)
        ok = residual.is_zero
        failed += not ok
        print(f"identity ({branch}): {'exact' if ok else 'FAIL: ' + format_operator(residual)}")
    return 0 if failed == 0 else 1


def _cmd_ladder_verify(args) -> int:
    spec = _make_spec(args)
    failed = 0
    print(f"{'n':>3s} {'dir':>4s} {'predicted':>18s} {'measured':>18s} "
          f"{'residual':>12s} pass")
    for n in range(args.nmax + 1):
        for direction, arrow in ((1, "+"), (-1, "-")):
            tol = 1e-10 if (n == 0 and direction == -1) else args.tol
            rep = verify_ladder(spec, n, direction, tol=tol)
            failed += not rep.passed
            print(f"{n:>3d} {arrow:>4s} {rep.predicted:>18.12f} "
                  f"{rep.measured:>18.12f} {rep.residual:>12.3e} "
                  f"{'ok' if rep.passed else 'FAIL'}")
    print("ladder:", "all levels verified" if failed == 0 else f"{failed} failures")
    return 0 if failed == 0 else 1


def _cmd_spectrum(args) -> int:
    spec = _make_spec(args)
    rep = fd_spectrum(spec, (args.xmax, args.points), args.levels)
    failed = 0
    print(f"{'level':>5s} {'predicted':>16s} {'computed':>16s} {'rel error':>12s}")
    for j in range(args.levels):
        err = rep.relative_errors[j]
        ok = err <= args.tol
        failed += not ok
        print(f"{j:>5d} {rep.predicted[j]:>16.9f} {rep.eigenvalues[j]:>16.9f} "
              f"{err:>12.3e} {'ok' if ok else 'FAIL'}")
    return 0 if failed == 0 else 1


def _cmd_suite_run(args) -> int:
    values = parse_config_file(args.config) if args.config else {}
    flag_map = {
        "systems": args.systems,
        "dims": args.dims,
        "ells": args.ells,
        "nmax": args.nmax,
        "b_values": args.b_values,
        "checks": args.checks,
        "format": args.format,
        "spectrum_points": args.spectrum_points,
        "spectrum_levels": args.spectrum_levels,
        "tol_ladder": args.tol_ladder,
        "tol_ladder_ground": args.tol_ladder_ground,
        "tol_adjoint": args.tol_adjoint,
        "tol_casimir": args.tol_casimir,
        "tol_spectrum": args.tol_spectrum,
    }
    for key, value in flag_map.items():
        if value is not None:
            values[key] = value
    config = build_config(values)
    report = run_suite(config)
    payload = render_report(report, config.format)
    if args.out:
        with open(args.out, "wb") as handle:
            handle.write(payload)
        print(f"wrote {len(payload)} bytes to {args.out} "
              f"({report.passed} passed, {report.failed} failed)")
    else:
        sys.stdout.buffer.write(payload)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="su11ladder",
        description="Verify the su(1,1) ladder-operator algebra of radial systems.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    algebra = sub.add_parser("algebra", help="symbolic operator algebra")
    algebra_sub = algebra.add_subparsers(dest="subcommand", required=True)
    verify = algebra_sub.add_parser("verify", help="check the commutation relations")
    verify.add_argument("--system", help="restrict to one system kind")
    verify.set_defaults(handler=_cmd_algebra_verify)
    comm = algebra_sub.add_parser("commutator", help="commutator of two expressions")
    comm.add_argument("expr_a")
    comm.add_argument("expr_b")
    comm.set_defaults(handler=_cmd_algebra_commutator)

    factorize = sub.add_parser("factorize", help="solve the first-order ansatz")
    factorize.add_argument("--system", required=True)
    factorize.set_defaults(handler=_cmd_factorize)

    ladder = sub.add_parser("ladder", help="numeric ladder verification")
    ladder_sub = ladder.add_subparsers(dest="subcommand", required=True)
    lverify = ladder_sub.add_parser("verify", help="measure ladder coefficients")
    lverify.add_argument("--system", required=True)
    lverify.add_argument("--dim", type=int, required=True)
    lverify.add_argument("--l", type=int, required=True)
    lverify.add_argument("--nmax", type=int, default=8)
    lverify.add_argument("--A", help="r^2 (pseudo-harmonic) or 1/r (Mie) strength")
    lverify.add_argument("--B", help="inverse-square strength")
    lverify.add_argument("--C", help="constant shift")
    lverify.add_argument("--tol", type=float, default=1e-8)
    lverify.set_defaults(handler=_cmd_ladder_verify)

    spectrum = sub.add_parser("spectrum", help="finite-difference spectral oracle")
    spectrum.add_argument("--system", required=True)
    spectrum.add_argument("--dim", type=int, required=True)
    spectrum.add_argument("--l", type=int, required=True)
    spectrum.add_argument("--xmax", type=float, required=True)
    spectrum.add_argument("--points", type=int, required=True)
    spectrum.add_argument("--levels", type=int, default=5)
    spectrum.add_argument("--A", help="r^2 (pseudo-harmonic) or 1/r (Mie) strength")
    spectrum.add_argument("--B", help="inverse-square strength")
    spectrum.add_argument("--C", help="constant shift")
    spectrum.add_argument("--tol", type=float, default=1e-3)
    spectrum.set_defaults(handler=_cmd_spectrum)

    suite = sub.add_parser("suite", help="batch verification campaigns")
    suite_sub = suite.add_subparsers(dest="subcommand", required=True)
    run = suite_sub.add_parser("run", help="run a suite and write the report")
    run.add_argument("--config", help="key = value configuration file")
    run.add_argument("--format", choices=["json", "csv", "markdown"])
    run.add_argument("--out", help="output path (stdout when omitted)")
    run.add_argument("--systems")
    run.add_argument("--dims")
    run.add_argument("--ells")
    run.add_argument("--nmax")
    run.add_argument("--b-values", dest="b_values")
    run.add_argument("--checks")
    run.add_argument("--spectrum-points", dest="spectrum_points")
    run.add_argument("--spectrum-levels", dest="spectrum_levels")
    run.add_argument("--tol-ladder", dest="tol_ladder")
    run.add_argument("--tol-ladder-ground", dest="tol_ladder_ground")
    run.add_argument("--tol-adjoint", dest="tol_adjoint")
    run.add_argument("--tol-casimir", dest="tol_casimir")
    run.add_argument("--tol-spectrum", dest="tol_spectrum")
    run.set_defaults(handler=_cmd_suite_run)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ConfigError, DomainError, OperatorExprError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
