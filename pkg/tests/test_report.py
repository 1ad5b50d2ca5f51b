"""Tests for suite configuration, the runner, rendering and the CLI."""

import json
from fractions import Fraction

import pytest

from su11ladder.cli import main
from su11ladder.report import (
    ConfigError,
    SuiteCase,
    SuiteConfig,
    build_config,
    default_config,
    parse_config_file,
    render_report,
    run_suite,
)
from su11ladder.systems import SystemKind

SMALL = {"systems": "oscillator,hydrogen", "dims": "3", "ells": "0", "nmax": "2"}


@pytest.fixture(scope="module")
def small_report():
    return run_suite(build_config(dict(SMALL)))


class TestConfig:
    def test_default_grid_shape(self):
        config = default_config()
        # 4 kinds x 4 dims x 3 ells, doubled for the two B values of the
        # pseudo-harmonic and Mie systems
        assert len(config.cases) == (2 + 2 * 2) * 4 * 3

    def test_spectrum_runs_on_canonical_cases_by_default(self):
        config = default_config()
        for case in config.cases:
            has = "spectrum" in case.checks
            assert has == ((case.dim, case.ell, case.b) == (3, 0, Fraction(0)))

    def test_explicit_checks_apply_everywhere(self):
        config = build_config({"checks": "ladder,spectrum", "dims": "2,3"})
        assert all(case.checks == ("ladder", "spectrum") for case in config.cases)

    def test_all_violations_collected(self):
        with pytest.raises(ConfigError) as err:
            build_config({"systems": "oscillator,marsian", "checks": "ladder,vibes",
                          "format": "yaml"})
        text = str(err.value)
        assert "marsian" in text and "vibes" in text and "yaml" in text

    def test_tolerance_override(self):
        config = build_config({"tol_ladder": "1e-6"})
        assert config.tolerances["ladder"] == 1e-6
        assert config.tolerances["adjoint"] == 1e-10

    def test_config_file_parsing(self, tmp_path):
        path = tmp_path / "suite.cfg"
        path.write_text(
            "# comment line\n"
            "systems = oscillator\n"
            "dims = 3   # trailing comment\n"
            "nmax = 1\n")
        values = parse_config_file(str(path))
        assert values == {"systems": "oscillator", "dims": "3", "nmax": "1"}

    def test_config_file_rejects_unknown_keys(self, tmp_path):
        path = tmp_path / "suite.cfg"
        path.write_text("wibble = 3\nalso bad line\n")
        with pytest.raises(ConfigError) as err:
            parse_config_file(str(path))
        assert len(err.value.problems) == 2


class TestRunner:
    def test_small_suite_passes(self, small_report):
        assert small_report.failed == 0
        assert small_report.passed == len(small_report.cases) > 0

    def test_empty_case_list_is_a_passing_report(self):
        report = run_suite(SuiteConfig(cases=()))
        assert report.ok and len(report.cases) == 0

    def test_results_in_deterministic_case_order(self, small_report):
        ids = [c.id for c in small_report.cases]
        hyd = [i for i, case_id in enumerate(ids) if case_id.startswith("hydrogen")]
        osc = [i for i, case_id in enumerate(ids) if case_id.startswith("oscillator")]
        assert max(hyd) < min(osc)  # sorted by kind name

    def test_wrong_tolerance_fails_only_those_cases(self):
        config = build_config(dict(SMALL, checks="ladder,spectrum",
                                   tol_spectrum="1e-20"))
        report = run_suite(config)
        spectrum = [c for c in report.cases if c.check == "spectrum"]
        ladder = [c for c in report.cases if c.check == "ladder"]
        assert spectrum and all(not c.passed for c in spectrum)
        assert ladder and all(c.passed for c in ladder)
        assert not report.ok

    def test_unknown_check_rejected_before_execution(self):
        case = SuiteCase(kind=SystemKind.OSCILLATOR, dim=3, ell=0, nmax=0,
                         checks=("nonsense",))
        with pytest.raises(ConfigError):
            run_suite(SuiteConfig(cases=(case,)))


class TestRendering:
    def test_json_schema(self, small_report):
        payload = json.loads(render_report(small_report, "json"))
        assert set(payload) == {"version", "config", "cases", "summary"}
        assert payload["summary"] == {"passed": small_report.passed, "failed": 0}
        case = payload["cases"][0]
        assert set(case) == {"id", "check", "inputs", "predicted", "measured",
                             "residual", "tolerance", "pass"}

    def test_byte_determinism_across_runs(self):
        config = build_config(dict(SMALL))
        first = run_suite(config)
        second = run_suite(config)
        for fmt in ("json", "csv", "markdown"):
            assert render_report(first, fmt) == render_report(second, fmt)

    def test_csv_row_count(self, small_report):
        lines = render_report(small_report, "csv").decode().splitlines()
        assert lines[0] == ("id,check,kind,N,ell,n,predicted,measured,residual,"
                            "tolerance,pass")
        assert len(lines) == len(small_report.cases) + 1

    def test_csv_three_cases_two_checks(self):
        config = build_config({"systems": "oscillator", "dims": "2,3,5", "ells": "0",
                               "nmax": "0", "checks": "ladder,adjoint"})
        report = run_suite(config)
        lines = render_report(report, "csv").decode().splitlines()
        # per case: 2 ladder rows (up and down at n=0) and 1 adjoint row
        assert len(lines) == 1 + 3 * (2 + 1)

    def test_markdown_summary_line(self, small_report):
        text = render_report(small_report, "markdown").decode()
        assert text.rstrip().endswith(
            f"**PASS** ({small_report.passed} passed, 0 failed)")

    def test_unknown_format(self, small_report):
        with pytest.raises(ValueError):
            render_report(small_report, "xml")


class TestCli:
    def test_algebra_verify_exit_zero(self, capsys):
        assert main(["algebra", "verify"]) == 0
        assert "all identities hold" in capsys.readouterr().out

    def test_commutator_output(self, capsys):
        assert main(["algebra", "commutator", "Dp_osc", "Dm_osc"]) == 0
        out = capsys.readouterr().out.strip()
        assert out == "(1/8 - 1/2*k2)*x^-2 - 1/2*x^2 + 1/2*D^2"

    def test_factorize(self, capsys):
        assert main(["factorize", "--system", "oscillator"]) == 0
        out = capsys.readouterr().out
        assert "upper branch" in out and "identity (raise): exact" in out

    def test_ladder_verify(self, capsys):
        code = main(["ladder", "verify", "--system", "hydrogen", "--dim", "3",
                     "--l", "0", "--nmax", "1"])
        assert code == 0
        assert "all levels verified" in capsys.readouterr().out

    def test_ladder_verify_with_potential_constants(self, capsys):
        code = main(["ladder", "verify", "--system", "pseudo-harmonic", "--dim", "2",
                     "--l", "0", "--nmax", "1", "--B", "1"])
        assert code == 0

    def test_spectrum(self, capsys):
        code = main(["spectrum", "--system", "oscillator", "--dim", "3", "--l", "0",
                     "--xmax", "12", "--points", "2000", "--levels", "3"])
        assert code == 0

    def test_suite_run_writes_report(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(["suite", "run", "--systems", "oscillator", "--dims", "3",
                     "--ells", "0", "--nmax", "1", "--format", "json",
                     "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_bytes())
        assert payload["summary"]["failed"] == 0

    def test_suite_flags_override_config_file(self, tmp_path):
        cfg = tmp_path / "suite.cfg"
        cfg.write_text("systems = oscillator\ndims = 3\nells = 0\nnmax = 4\n")
        out = tmp_path / "r.json"
        code = main(["suite", "run", "--config", str(cfg), "--nmax", "1",
                     "--checks", "ladder", "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_bytes())
        ladder_rows = [c for c in payload["cases"] if c["check"] == "ladder"]
        assert len(ladder_rows) == 4  # nmax 1 from the flag, not 4 from the file

    def test_failing_suite_exits_one(self, tmp_path):
        out = tmp_path / "r.json"
        code = main(["suite", "run", "--systems", "hydrogen", "--dims", "3",
                     "--ells", "0", "--nmax", "1", "--checks", "ladder",
                     "--tol-ladder", "1e-20", "--out", str(out)])
        assert code == 1

    def test_usage_errors_exit_two(self, capsys):
        assert main(["ladder", "verify", "--system", "marsian", "--dim", "3",
                     "--l", "0"]) == 2
        assert main(["algebra", "commutator", "x*(", "D"]) == 2
        assert main(["suite", "run", "--config", "/nonexistent/path.cfg"]) == 2
        with pytest.raises(SystemExit) as err:
            main(["ladder", "verify", "--dim", "not-an-int"])
        assert err.value.code == 2

    def test_oscillator_rejects_potential_constants(self):
        assert main(["ladder", "verify", "--system", "oscillator", "--dim", "3",
                     "--l", "0", "--B", "1"]) == 2
