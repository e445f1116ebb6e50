"""Command-line interface: exit codes, output schemas, determinism.

Structure-level checks run the fast subcommands end to end; the heavy
verification suites are exercised through their cheapest members only
(the full statistical battery lives in the acceptance tests).
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np
import pytest

from stablefunc.cli import SCHEMA_VERSION, SEED_ENV_VAR, SUITES, run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def invoke_json(capsys, *argv):
    code, out, err = invoke(capsys, *argv)
    assert code == 0, f"expected success, got {code}: {err}"
    return json.loads(out)


class TestClassify:
    def test_near_boundary_rho_snaps_and_classifies(self, capsys):
        payload = invoke_json(
            capsys, "classify", "--alpha", "1.5", "--rho", "0.3333", "--q", "-1.6"
        )
        row = payload["rows"][0]
        assert row["regime"] == "SpectrallyPositive"
        assert row["finiteness"] == "infinite"
        assert row["finite"] is False
        assert payload["rho_requested"] == 0.3333
        assert row["rho"] == pytest.approx(1.0 - 1.0 / 1.5, abs=1e-12)

    def test_admissible_rho_reported_verbatim(self, capsys):
        payload = invoke_json(
            capsys, "classify", "--alpha", "2", "--rho", "0.5", "--q", "0"
        )
        assert "rho_requested" not in payload
        assert payload["rows"][0]["regime"] == "Brownian"
        assert payload["rows"][0]["finite"] is True

    def test_far_from_boundary_rho_rejected(self, capsys):
        code, out, err = invoke(
            capsys, "classify", "--alpha", "1.5", "--rho", "0.31", "--q", "0"
        )
        assert code == 2
        assert "rho" in err

    def test_rows_carry_full_parameter_tuple(self, capsys):
        payload = invoke_json(
            capsys, "classify", "--alpha", "1.5", "--rho", "0.6", "--q", "1"
        )
        row = payload["rows"][0]
        assert row["alpha"] == 1.5 and row["rho"] == 0.6 and row["q"] == 1.0


class TestMellin:
    def test_brownian_inverse_moment_is_two(self, capsys):
        payload = invoke_json(
            capsys, "mellin", "--alpha", "2", "--rho", "0.5", "--q", "0", "--s", "-1"
        )
        row = payload["rows"][0]
        assert row["value"] == pytest.approx(2.0, rel=1e-12)
        assert row["s"] == -1.0
        assert row["alpha"] == 2.0 and row["rho"] == 0.5 and row["q"] == 0.0

    def test_s_grid_produces_evenly_spaced_rows(self, capsys):
        payload = invoke_json(
            capsys,
            "mellin", "--alpha", "2", "--rho", "0.5", "--q", "0",
            "--s-grid", "-1", "0", "5",
        )
        s_values = [row["s"] for row in payload["rows"]]
        assert s_values == pytest.approx([-1.0, -0.75, -0.5, -0.25, 0.0])
        assert payload["rows"][-1]["value"] == pytest.approx(1.0, rel=1e-12)

    def test_missing_s_is_usage_error(self, capsys):
        code, out, err = invoke(capsys, "mellin", "--alpha", "2", "--rho", "0.5", "--q", "0")
        assert code == 2
        assert "--s" in err

    def test_s_and_grid_mutually_exclusive(self, capsys):
        code, out, err = invoke(
            capsys,
            "mellin", "--alpha", "2", "--rho", "0.5", "--q", "0",
            "--s", "0", "--s-grid", "-1", "0", "3",
        )
        assert code == 2
        assert "mutually exclusive" in err

    def test_out_of_strip_point_is_domain_error(self, capsys):
        code, out, err = invoke(
            capsys, "mellin", "--alpha", "2", "--rho", "0.5", "--q", "0", "--s", "5"
        )
        assert code == 2
        assert "Mellin transform defined" in err


class TestSampleAndDensity:
    def test_sample_rows_are_deterministic_for_seed(self, capsys):
        a = invoke_json(
            capsys, "sample", "--alpha", "1.5", "--rho", "0.6", "--q", "1",
            "--n", "4", "--seed", "5",
        )
        b = invoke_json(
            capsys, "sample", "--alpha", "1.5", "--rho", "0.6", "--q", "1",
            "--n", "4", "--seed", "5",
        )
        assert a == b
        c = invoke_json(
            capsys, "sample", "--alpha", "1.5", "--rho", "0.6", "--q", "1",
            "--n", "4", "--seed", "6",
        )
        assert [r["value"] for r in c["rows"]] != [r["value"] for r in a["rows"]]

    def test_sample_values_positive_and_indexed(self, capsys):
        payload = invoke_json(
            capsys, "sample", "--alpha", "2", "--rho", "0.5", "--q", "0",
            "--n", "6", "--seed", "1",
        )
        assert [r["index"] for r in payload["rows"]] == list(range(6))
        assert all(r["value"] > 0 for r in payload["rows"])
        assert payload["seed"] == 1 and payload["stream"] == 0

    def test_sample_rejects_nonpositive_count(self, capsys):
        code, out, err = invoke(
            capsys, "sample", "--alpha", "2", "--rho", "0.5", "--q", "0",
            "--n", "0", "--seed", "1",
        )
        assert code == 2
        assert "positive" in err

    def test_density_grid_rows(self, capsys):
        payload = invoke_json(
            capsys, "density", "--alpha", "2", "--rho", "0.5", "--q", "0",
            "--x-grid", "0.1", "1.0", "4",
        )
        assert len(payload["rows"]) == 4
        assert all(r["density"] > 0 for r in payload["rows"])
        xs = [r["x"] for r in payload["rows"]]
        assert xs == pytest.approx([0.1, 0.4, 0.7, 1.0])


class TestExtrema:
    def test_two_sided_laws(self, capsys):
        payload = invoke_json(capsys, "extrema", "--alpha", "1.5", "--rho", "0.6")
        by_side = {r["side"]: r for r in payload["rows"]}
        assert by_side["sup"]["law"]["node"] == "power"
        assert by_side["inf"]["law"]["node"] == "beta"
        assert by_side["inf"]["law"]["a"] == pytest.approx(0.4)
        assert by_side["inf"]["law"]["b"] == pytest.approx(0.6)

    def test_increasing_path_has_no_finite_sup(self, capsys):
        payload = invoke_json(capsys, "extrema", "--alpha", "0.5", "--rho", "1.0")
        by_side = {r["side"]: r for r in payload["rows"]}
        assert by_side["sup"]["law"] is None
        assert "infinite" in by_side["sup"]["note"]
        assert by_side["inf"]["law"] == {"node": "const", "value": 1.0}


class TestOracle:
    def test_killed_batch_rows(self, capsys):
        payload = invoke_json(
            capsys, "oracle", "--alpha", "1.5", "--rho", "0.6", "--q", "0",
            "--n", "4", "--dt", "1e-2", "--t-max", "50", "--seed", "3",
        )
        assert payload["mode"] == "killed"
        assert len(payload["rows"]) == 4
        row = payload["rows"][0]
        for key in ("alpha", "rho", "q", "run", "first_passage_time",
                    "functional_value", "stopped_sup", "stopped_inf", "censored"):
            assert key in row
        assert row["stopped_sup"] >= 1.0 >= row["stopped_inf"]

    def test_resolve_censored_clears_flags(self, capsys):
        payload = invoke_json(
            capsys, "oracle", "--alpha", "1.5", "--rho", "0.6", "--q", "0",
            "--n", "32", "--dt", "1e-2", "--t-max", "1", "--seed", "3",
            "--resolve-censored",
        )
        assert payload["resolved"] is True
        assert "stitch_rounds" in payload
        assert all(r["censored"] is False for r in payload["rows"])

    def test_subordinator_rows(self, capsys):
        payload = invoke_json(
            capsys, "oracle", "--subordinator", "--alpha", "0.5", "--rho", "1.0",
            "--q", "2", "--n", "3", "--dt", "1e-2", "--t-max", "1e6", "--seed", "3",
        )
        assert payload["mode"] == "subordinator"
        assert len(payload["rows"]) == 3
        assert all(r["value"] > 0 for r in payload["rows"])

    def test_subordinator_rejects_alpha_at_least_one(self, capsys):
        code, out, err = invoke(
            capsys, "oracle", "--subordinator", "--alpha", "1.5", "--rho", "0.5",
            "--q", "2", "--n", "2", "--seed", "1",
        )
        assert code == 2
        assert "alpha in (0, 1)" in err

    def test_unreachable_horizon_is_accuracy_failure(self, capsys):
        code, out, err = invoke(
            capsys, "oracle", "--subordinator", "--alpha", "0.5", "--rho", "1.0",
            "--q", "1", "--n", "3", "--dt", "1e-3", "--t-max", "10", "--seed", "1",
        )
        assert code == 1
        assert "censored" in err and "t_max" in err

    def test_infinite_functional_rejected(self, capsys):
        code, out, err = invoke(
            capsys, "oracle", "--alpha", "1.5", "--rho", "0.3333", "--q", "-1.6",
            "--n", "2", "--seed", "1",
        )
        assert code == 2
        assert "infinite" in err


class TestVerify:
    def test_prop1_passes_with_seed_7(self, capsys):
        payload = invoke_json(capsys, "verify", "prop1", "--seed", "7")
        assert payload["all_passed"] is True
        assert payload["suite"] == "prop1"
        assert len(payload["rows"]) >= 24  # catalog defaults + random draws
        assert all(r["passed"] for r in payload["rows"])

    def test_prop2_dual_routes_agree(self, capsys):
        payload = invoke_json(capsys, "verify", "prop2", "--seed", "7")
        assert payload["all_passed"] is True
        assert len(payload["rows"]) == 20
        assert all(r["statistic"] <= 1e-6 for r in payload["rows"])

    def test_theorem_pins_pass(self, capsys):
        payload = invoke_json(capsys, "verify", "theorem", "--seed", "7")
        assert payload["all_passed"] is True
        names = {r["name"] for r in payload["rows"]}
        assert "brownian_functional[q=0]" in names
        assert "drift_functional[q=3]" in names

    def test_explicit_suite_passes(self, capsys):
        payload = invoke_json(capsys, "verify", "explicit", "--seed", "7")
        assert payload["all_passed"] is True
        assert len(payload["rows"]) == 4

    def test_unknown_suite_is_usage_error(self, capsys):
        code, out, err = invoke(capsys, "verify", "nosuch")
        assert code == 2
        assert "invalid choice" in err
        for suite in SUITES:
            assert suite in err

    def test_exit_code_reflects_all_passed(self, capsys):
        # a passing suite exits 0; the exit-1 path is covered through the
        # report plumbing (all_passed False => 1) asserted on the payload
        code, out, err = invoke(capsys, "verify", "prop2", "--seed", "3")
        assert code == 0
        payload = json.loads(out)
        assert payload["all_passed"] is True


class TestOutputFormats:
    def test_json_has_schema_version(self, capsys):
        payload = invoke_json(
            capsys, "classify", "--alpha", "2", "--rho", "0.5", "--q", "0"
        )
        assert payload["schema_version"] == SCHEMA_VERSION

    def test_csv_has_schema_version_column(self, capsys):
        code, out, err = invoke(
            capsys, "classify", "--alpha", "2", "--rho", "0.5", "--q", "0",
            "--format", "csv",
        )
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0][0] == "schema_version"
        assert rows[1][0] == SCHEMA_VERSION
        assert rows[0][1:6] == ["alpha", "rho", "q", "regime", "finite"]
        assert rows[1][4] == "Brownian"
        assert rows[1][5] == "true"

    def test_csv_floats_round_trip(self, capsys):
        code, out, err = invoke(
            capsys, "mellin", "--alpha", "2", "--rho", "0.5", "--q", "0",
            "--s", "-0.3", "--format", "csv",
        )
        rows = list(csv.reader(io.StringIO(out)))
        header, data = rows[0], rows[1]
        value = float(data[header.index("value")])
        assert np.isfinite(value) and value > 0

    def test_output_file_receives_bytes(self, tmp_path, capsys):
        target = tmp_path / "out.json"
        code, out, err = invoke(
            capsys, "classify", "--alpha", "2", "--rho", "0.5", "--q", "0",
            "--output", str(target),
        )
        assert code == 0
        assert out == ""
        payload = json.loads(target.read_text())
        assert payload["rows"][0]["regime"] == "Brownian"

    def test_identical_argv_byte_identical_output(self, tmp_path, capsys):
        argv = [
            "sample", "--alpha", "1.5", "--rho", "0.6", "--q", "1",
            "--n", "32", "--seed", "9",
        ]
        first = tmp_path / "a.json"
        second = tmp_path / "b.json"
        assert run(argv + ["--output", str(first)]) == 0
        assert run(argv + ["--output", str(second)]) == 0
        capsys.readouterr()
        assert first.read_bytes() == second.read_bytes()

    def test_verify_csv_rows_parse(self, capsys):
        code, out, err = invoke(
            capsys, "verify", "prop2", "--seed", "7", "--format", "csv"
        )
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        header = rows[0]
        assert header == [
            "schema_version", "suite", "name", "statistic", "threshold",
            "passed", "sample_sizes", "metadata",
        ]
        assert len(rows) == 21
        meta = json.loads(rows[1][header.index("metadata")])
        assert set(meta) == {"a", "b", "c", "s"}


class TestSeedResolution:
    def test_env_var_supplies_default_seed(self, capsys, monkeypatch):
        monkeypatch.setenv(SEED_ENV_VAR, "9")
        with_env = invoke_json(
            capsys, "sample", "--alpha", "2", "--rho", "0.5", "--q", "0", "--n", "3"
        )
        monkeypatch.delenv(SEED_ENV_VAR)
        explicit = invoke_json(
            capsys, "sample", "--alpha", "2", "--rho", "0.5", "--q", "0",
            "--n", "3", "--seed", "9",
        )
        assert with_env == explicit

    def test_default_seed_is_zero(self, capsys, monkeypatch):
        monkeypatch.delenv(SEED_ENV_VAR, raising=False)
        bare = invoke_json(
            capsys, "sample", "--alpha", "2", "--rho", "0.5", "--q", "0", "--n", "3"
        )
        assert bare["seed"] == 0

    def test_invalid_env_seed_is_usage_error(self, capsys, monkeypatch):
        monkeypatch.setenv(SEED_ENV_VAR, "not-a-number")
        code, out, err = invoke(
            capsys, "sample", "--alpha", "2", "--rho", "0.5", "--q", "0", "--n", "3"
        )
        assert code == 2
        assert SEED_ENV_VAR in err

    def test_explicit_seed_overrides_env(self, capsys, monkeypatch):
        monkeypatch.setenv(SEED_ENV_VAR, "1")
        payload = invoke_json(
            capsys, "sample", "--alpha", "2", "--rho", "0.5", "--q", "0",
            "--n", "3", "--seed", "4",
        )
        assert payload["seed"] == 4


class TestUsageErrors:
    def test_unknown_command(self, capsys):
        code, out, err = invoke(capsys, "bogus")
        assert code == 2
        assert "invalid choice" in err

    def test_no_command(self, capsys):
        code, out, err = invoke(capsys)
        assert code == 2

    def test_help_exits_zero(self, capsys):
        code, out, err = invoke(capsys, "--help")
        assert code == 0
        assert SEED_ENV_VAR in out  # env var documented in help text

    def test_inadmissible_alpha(self, capsys):
        code, out, err = invoke(
            capsys, "classify", "--alpha", "2.5", "--rho", "0.5", "--q", "0"
        )
        assert code == 2
        assert "alpha" in err

    def test_message_names_violated_invariant(self, capsys):
        code, out, err = invoke(
            capsys, "classify", "--alpha", "1.5", "--rho", "0.9", "--q", "0"
        )
        assert code == 2
        assert "[1-1/alpha, 1/alpha]" in err
