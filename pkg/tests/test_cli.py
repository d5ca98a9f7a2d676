import json

import pytest

from kreinmod.cli import (
    EXIT_FAIL,
    EXIT_PASS,
    EXIT_RESOURCE,
    EXIT_USAGE,
    SEED_ENV_VAR,
    main,
)


class TestExitCodes:
    def test_passing_check(self, capsys):
        assert main(["check", "krein-algebra", "--samples", "10"]) == EXIT_PASS
        out = capsys.readouterr().out
        assert "verdict: pass" in out

    def test_unknown_scenario_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["check", "nonsense"])
        assert exc.value.code == EXIT_USAGE

    def test_unknown_demo_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["demo", "nonsense"])
        assert exc.value.code == EXIT_USAGE

    def test_bad_samples_is_usage_error(self, capsys):
        assert main(["check", "module", "--samples", "0"]) == EXIT_USAGE

    def test_budget_exceeded(self, capsys):
        code = main(
            ["check", "clifford", "--p", "6", "--q", "6", "--samples", "1"]
        )
        assert code == EXIT_RESOURCE

    def test_exit_codes_are_distinct(self):
        assert len({EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE}) == 4


class TestSeedPrecedence:
    def test_env_var_used_when_no_flag(self, monkeypatch, tmp_path, capsys):
        monkeypatch.setenv(SEED_ENV_VAR, "7")
        path = tmp_path / "report.json"
        main(
            [
                "check",
                "krein-algebra",
                "--samples",
                "5",
                "--quiet",
                "--report",
                str(path),
            ]
        )
        assert json.loads(path.read_text())["seed"] == 7

    def test_flag_beats_env_var(self, monkeypatch, tmp_path, capsys):
        monkeypatch.setenv(SEED_ENV_VAR, "7")
        path = tmp_path / "report.json"
        main(
            [
                "check",
                "krein-algebra",
                "--seed",
                "11",
                "--samples",
                "5",
                "--quiet",
                "--report",
                str(path),
            ]
        )
        assert json.loads(path.read_text())["seed"] == 11

    def test_default_seed_is_42(self, tmp_path, capsys):
        path = tmp_path / "report.json"
        main(
            [
                "check",
                "krein-algebra",
                "--samples",
                "5",
                "--quiet",
                "--report",
                str(path),
            ]
        )
        assert json.loads(path.read_text())["seed"] == 42

    def test_garbage_env_var_is_usage_error(self, monkeypatch, capsys):
        monkeypatch.setenv(SEED_ENV_VAR, "not-a-number")
        assert main(["check", "module", "--samples", "5"]) == EXIT_USAGE


class TestOutput:
    def test_quiet_suppresses_text(self, capsys):
        main(["check", "krein-algebra", "--samples", "5", "--quiet"])
        assert capsys.readouterr().out == ""

    def test_report_round_trips_as_json(self, tmp_path, capsys):
        path = tmp_path / "report.json"
        main(
            [
                "check",
                "module",
                "--samples",
                "5",
                "--quiet",
                "--report",
                str(path),
            ]
        )
        data = json.loads(path.read_text())
        assert data["verdict"] == "pass"
        assert data["schema_version"] == 1
        assert all("max_violation" in r for r in data["records"])

    def test_report_is_byte_deterministic(self, tmp_path, capsys):
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        args = ["check", "full-gallery", "--samples", "10", "--quiet"]
        main(args + ["--report", str(p1)])
        main(args + ["--report", str(p2)])
        assert p1.read_bytes() == p2.read_bytes()

    def test_demo_prints_narrative(self, capsys):
        assert main(["demo", "torus", "--samples", "10"]) == EXIT_PASS
        out = capsys.readouterr().out
        assert "16" in out and "verdict: pass" in out

    def test_list_names_everything(self, capsys):
        assert main(["list"]) == EXIT_PASS
        out = capsys.readouterr().out
        assert "full-gallery" in out and "minkowski" in out
