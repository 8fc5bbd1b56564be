"""
Tests for the command-line front end.

Golden cases live in tests/data/golden: the first line of NAME.in holds the
arguments ({data} stands for tests/data), NAME.out the expected output.
"""

import json
import shlex
import shutil

import pytest
from click.testing import CliRunner

from rotor_arrival.cli import cli
from rotor_arrival.core.exceptions import (
    EXIT_BUDGET,
    EXIT_INVALID_INSTANCE,
    EXIT_OK,
    EXIT_SCHEMA,
)
from rotor_arrival.services.instance_io_service import parse_instance
from tests.conftest import DATA_DIR

GOLDEN_PATHS = sorted((DATA_DIR / "golden").glob("*.in"))


@pytest.fixture(params=GOLDEN_PATHS, ids=lambda p: p.stem)
def golden(request):
    inp = request.param
    outp = inp.with_suffix(".out")
    with inp.open() as inf, outp.open() as outf:
        args = next(inf).rstrip().replace("{data}", str(DATA_DIR))
        return shlex.split(args), inf.read(), outf.read()


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.mark.integration
def test_golden(golden, runner):
    args, input, output = golden

    result = runner.invoke(cli, args, input, catch_exceptions=False)

    assert result.exit_code == EXIT_OK
    assert result.output == output


def invoke(runner: CliRunner, *args: str):
    return runner.invoke(cli, [str(a) for a in args])


@pytest.mark.integration
class TestExitCodes:
    """Errors map to exit codes 2, 3 and 4."""

    @pytest.mark.parametrize(
        "name", ["instance_malformed.json", "instance_truncated.json", "instance_triangle.json"]
    )
    def test_schema_errors(self, runner, name):
        result = invoke(runner, "solve", "--instance", DATA_DIR / name)

        assert result.exit_code == EXIT_SCHEMA
        assert "error:" in result.output

    def test_non_coprime_instance(self, runner):
        result = invoke(runner, "solve", "--instance", DATA_DIR / "instance_non_coprime.json")

        assert result.exit_code == EXIT_INVALID_INSTANCE

    def test_closed_form_needs_unit_instance(self, runner):
        result = invoke(runner, "solve", "--instance", DATA_DIR / "instance_233.json", "--closed-form-11")

        assert result.exit_code == EXIT_INVALID_INSTANCE

    def test_invalid_engel_parameters(self, runner):
        assert invoke(runner, "decompose", "--n", 3, "--x", 3, "--y", 3, 1).exit_code == EXIT_INVALID_INSTANCE

    def test_value_not_an_integer(self, runner):
        assert invoke(runner, "member", "--n", 3, "--x", 2, "--y", 3, "1e3").exit_code == EXIT_SCHEMA

    def test_enumeration_limit(self, runner):
        result = invoke(runner, "classes", "--n", 3, "--x", 2, "--y", 3, "--limit", 64)

        assert result.exit_code == EXIT_BUDGET

    def test_oracle_step_budget(self, runner):
        result = invoke(runner, "oracle", "--instance", DATA_DIR / "instance_233.json", "--max-steps", 3)

        assert result.exit_code == EXIT_BUDGET


@pytest.mark.integration
class TestOracleAndVerify:
    """The oracle's certificate passes verify."""

    def test_oracle_matches_solver(self, runner):
        result = invoke(runner, "oracle", "--instance", DATA_DIR / "instance_233.json")
        report = json.loads(result.output)

        assert result.exit_code == EXIT_OK
        assert (report["m_right"], report["m_left"], report["final_g"]) == ("13", "4", "12")
        assert report["sink_counts"] == {"0": "4", "4": "13"}

    def test_oracle_on_non_coprime_path(self, runner):
        result = invoke(runner, "oracle", "--instance", DATA_DIR / "instance_non_coprime.json")
        report = json.loads(result.output)

        assert result.exit_code == EXIT_OK
        assert sum(int(c) for c in report["sink_counts"].values()) == 2
        assert "m_right" not in report

    def test_certificate_round_trip(self, runner, tmp_path):
        instance = DATA_DIR / "instance_233.json"
        certificate = tmp_path / "certificate.json"
        certificate.write_text(invoke(runner, "oracle", "--instance", instance).output)

        result = invoke(runner, "verify", "--instance", instance, "--certificate", certificate)

        assert result.output == "yes\n"

    def test_tampered_certificate(self, runner, tmp_path):
        instance = DATA_DIR / "instance_233.json"
        report = json.loads(invoke(runner, "oracle", "--instance", instance).output)
        report["sink_counts"]["4"] = "12"
        certificate = tmp_path / "certificate.json"
        certificate.write_text(json.dumps(report))

        result = invoke(runner, "verify", "--instance", instance, "--certificate", certificate)

        assert result.exit_code == EXIT_OK
        assert result.output == "no\n"

    def test_general_form_certificate(self, runner, tmp_path):
        instance = DATA_DIR / "instance_triangle.json"
        certificate = tmp_path / "certificate.json"
        certificate.write_text(invoke(runner, "oracle", "--instance", instance).output)

        assert invoke(runner, "verify", "--instance", instance, "--certificate", certificate).output == "yes\n"


@pytest.mark.integration
class TestGenerateCompareBatch:
    """Test generate, compare and batch."""

    def test_generate_is_seeded(self, runner):
        args = ("generate", "--n", 4, "--x", 2, "--y", 5, "--seed", 17)

        first, second = invoke(runner, *args), invoke(runner, *args)

        assert first.exit_code == EXIT_OK
        assert first.output == second.output
        file = parse_instance(json.loads(first.output))
        assert (file.n, file.x, file.y) == (4, 2, 5)
        assert all(-20 <= v <= 20 for v in file.sigma)

    def test_generated_instance_solves(self, runner, tmp_path):
        target = tmp_path / "generated.json"
        target.write_text(invoke(runner, "generate", "--seed", 3).output)

        solved = json.loads(invoke(runner, "solve", "--instance", target).output)
        simulated = json.loads(invoke(runner, "oracle", "--instance", target).output)

        assert solved["m_right"] == simulated["m_right"]
        assert solved["final_g"] == simulated["final_g"]

    @pytest.mark.parametrize("partial", [("--n", 4), ("--x", 2, "--y", 5)])
    def test_generate_needs_all_parameters(self, runner, partial):
        result = invoke(runner, "generate", "--seed", 17, *partial)

        assert result.exit_code == EXIT_SCHEMA
        assert "--n, --x and --y must be given together" in result.output

    @pytest.mark.parametrize("option", [("--max-y", 1), ("--max-n", 0), ("--count", -1)])
    def test_compare_rejects_empty_ranges(self, runner, option):
        result = invoke(runner, "compare", "--seed", 9, *option)

        assert result.exit_code == EXIT_SCHEMA
        assert "Invalid value" in result.output

    def test_compare_agrees(self, runner):
        result = invoke(runner, "compare", "--seed", 9, "--count", 25)
        report = json.loads(result.output)

        assert result.exit_code == EXIT_OK
        assert report == {"seed": 9, "count": 25, "agreed": 25, "mismatches": []}

    def test_batch_with_workers_matches_golden(self, runner):
        result = invoke(runner, "batch", DATA_DIR / "batch", "--jobs", 2)

        assert result.exit_code == EXIT_OK
        assert result.output == (DATA_DIR / "golden" / "batch_solve.out").read_text()

    def test_batch_oracle(self, runner):
        result = invoke(runner, "batch", DATA_DIR / "batch", "--oracle")
        lines = [json.loads(line) for line in result.output.splitlines()]

        assert [line["file"] for line in lines] == ["a_233.json", "b_113.json", "c_233_zero.json"]
        assert [line["m_right"] for line in lines] == ["13", "14", "0"]

    def test_batch_exit_code_of_first_failure(self, runner, tmp_path):
        shutil.copy(DATA_DIR / "instance_non_coprime.json", tmp_path / "a_params.json")
        shutil.copy(DATA_DIR / "instance_malformed.json", tmp_path / "b_schema.json")
        shutil.copy(DATA_DIR / "instance_233.json", tmp_path / "c_ok.json")

        result = invoke(runner, "batch", tmp_path)
        lines = [json.loads(line) for line in result.output.splitlines() if line.startswith("{")]

        assert result.exit_code == EXIT_INVALID_INSTANCE
        assert [line.get("exit_code") for line in lines] == [EXIT_INVALID_INSTANCE, EXIT_SCHEMA, None]


@pytest.mark.unit
class TestGroupOptions:
    """Test --version and the logging options."""

    def test_version(self, runner):
        result = invoke(runner, "--version")

        assert result.output == "rotor-arrival, version 1.0.0\n"

    def test_json_logs(self, runner):
        result = invoke(
            runner, "--log-level", "info", "--log-format", "json", "decompose", "--n", 3, "--x", 2, "--y", 3, 66
        )
        events = [json.loads(line) for line in result.output.splitlines() if line.startswith("{")]

        assert "(0,1,0,2,0)" in result.output.splitlines()
        assert {"command_started", "command_completed"} <= {e["event"] for e in events}
        assert all(e["command"] == "decompose" for e in events)

    def test_unknown_command(self, runner):
        assert invoke(runner, "frobnicate").exit_code == EXIT_SCHEMA
