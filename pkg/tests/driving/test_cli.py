import json
import math

import pytest

from driving.cli.adapter import EXIT_OK, EXIT_USAGE, SweepCommandLineAdapter
from driving.cli.mapper import SweepCliMapper


@pytest.fixture
def cli(app_settings) -> SweepCommandLineAdapter:
    return SweepCommandLineAdapter(app_settings)


def test_free_particle_single_point(cli, tmp_path):
    out = tmp_path / "gamma.csv"
    code = cli.run(["free-particle", "--z", "1", "--r", "1", "--theta", "0", "--out", str(out)])
    assert code == EXIT_OK
    header, row = out.read_text(encoding="utf-8").splitlines()
    assert header == "z,R,theta,k,gamma,violation"
    assert float(row.split(",")[4]) == pytest.approx(math.sqrt(6.0), rel=1e-11)


def test_free_particle_to_stdout(cli, capsys):
    assert cli.run(["free-particle", "--z", "1", "--r", "1", "--theta", "0"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[1].startswith("1,1,0,0,2.449489742")


def test_empty_range_is_a_usage_error(cli, tmp_path, capsys):
    out = tmp_path / "empty.csv"
    code = cli.run(
        ["free-particle", "--z-min", "1", "--z-max", "0.5", "--z-steps", "3", "--r", "1", "--out", str(out)]
    )
    assert code == EXIT_USAGE
    assert not out.exists()
    assert "error:" in capsys.readouterr().err


def test_value_and_range_cannot_be_combined(cli):
    assert cli.run(["free-particle", "--z", "0.5", "--z-min", "0.1", "--r", "1"]) == EXIT_USAGE


def test_config_file_is_overlaid_by_flags(cli, tmp_path):
    config = tmp_path / "sweep.json"
    config.write_text(
        json.dumps({"scenario": "displacement", "z": {"min": 0.2, "max": 0.8, "steps": 4}, "theta": 0.0}),
        encoding="utf-8",
    )
    out = tmp_path / "displacement.csv"
    code = cli.run(["displacement", "--config", str(config), "--z-steps", "2", "--out", str(out)])
    assert code == EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "z,theta,k,bound,actual,violation"
    assert [line.split(",")[0] for line in lines[1:]] == ["0.2", "0.8"]


def test_config_file_for_another_scenario_is_rejected(cli, tmp_path):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({"scenario": "ghz", "n": 2, "p": 0.5}), encoding="utf-8")
    assert cli.run(["free-particle", "--config", str(config), "--z", "1", "--r", "1"]) == EXIT_USAGE


def test_missing_config_file_is_a_usage_error(cli, tmp_path):
    assert cli.run(["ghz", "--config", str(tmp_path / "absent.json")]) == EXIT_USAGE


def test_ghz_closed_form_only(cli, tmp_path):
    out = tmp_path / "ghz.csv"
    code = cli.run(["ghz", "--n", "30", "--p", "0.5", "--closed-form-only", "--out", str(out)])
    assert code == EXIT_OK
    row = out.read_text(encoding="utf-8").splitlines()[1].split(",")
    assert row[0] == "30"
    assert row[6] == "nan" and row[8] == "nan"


def test_ghz_dense_guard_is_a_usage_error(cli, capsys):
    assert cli.run(["ghz", "--n", "20", "--p", "0.5"]) == EXIT_USAGE
    assert "--closed-form-only" in capsys.readouterr().err


def test_verify_subset(cli, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = cli.run(
        ["verify", "--check", "gamma_special_cases", "--check", "critical_visibility_residual", "--out", str(out)]
    )
    assert code == EXIT_OK
    records = json.loads(out.read_text(encoding="utf-8"))
    assert [record["check_id"] for record in records] == ["gamma_special_cases", "critical_visibility_residual"]
    assert all(record["passed"] for record in records)
    assert "2/2 checks passed" in capsys.readouterr().err


def test_verify_unknown_check(cli):
    assert cli.run(["verify", "--check", "nope"]) == EXIT_USAGE


def test_free_particle_output_is_byte_identical_across_runs(cli, tmp_path):
    grid = ["--z-min", "0.05", "--z-max", "1", "--z-steps", "7", "--r-min", "0.1", "--r-max", "2", "--r-steps", "5"]
    outputs = []
    for name in ("first.csv", "second.csv"):
        out = tmp_path / name
        assert cli.run(["free-particle", *grid, "--out", str(out)]) == EXIT_OK
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    assert len(outputs[0].splitlines()) == 1 + 7 * 5


def test_seeded_verify_report_is_byte_identical_across_runs(cli, tmp_path):
    checks = ["--check", "lhs_soundness_mt", "--check", "monte_carlo_agreement"]
    outputs, codes = [], []
    for name in ("first.json", "second.json"):
        out = tmp_path / name
        codes.append(cli.run(["verify", *checks, "--seed", "11", "--out", str(out)]))
        outputs.append(out.read_bytes())
    assert codes[0] == codes[1]
    assert outputs[0] == outputs[1]


def test_mapper_turns_numbers_into_single_ranges(cli):
    args = cli.parser.parse_args(["ghz", "--n-min", "1", "--n-max", "3", "--n-steps", "3", "--mu", "2"])
    mapper = SweepCliMapper()
    config = mapper.request_to_entity(mapper.args_to_request(args), {"p": 0.25})
    assert config.n.values() == [1.0, 2.0, 3.0]
    assert config.p.values() == [0.25]
    assert config.units.mu == 2.0
    assert config.output == "-"


def test_unknown_command_exits_through_argparse(cli):
    with pytest.raises(SystemExit) as excinfo:
        cli.run(["teleport"])
    assert excinfo.value.code == 2
