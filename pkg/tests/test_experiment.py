"""Scenario validation, sweep behavior, CSV determinism, and the CLI surface."""

import dataclasses

import pytest

import sdcsim.cli as cli
from sdcsim.experiment import (
    ConfigError,
    DEFAULT_SCENARIO,
    MetricsRow,
    emit_csv,
    evaluate_budget,
    sweep,
    validate,
)

EXPECTED_HEADER = (
    "p_budget,e1_max,e2,x_max_bits,per_gs_rate_bitcom,per_gs_rate_semcom,"
    "gs_power_bitcom,gs_power_semcom,delivered_fraction,final_backlog_bits"
)


def _write_variant(tmp_path, replacements: dict[str, str]):
    text = DEFAULT_SCENARIO.read_text()
    for old, new in replacements.items():
        assert old in text, old
        text = text.replace(old, new)
    path = tmp_path / "scenario.ini"
    path.write_text(text)
    return path


def test_default_scenario_is_valid():
    config = validate(DEFAULT_SCENARIO)
    assert config.n_gs == 30
    assert config.n_relays == 24
    assert config.n_slots == 10
    assert config.sdc_id == 24
    assert config.power.pump_fraction == 0.02


def test_missing_file_reports_error():
    with pytest.raises(ConfigError, match="cannot read"):
        validate("/nonexistent/scenario.ini")


def test_zero_gs_names_offending_key(tmp_path):
    path = _write_variant(tmp_path, {"n_gs = 30": "n_gs = 0"})
    with pytest.raises(ConfigError) as exc:
        validate(path)
    assert any("fleet.n_gs" in e for e in exc.value.errors)


def test_indivisible_slot_named(tmp_path):
    path = _write_variant(tmp_path, {"slot_s = 1": "slot_s = 3"})
    with pytest.raises(ConfigError) as exc:
        validate(path)
    assert any("time.slot_s" in e for e in exc.value.errors)


def test_missing_codec_file_named(tmp_path):
    path = _write_variant(
        tmp_path, {"semcom = builtin:semcom-cifar10-256": "semcom = /missing/profile.json"}
    )
    with pytest.raises(ConfigError) as exc:
        validate(path)
    assert any("codecs.semcom" in e for e in exc.value.errors)


def test_multiple_errors_collected(tmp_path):
    path = _write_variant(
        tmp_path, {"n_gs = 30": "n_gs = 0", "slot_s = 1": "slot_s = 3", "n_planes = 4": "n_planes = 5"}
    )
    with pytest.raises(ConfigError) as exc:
        validate(path)
    joined = "\n".join(exc.value.errors)
    assert "fleet.n_gs" in joined and "time.slot_s" in joined and "fleet.n_planes" in joined


def test_sweep_rows_ordered_and_consistent():
    config = validate(DEFAULT_SCENARIO)
    points = sweep(config)
    budgets = [p.row.p_budget for p in points]
    assert budgets == sorted(budgets)
    assert len(points) == 20
    for p in points:
        assert 0.0 <= p.row.delivered_fraction <= 1.0
        if p.row.x_max_bits > 0:
            assert p.row.per_gs_rate_bitcom / p.row.per_gs_rate_semcom == 96.0


def test_sweep_anchor_crossover():
    config = validate(DEFAULT_SCENARIO)
    point = evaluate_budget(config, 50e6)
    assert abs(point.row.per_gs_rate_bitcom - 100e9) / 100e9 < 0.005


def test_sweep_zero_budget_all_zero():
    config = validate(DEFAULT_SCENARIO)
    point = evaluate_budget(config, 0.0)
    row = point.row
    assert row.x_max_bits == 0.0
    assert row.per_gs_rate_bitcom == 0.0 and row.per_gs_rate_semcom == 0.0
    assert row.gs_power_bitcom == 0.0 and row.gs_power_semcom == 0.0


def test_infeasible_row_flagged_not_dropped(tmp_path):
    path = _write_variant(tmp_path, {"radiator_ratio = 1.2": "radiator_ratio = 60.0"})
    config = validate(path)
    point = evaluate_budget(config, 50e6)
    assert not point.envelope.feasible
    assert point.row.p_budget == 50e6  # row still present
    assert point.row.x_max_bits == 0.0


def test_csv_header_and_determinism(tmp_path):
    config = validate(DEFAULT_SCENARIO)
    points = sweep(config)
    rows = [p.row for p in points]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_csv(rows, a)
    emit_csv(rows, b)
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == EXPECTED_HEADER
    assert len(lines) == 21
    assert [f.name for f in dataclasses.fields(MetricsRow)] == EXPECTED_HEADER.split(",")


def test_csv_nine_significant_digits(tmp_path):
    row = MetricsRow(123456789012.0, 1.0 / 3.0, 0.0, 3e13, 1e11, 1e11 / 96, 1.5, 0.5, 1.0, 0.0)
    path = tmp_path / "one.csv"
    emit_csv([row], path)
    cells = path.read_text().splitlines()[1].split(",")
    assert cells[0] == "1.23456789e+11"
    assert cells[1] == "0.333333333"


def test_csv_rejects_empty(tmp_path):
    with pytest.raises(ValueError):
        emit_csv([], tmp_path / "x.csv")


def test_cli_validate_ok(capsys):
    assert cli.main(["validate", str(DEFAULT_SCENARIO)]) == 0
    assert "OK" in capsys.readouterr().out


def test_cli_validate_bad(tmp_path, capsys):
    path = _write_variant(tmp_path, {"n_gs = 30": "n_gs = 0"})
    assert cli.main(["validate", str(path)]) == 1
    assert "fleet.n_gs" in capsys.readouterr().err


def test_cli_sweep_deterministic_bytes(tmp_path):
    out1, out2 = tmp_path / "s1.csv", tmp_path / "s2.csv"
    assert cli.main(["sweep", str(DEFAULT_SCENARIO), "--out", str(out1)]) == 0
    assert cli.main(["sweep", str(DEFAULT_SCENARIO), "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_seed_changes_output(tmp_path):
    out1, out2 = tmp_path / "s1.csv", tmp_path / "s2.csv"
    cli.main(["sweep", str(DEFAULT_SCENARIO), "--out", str(out1)])
    cli.main(["sweep", str(DEFAULT_SCENARIO), "--out", str(out2), "--seed", "7"])
    assert out1.read_bytes() != out2.read_bytes()


def test_cli_run_and_dump(tmp_path, capsys):
    report = tmp_path / "row.csv"
    dump = tmp_path / "slots.csv"
    code = cli.main(
        ["run", str(DEFAULT_SCENARIO), "--budget", "50e6", "--report", str(report),
         "--dump-slots", str(dump)]
    )
    assert code == 0
    assert report.read_text().splitlines()[0] == EXPECTED_HEADER
    dump_lines = dump.read_text().splitlines()
    assert dump_lines[0].startswith("p_budget,slot,gs_id,channel,sat_id")
    assert len(dump_lines) > 1


def test_cli_calibrate(capsys):
    assert cli.main(["calibrate", str(DEFAULT_SCENARIO), "--cross-mw", "50", "--ref-gbps", "100"]) == 0
    out = capsys.readouterr().out
    assert "energy_per_bit_j" in out
    value = float(out.split("=")[1])
    assert abs(value - 1.6266666666666667e-05) / 1.6266666666666667e-05 < 1e-12
