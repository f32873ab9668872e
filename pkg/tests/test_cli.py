import json
import math
import textwrap

import pytest

from gmixent import build_table, load_preset
from gmixent.cli import main
from gmixent.reporting import CSV_COLUMNS, FIT_CURVE_COLUMNS


@pytest.fixture(scope="module")
def cache_path(tmp_path_factory):
    # one oracle cache for the whole module so the grid oracle runs once
    return str(tmp_path_factory.mktemp("cache") / "oracle_cache.json")


@pytest.fixture
def run(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)

    def _run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run


def parse_csv(text, columns=CSV_COLUMNS):
    lines = text.strip().splitlines()
    assert lines[0] == ",".join(columns)
    return [dict(zip(columns, line.split(","))) for line in lines[1:]]


def test_estimate_polyfit_reports_small_error(run, cache_path):
    code, out, err = run(
        "estimate", "--preset", "table1_row1", "--method", "polyfit",
        "--C", "5", "--r", "-2", "--cache", cache_path,
    )
    assert code == 0, err
    rows = parse_csv(out)
    assert len(rows) == 1
    row = rows[0]
    assert row["method"] == "polyfit"
    assert row["C"] == "5"
    assert row["solve_mode"] == "exact_rational"
    assert abs(float(row["pct_error_vs_oracle"])) < 1.0


def test_estimate_bound_needs_no_oracle(run):
    code, out, err = run(
        "estimate", "--preset", "table1_row1", "--method", "component_bound",
        "--no-cache",
    )
    assert code == 0, err
    (row,) = parse_csv(out)
    assert row["method"] == "component_bound"
    assert row["pct_error_vs_oracle"] == ""
    assert float(row["h_est"]) > 0


def test_estimate_bound_with_pct_on(run, cache_path):
    code, out, err = run(
        "estimate", "--preset", "table1_row1", "--method", "component_bound",
        "--pct", "on", "--cache", cache_path,
    )
    assert code == 0, err
    (row,) = parse_csv(out)
    # the bound sits above the oracle, so the signed error is negative
    assert float(row["pct_error_vs_oracle"]) < 0


def test_unknown_preset_exits_2(run):
    code, _, err = run("estimate", "--preset", "nope", "--method", "polyfit")
    assert code == 2
    assert "unknown preset" in err


def test_bad_config_exits_2_with_line(run, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(
        textwrap.dedent(
            """\
            {
              "dimension": 1,
              "weights": [0.5, 0.4],
              "components": [
                {"mean": [0.0], "covariance": [[1.0]]},
                {"mean": [1.0], "covariance": [[1.0]]}
              ]
            }
            """
        )
    )
    code, _, err = run("estimate", "--config", str(path), "--method", "moment_bound")
    assert code == 2
    assert "line 3" in err


def test_grid_oracle_on_high_dimension_exits_3(run):
    code, _, err = run("oracle", "--preset", "table1_row4", "--method", "grid", "--no-cache")
    assert code == 3
    assert "n <= 2" in err


def test_bad_taylor_beta_exits_3_naming_method(run):
    code, _, err = run(
        "estimate", "--preset", "table1_row1", "--method", "taylor",
        "--beta", "0.3", "--pct", "off", "--no-cache",
    )
    assert code == 3
    assert "taylor" in err


def test_config_file_estimate(run, tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(
        json.dumps(
            {
                "dimension": 1,
                "weights": [0.5, 0.5],
                "components": [
                    {"mean": [1.0], "covariance": [[1.0]]},
                    {"mean": [-1.0], "covariance": [[1.0]]},
                ],
            }
        )
    )
    code, out, err = run("estimate", "--config", str(path), "--method", "moment_bound")
    assert code == 0, err
    (row,) = parse_csv(out)
    assert row["mixture_id"] == "pair"
    assert float(row["h_est"]) == pytest.approx(
        0.5 * math.log(2 * math.pi * math.e * 2.0), rel=1e-12
    )


def test_sweep_rows_and_byte_identical_reruns(run, tmp_path, cache_path):
    args = (
        "sweep", "--preset", "table1_row1", "--method", "polyfit",
        "--C", "3..5", "--r", "-2,-1", "--cache", cache_path,
    )
    code, _, err = run(*args, "--out", str(tmp_path / "a.csv"))
    assert code == 0, err
    code, _, _ = run(*args, "--out", str(tmp_path / "b.csv"))
    assert code == 0
    a = (tmp_path / "a.csv").read_bytes()
    assert a == (tmp_path / "b.csv").read_bytes()
    rows = parse_csv(a.decode())
    assert len(rows) == 6
    assert [r["r"] for r in rows] == ["-2"] * 3 + ["-1"] * 3
    assert [r["C"] for r in rows] == ["3", "4", "5"] * 2


def test_sweep_taylor_certification_column(run, cache_path):
    code, out, err = run(
        "sweep", "--preset", "table1_row1", "--method", "taylor",
        "--C", "2..4", "--beta", "0.5,1", "--cache", cache_path,
    )
    assert code == 0, err
    rows = parse_csv(out)
    assert len(rows) == 6
    assert [r["certified_lower_bound"] for r in rows[:3]] == ["false"] * 3
    assert [r["certified_lower_bound"] for r in rows[3:]] == ["true"] * 3
    # the certified column climbs toward the entropy from below
    values = [float(r["h_est"]) for r in rows[3:]]
    assert values == sorted(values)


def test_fit_curve_emission(run):
    code, out, err = run(
        "sweep", "--fit-curve", "--b", "2", "--r", "-2,-1,1",
        "--C", "6", "--points", "50",
    )
    assert code == 0, err
    rows = parse_csv(out, FIT_CURVE_COLUMNS)
    assert len(rows) == 150
    ss = sorted({float(r["s"]) for r in rows})
    assert 0 < ss[0] and ss[-1] == 2.0
    for row in rows[:50]:
        s = float(row["s"])
        assert float(row["target_value"]) == pytest.approx(-s * math.log(s), rel=1e-12)


def test_oracle_cache_round_trip(run, tmp_path):
    cache = tmp_path / "c.json"
    args = (
        "oracle", "--preset", "table1_row1", "--method", "mc",
        "--oracle-n", "50000", "--seed", "3", "--cache", str(cache),
    )
    code, first, err = run(*args)
    assert code == 0, err
    assert cache.exists() and "mc" in cache.read_text()
    code, second, _ = run(*args)
    assert code == 0
    assert first == second
    (row,) = parse_csv(first)
    assert row["method"] == "mc"
    assert float(row["std_error"]) > 0


def test_table_export_matches_library(run):
    code, out, err = run("table", "--preset", "table1_row1", "--C-max", "3")
    assert code == 0, err
    lines = out.strip().splitlines()
    assert lines[0] == "mixture_id,a,integral_value"
    table = build_table(load_preset("table1_row1"), 3)
    for line, a in zip(lines[1:], (1, 2, 3)):
        _, a_str, value = line.split(",")
        assert int(a_str) == a
        assert float(value) == table.value(a)


def test_bits_flag_rescales(run):
    code, nats_out, _ = run(
        "estimate", "--preset", "table1_row1", "--method", "moment_bound"
    )
    code2, bits_out, _ = run(
        "estimate", "--preset", "table1_row1", "--method", "moment_bound", "--bits"
    )
    assert code == 0 and code2 == 0
    nats = float(parse_csv(nats_out)[0]["h_est"])
    bits = float(parse_csv(bits_out)[0]["h_est"])
    assert bits == pytest.approx(nats / math.log(2), rel=1e-12)


def test_timings_column_off_by_default(run):
    code, out, _ = run(
        "estimate", "--preset", "table1_row1", "--method", "moment_bound"
    )
    assert code == 0
    assert parse_csv(out)[0]["runtime_ms"] == ""
    code, out, _ = run(
        "estimate", "--preset", "table1_row1", "--method", "moment_bound", "--timings"
    )
    assert code == 0
    assert float(parse_csv(out)[0]["runtime_ms"]) >= 0


def test_malformed_range_exits_2(run):
    code, _, err = run(
        "sweep", "--preset", "table1_row1", "--method", "polyfit",
        "--C", "3..x", "--no-cache", "--oracle", "none",
    )
    assert code == 2
    assert "invalid" in err


def test_taylor_sum_of_peaks_policy(run):
    code, out, err = run(
        "estimate", "--preset", "table1_row1", "--method", "taylor",
        "--C", "4", "--m-policy", "sum_of_peaks", "--pct", "off", "--no-cache",
    )
    assert code == 0, err
    (row,) = parse_csv(out)
    assert row["certified_lower_bound"] == "true"
    assert row["beta"] == ""
    assert float(row["m"]) > 0


def test_mc_estimate_direct(run):
    code, out, err = run(
        "estimate", "--preset", "table1_row1", "--method", "mc",
        "--oracle-n", "50000", "--seed", "4", "--no-cache",
    )
    assert code == 0, err
    (row,) = parse_csv(out)
    assert row["method"] == "mc"
    assert row["pct_error_vs_oracle"] == ""
    assert float(row["h_est"]) == pytest.approx(3.2446, abs=0.05)
