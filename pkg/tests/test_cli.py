import json
import math

import pytest

from wormhole_geom.cli import COLUMNS, EXIT_FAIL, EXIT_OK, EXIT_USAGE, RunConfig, main, parse_config, run


def _csv(text):
    lines = text.splitlines()
    assert lines[0].startswith("# wormhole-geom v1, columns: ")
    header = lines[1].split(",")
    assert lines[0].split("columns: ")[1] == lines[1]
    return header, [dict(zip(header, line.split(","))) for line in lines[2:]]


def test_flatness_scan(capsys):
    code = main(["flatness-scan", "--u-range", "-3:3", "--v-range", "-1.4:1.4", "--n", "6", "--max-riemann", "1e-6"])
    out, err = capsys.readouterr()
    assert code == EXIT_OK
    header, rows = _csv(out)
    assert tuple(header) == COLUMNS["flatness-scan"]
    assert rows and all(float(r["riemann_max_abs"]) < 1e-6 for r in rows)
    assert "excluded" in err


def test_gauss_bonnet_example(capsys):
    assert main(["gauss-bonnet", "--radius", "0.1", "--expect", "-6.2832", "--tol", "1e-2"]) == EXIT_OK
    _, rows = _csv(capsys.readouterr().out)
    assert float(rows[0]["deficit"]) == pytest.approx(-2 * math.pi, abs=1e-8)


def test_gauss_bonnet_failure_record(capsys):
    assert main(["gauss-bonnet", "--radius", "0.1", "--expect", "0", "--tol", "1e-2"]) == EXIT_FAIL
    record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert record["status"] == "fail" and record["subcommand"] == "gauss-bonnet"
    assert record["observed"] == pytest.approx(2 * math.pi)


def test_oracle_compare_small(capsys, tmp_path):
    traces = tmp_path / "traces.csv"
    code = main(["oracle-compare", "--launches", "6", "--seed", "42", "--max-dev", "1e-6",
                 "--trace-output", str(traces)])
    assert code == EXIT_OK
    header, rows = _csv(capsys.readouterr().out)
    assert [int(r["launch"]) for r in rows] == list(range(6))
    assert all(r["chart_swaps"] == r["oracle_swaps"] for r in rows)
    theader, trows = _csv(traces.read_text())
    assert theader[0] == "launch" and tuple(theader[1:]) == COLUMNS["geodesic"]
    assert {r["sheet"] for r in trows} <= {"A", "B", "Disk"}


def test_deterministic_output(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["oracle-compare", "--launches", "4", "--seed", "7", "--format", "json", "--output"]
    assert main(args + [str(a)]) == EXIT_OK
    assert main(args + [str(b), "--workers", "2"]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    records = json.loads(a.read_text())
    assert len(records) == 4 and set(records[0]) == set(COLUMNS["oracle-compare"])


def test_geodesic_subcommand(capsys):
    code = main(["geodesic", "--start", "0.5,0,-1", "--direction", "0,0,1", "--length", "2"])
    assert code == EXIT_OK
    _, rows = _csv(capsys.readouterr().out)
    assert rows[0]["sheet"] == "A" and rows[-1]["sheet"] == "B"
    assert float(rows[-1]["z"]) == pytest.approx(1.0, abs=1e-8)


def test_geodesic_aimed_at_focal_circle_is_refused(capsys):
    assert main(["geodesic", "--start", "1,0,-1", "--direction", "0,0,1", "--length", "2"]) == EXIT_USAGE


def test_cone_probe_and_hyperboloid(capsys):
    assert main(["cone-probe", "--radius", "0.05,0.1"]) == EXIT_OK
    _, rows = _csv(capsys.readouterr().out)
    assert float(rows[1]["ratio"]) == pytest.approx(4 * math.pi, rel=1e-2)
    assert main(["hyperboloid-check", "--a", "1", "--n", "5", "--format", "json"]) == EXIT_OK
    assert len(json.loads(capsys.readouterr().out)) == 25


def test_floats_have_17_digits(capsys):
    main(["gauss-bonnet", "--radius", "0.1"])
    _, rows = _csv(capsys.readouterr().out)
    assert rows[0]["radius"] == "0.10000000000000001"


@pytest.mark.parametrize(
    "argv",
    [[], ["bogus"], ["gauss-bonnet", "--radius", "abc"], ["gauss-bonnet", "--radius", "0.5"],
     ["flatness-scan", "--u-range", "3:-3"], ["geodesic", "--start", "1,2", "--direction", "0,0,1"],
     ["oracle-compare", "--tol", "1"], ["cone-probe", "--workers", "0"]],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_run_rejects_unknown_config():
    assert run(RunConfig(subcommand="nope")) == EXIT_USAGE
    assert run(RunConfig(subcommand="gauss-bonnet", format="xml")) == EXIT_USAGE


def test_parse_config_negative_values():
    cfg = parse_config(["gauss-bonnet", "--center", "-0.5,0", "--radius", "0.1"])
    assert cfg.params["center"] == [-0.5, 0.0]
    cfg = parse_config(["flatness-scan", "--u-range", "-2:-1"])
    assert cfg.params["u_range"] == (-2.0, -1.0)
