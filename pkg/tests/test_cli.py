import json

import numpy as np
import pytest

from octoclifford import cli, experiments, grid
from octoclifford.report import ScenarioReport, strip_timing


def test_parse_examples():
    c = cli.parse_args(["verify", "--suite", "algebra"])
    assert c.scenarios == ["algebra"] and c.seed == 0
    c = cli.parse_args(["verify", "--suite", "splitting", "--dim", "7", "--n", "8", "--seed", "42"])
    assert (c.scenarios, c.dim, c.n, c.seed) == (["splitting"], 7, 8, 42)


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "7"],
    ["verify", "--p", "1"],
    ["verify", "--L", "0"],
    ["verify", "--suite", "nonsense"],
    ["verify", "--tol", "unknown.key=1"],
    ["verify", "--formats", "json,xml"],
])
def test_invalid_configs_exit_2(argv, tmp_path):
    assert cli.main(argv + ["--out-dir", str(tmp_path)]) == 2


def test_unknown_flag_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--bogus"])
    assert exc.value.code == 2


def test_config_file_precedence(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"scenarios": ["riesz"], "n": 16, "seed": 5}))
    c = cli.parse_args(["verify", "--config", str(cfg), "--seed", "6"])
    assert (c.scenarios, c.n, c.seed) == (["riesz"], 16, 6)
    cfg.write_text(json.dumps({"scenarios": ["riesz"], "colour": "red"}))
    assert cli.main(["verify", "--config", str(cfg)]) == 2


def test_scenario_kwargs_mapping():
    c = cli.Config(scenarios=["riesz"], dim=3, n=16, L=3.0, seed=2)
    assert cli.scenario_kwargs("riesz", c)["grids"] == ((3, 16),)
    kw = cli.scenario_kwargs("boundary_convergence", cli.Config(p=[2.0], t_ladder=[1.0, 0.5], n=16))
    assert kw["p"] == (2.0,) and kw["t_ladder"] == [1.0, 0.5] and kw["n"] == 16
    assert "d" not in cli.scenario_kwargs("subharmonicity", cli.Config(dim=4))


def _run(tmp_path, name, *extra):
    return cli.main(["verify", "--suite", name, "--n", "16", "--dim", "3", "--out-dir", str(tmp_path),
                     "--quiet", *extra])


def test_pass_writes_reports_and_is_reproducible(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert _run(a, "counterexample") == 0
    assert _run(b, "counterexample") == 0
    ja = json.loads((a / "report.json").read_text())
    jb = json.loads((b / "report.json").read_text())
    assert strip_timing(ja) == strip_timing(jb)
    assert ja["scenarios"][0]["checks"][0]["seconds"] >= 0
    assert (a / "report.csv").read_text().startswith("scenario,check,measured")


def test_check_failure_exits_1(tmp_path):
    assert _run(tmp_path, "counterexample", "--tol", "counterexample.spectral=0") == 1


def test_failing_fixture_scenario_exits_1(tmp_path, monkeypatch):
    def broken(seed=0, tolerances=None):
        return experiments.run_algebra_suite(seed, 2, 2, table=experiments.corrupted_table())

    monkeypatch.setitem(experiments.SCENARIOS, "algebra", broken)
    assert cli.main(["verify", "--suite", "algebra", "--out-dir", str(tmp_path), "--quiet"]) == 1


def test_unwritable_output_exits_2(tmp_path, monkeypatch):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    monkeypatch.setitem(experiments.SCENARIOS, "algebra", lambda seed=0: ScenarioReport("algebra", {}))
    assert cli.main(["verify", "--suite", "algebra", "--out-dir", str(blocker / "sub"), "--quiet"]) == 2


def test_dump_format_writes_fields(tmp_path):
    assert _run(tmp_path, "splitting", "--formats", "json,dump") == 0
    f = grid.load_field(tmp_path / "splitting_g.cdf")
    assert f.kind == "octonion" and f.spec.n == (16, 16, 16)
    assert not (tmp_path / "report.csv").exists()


def test_dump_table(tmp_path, capsys):
    assert cli.main(["dump-table"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == ",e0,e1,e2,e3,e4,e5,e6,e7"
    assert out[2].split(",")[3] == "e4"


def test_kernel_command(tmp_path, capsys):
    assert cli.main(["kernel", "poisson", "--points", "0,0;1,0", "--n", "3", "--t", "1"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "x0,x1,k0" and float(rows[1].split(",")[2]) == pytest.approx(1 / (2 * np.pi))
    pts = tmp_path / "p.csv"
    pts.write_text("x0,x1,x2,x3,x4,x5,x6,x7\n1,0,0,0,0,0,0,1\n")
    out = tmp_path / "k.csv"
    assert cli.main(["kernel", "cauchy_oct", "--points", str(pts), "--out", str(out)]) == 0
    assert out.read_text().splitlines()[1].endswith("-0.0625")
    assert cli.main(["kernel", "cauchy_oct", "--points", "0,0,0,0,0,0,0,0"]) == 2


def test_cauchy_command(tmp_path, capsys):
    spec = grid.GridSpec.cube(7, 4, 8.0)
    f = grid.Field(spec, "octonion", np.ones(spec.shape + (8,)))
    path = tmp_path / "f.cdf"
    grid.dump_field(f, path)
    assert cli.main(["cauchy", str(path), "--z", "1,0,0,0,0,0,0,0"]) == 0
    vals = [float(v) for v in capsys.readouterr().out.splitlines()[1].split(",")]
    assert len(vals) == 8 and np.isfinite(vals).all()
    assert cli.main(["cauchy", str(tmp_path / "missing.cdf"), "--z", "1,0,0,0,0,0,0,0"]) == 2
    assert cli.main(["cauchy", str(path), "--z=-1,0,0,0,0,0,0,0"]) == 2
