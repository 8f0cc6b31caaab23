"""Command-line front end.

Exit codes: 0 every check passed, 1 some check failed, 2 operational error
(bad arguments, unreadable config, I/O failure, invalid scenario parameters).
"""

from __future__ import annotations

import argparse
import csv
import inspect
import io
import json
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import cauchy, experiments, grid
from .octonion import multiplication_table
from .report import Report, atomic_write

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
FORMATS = ("json", "csv", "dump")


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    scenarios: list[str] = field(default_factory=lambda: ["all"])
    dim: int | None = None
    n: int | None = None
    L: float | None = None
    p: list[float] | None = None
    t_ladder: list[float] | None = None
    budget: int | None = None
    seed: int = 0
    tol: dict[str, float] = field(default_factory=dict)
    out_dir: str = "reports"
    formats: list[str] = field(default_factory=lambda: ["json", "csv"])

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        names = list(self.scenarios)
        if not names:
            raise ConfigError("no scenarios selected")
        for s in names:
            if s != "all" and s not in experiments.SCENARIOS:
                raise ConfigError(f"unknown scenario {s!r}; choose from {sorted(experiments.SCENARIOS)} or all")
        if self.dim is not None and self.dim < 1:
            raise ConfigError("dim must be >= 1")
        if self.n is not None and (self.n < 4 or self.n % 2):
            raise ConfigError(f"N must be even and >= 4, got {self.n}")
        if self.L is not None and not self.L > 0:
            raise ConfigError("L must be positive")
        if self.p is not None and any(not v > 1 for v in self.p):
            raise ConfigError("p must be > 1")
        if self.t_ladder is not None and (not self.t_ladder or any(not v > 0 for v in self.t_ladder)):
            raise ConfigError("t-ladder entries must be positive")
        if self.budget is not None and self.budget < 1:
            raise ConfigError("budget must be positive")
        for k, v in self.tol.items():
            if k not in experiments.TOLERANCES:
                raise ConfigError(f"unknown tolerance {k!r}")
            if not float(v) >= 0:
                raise ConfigError(f"tolerance {k!r} must be >= 0")
        bad = set(self.formats) - set(FORMATS)
        if bad:
            raise ConfigError(f"unknown output formats {sorted(bad)}")

    def selected(self) -> list[str]:
        if "all" in self.scenarios:
            return list(experiments.SCENARIOS)
        return list(dict.fromkeys(self.scenarios))


CONFIG_KEYS = {f.name for f in fields(Config)}


def load_config_file(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = set(data) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    return data


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _tol_pair(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError("tolerances are given as name=value")
    try:
        return name.strip(), float(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad tolerance value {value!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="octoclifford", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification scenarios and write reports")
    v.add_argument("--suite", "--scenario", dest="scenarios", action="append",
                   help="scenario name or 'all' (repeatable, comma-separated allowed)")
    v.add_argument("--config", help="JSON config file; flags override its values")
    v.add_argument("--dim", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--L", type=float)
    v.add_argument("--p", type=_float_list)
    v.add_argument("--t-ladder", dest="t_ladder", type=_float_list)
    v.add_argument("--budget", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--tol", action="append", type=_tol_pair, default=None)
    v.add_argument("--out-dir", dest="out_dir")
    v.add_argument("--formats", type=lambda s: [x.strip() for x in s.split(",") if x.strip()])
    v.add_argument("--quiet", action="store_true")

    t = sub.add_parser("dump-table", help="octonion multiplication table as CSV")
    t.add_argument("--out", help="output file (default stdout)")

    k = sub.add_parser("kernel", help="evaluate a closed-form kernel at points, CSV out")
    k.add_argument("kind", choices=cauchy.KERNELS)
    k.add_argument("--points", required=True,
                   help="CSV file of points, or inline 'x,y,...;x,y,...'")
    k.add_argument("--t", type=float, default=1.0)
    k.add_argument("--j", type=int, default=1)
    k.add_argument("--n", type=int, default=8, help="ambient dimension")
    k.add_argument("--out")

    c = sub.add_parser("cauchy", help="half-space Cauchy integral of a dumped boundary field")
    c.add_argument("field", help="field dump (.csv or binary)")
    c.add_argument("--z", required=True, type=_float_list, help="interior point t,x1,...,x7")
    c.add_argument("--clifford", action="store_true", help="spinor-pair data and the Cl_8 kernel")
    c.add_argument("--out")
    return parser


def config_from_args(args: argparse.Namespace) -> Config:
    """Defaults, then config file, then explicit flags."""
    values: dict = {}
    if args.config:
        values.update(load_config_file(args.config))
    if args.scenarios:
        values["scenarios"] = [s.strip() for item in args.scenarios for s in item.split(",") if s.strip()]
    for key in ("dim", "n", "L", "p", "t_ladder", "budget", "seed", "out_dir", "formats"):
        value = getattr(args, key)
        if value is not None:
            values[key] = value
    if args.tol:
        values["tol"] = {**values.get("tol", {}), **dict(args.tol)}
    if isinstance(values.get("p"), (int, float)):
        values["p"] = [values["p"]]
    try:
        return Config(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def parse_args(argv=None) -> Config:
    args = build_parser().parse_args(argv)
    if args.command != "verify":
        raise ConfigError("parse_args builds a Config for the verify command only")
    return config_from_args(args)


def scenario_kwargs(name: str, config: Config) -> dict:
    """Map Config fields onto the keyword arguments a scenario accepts."""
    accepted = inspect.signature(experiments.SCENARIOS[name]).parameters
    kw = {"seed": config.seed}
    if "tolerances" in accepted:
        kw["tolerances"] = dict(config.tol)
    candidates = {"d": config.dim, "n": config.n, "length": config.L, "t_ladder": config.t_ladder,
                  "budget": config.budget, "p": tuple(config.p) if config.p else None}
    for key, value in candidates.items():
        if value is not None and key in accepted:
            kw[key] = value
    if "grids" in accepted and (config.dim is not None or config.n is not None):
        kw["grids"] = ((config.dim or 3, config.n or 64),)
    return {k: v for k, v in kw.items() if k in accepted}


def run(config: Config, log=None) -> int:
    log = log or (lambda msg: None)
    out_dir = Path(config.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        log(f"error: cannot create output directory {out_dir}: {exc}")
        return EXIT_ERROR
    report = Report("+".join(config.selected()))
    for name in config.selected():
        try:
            scenario = experiments.SCENARIOS[name](**scenario_kwargs(name, config))
        except (ValueError, MemoryError) as exc:
            log(f"error: scenario {name} could not run: {exc}")
            return EXIT_ERROR
        report.scenarios.append(scenario)
        for c in scenario.checks:
            log(f"{'PASS' if c.passed else 'FAIL'} {name}.{c.name}: {c.measured:.3e} "
                f"({c.mode} {c.threshold:.1e})")
    try:
        if "json" in config.formats:
            atomic_write(out_dir / "report.json", report.to_json())
        if "csv" in config.formats:
            atomic_write(out_dir / "report.csv", report.to_csv())
        if "dump" in config.formats:
            for s in report.scenarios:
                for key, f in s.fields.items():
                    grid.dump_field(f, out_dir / f"{s.name}_{key}.cdf")
    except OSError as exc:
        log(f"error: cannot write reports to {out_dir}: {exc}")
        return EXIT_ERROR
    return EXIT_PASS if report.passed else EXIT_FAIL


def _parse_points(text: str) -> np.ndarray:
    path = Path(text)
    if path.exists():
        rows = [r for r in csv.reader(path.read_text().splitlines()) if r]
        if rows and not _is_number(rows[0][0]):
            rows = rows[1:]
    else:
        rows = [r.split(",") for r in text.split(";") if r.strip()]
    return np.array([[float(v) for v in r] for r in rows], dtype=float)


def _is_number(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def _emit(text: str, out) -> None:
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    def log(msg):
        print(msg, file=sys.stderr)

    try:
        if args.command == "verify":
            config = config_from_args(args)
            return run(config, log=None if args.quiet else log)
        if args.command == "dump-table":
            table = multiplication_table()
            _emit(_csv_text([""] + [f"e{j}" for j in range(8)],
                            [[f"e{i}"] + row for i, row in enumerate(table)]), args.out)
            return EXIT_PASS
        if args.command == "kernel":
            pts = _parse_points(args.points)
            vals = np.atleast_2d(cauchy.kernel_eval(args.kind, {"t": args.t, "j": args.j, "n": args.n}, pts))
            if vals.shape[0] != pts.shape[0]:
                vals = vals.T
            header = [f"x{i}" for i in range(pts.shape[1])] + [f"k{i}" for i in range(vals.shape[1])]
            _emit(_csv_text(header, [[repr(float(v)) for v in np.concatenate([p, k])]
                                     for p, k in zip(pts, vals)]), args.out)
            return EXIT_PASS
        if args.command == "cauchy":
            f = grid.load_field(args.field)
            fn = cauchy.cauchy_halfspace_clifford if args.clifford else cauchy.cauchy_halfspace_oct
            value = fn(f, np.asarray(args.z))
            _emit(_csv_text([f"c{i}" for i in range(len(value))], [[repr(float(v)) for v in value]]), args.out)
            return EXIT_PASS
    except (ConfigError, ValueError, OSError) as exc:
        log(f"error: {exc}")
        return EXIT_ERROR
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
