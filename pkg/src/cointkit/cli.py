"""Command-line front door: one command per invocation, deterministic output.

Commands: ingest-check, adf, eg, grid, ecm, mc-falsepos, mc-size. Options
can also come from a flat ``key = value`` config file (``--config PATH``);
explicit command-line flags win over file values, and unknown file keys
are rejected. Machine reports carry 12 significant digits; the human
tables printed to stdout use 3 decimals and significance stars
(*** 1%, ** 5%, * 10%).

Exit codes: 0 success, 1 usage/config error, 2 data error, 3 numerical
error. Every failure also emits one machine-parsable line on stderr.

The only environment variable consulted is COINTKIT_OUTPUT_DIR, which
redirects relative output paths.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from cointkit import montecarlo
from cointkit.cointegration import (
    GRID_CSV_COLUMNS,
    EgSpec,
    engle_granger_test,
    run_spec_grid,
)
from cointkit.critvals import LEVELS, DeterministicSpec
from cointkit.ecm import EcmSpec, estimate_ecm
from cointkit.errors import (
    CointkitError,
    ConfigError,
    DataError,
    NumericalError,
    UsageError,
)
from cointkit.formats import fmt12s, json_dumps, significance_stars
from cointkit.ingest import ingest_csv
from cointkit.unitroot import adf_test

OUTPUT_DIR_ENV = "COINTKIT_OUTPUT_DIR"

_UNSET = object()


@dataclass(frozen=True)
class Opt:
    name: str
    type: type
    default: object = None
    required: bool = False
    choices: tuple | None = None
    help: str = ""


_DET_CHOICES = ("none", "constant", "constant-trend")
_OUTPUT_OPTS = (
    Opt("output", str, None, help="output path stem; .json/.csv suffixes are added"),
    Opt("format", str, "json", choices=("json", "csv", "both"), help="report format(s)"),
)

SCHEMAS: dict[str, tuple[Opt, ...]] = {
    "ingest-check": (Opt("input", str, required=True, help="CSV file to validate"),) + _OUTPUT_OPTS,
    "adf": (
        Opt("input", str, required=True),
        Opt("lags", int, 0),
        Opt("det", str, "constant", choices=_DET_CHOICES),
    )
    + _OUTPUT_OPTS,
    "eg": (
        Opt("input", str, required=True),
        Opt("input2", str, required=True),
        Opt("transform", str, "untransformed", choices=("logarithms", "untransformed")),
        Opt("normalize_on", str, "first", choices=("first", "second")),
        Opt("lags", int, 0),
        Opt("trend", bool, False),
    )
    + _OUTPUT_OPTS,
    "grid": (
        Opt("input", str, required=True),
        Opt("input2", str, required=True),
    )
    + _OUTPUT_OPTS,
    "ecm": (
        Opt("input", str, required=True, help="dependent (y) series"),
        Opt("input2", str, required=True, help="regressor (x) series"),
        Opt("gap", int, 12),
        Opt("ect_lag", int, 1),
        Opt("control_lags", int, 1),
        Opt("trend", bool, False),
    )
    + _OUTPUT_OPTS,
    "mc-falsepos": (
        Opt("n", int, 300),
        Opt("reps", int, 1000),
        Opt("level", int, 1, choices=(1, 5, 10)),
        Opt("seed", int, 0),
        Opt("workers", int, 1),
    )
    + _OUTPUT_OPTS,
    "mc-size": (
        Opt("test", str, "eg-levels", choices=("eg-levels", "eg-differences", "adf")),
        Opt(
            "dgp",
            str,
            "independent-random-walks",
            choices=("independent-random-walks", "cointegrated-pair", "white-noise-pair"),
        ),
        Opt("n", int, 300),
        Opt("reps", int, 1000),
        Opt("seed", int, 0),
        Opt("lags", int, 0),
        Opt("trend", bool, False),
        Opt("det", str, "constant", choices=_DET_CHOICES),
        Opt("beta", float, 1.0),
        Opt("adjust", float, 0.5),
        Opt("sd", float, 1.0),
        Opt("workers", int, 1),
    )
    + _OUTPUT_OPTS,
}


@dataclass(frozen=True)
class RunConfig:
    """One fully resolved invocation: the command plus every option value."""

    command: str
    values: dict

    def to_config_text(self) -> str:
        lines = [f"command = {self.command}"]
        for opt in SCHEMAS[self.command]:
            value = self.values.get(opt.name)
            if value is None:
                continue
            text = ("true" if value else "false") if opt.type is bool else str(value)
            lines.append(f"{opt.name} = {text}")
        return "\n".join(lines) + "\n"


def parse_config_text(text: str) -> dict[str, str]:
    """Parse the flat key-value grammar: one ``key = value`` per line,
    blank lines and ``#`` comments ignored."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not key:
            raise ConfigError(f"config line {lineno}: empty key")
        if key in out:
            raise ConfigError(f"config line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def _convert(opt: Opt, raw: str) -> object:
    if opt.type is bool:
        if raw not in ("true", "false"):
            raise ConfigError(f"{opt.name} must be 'true' or 'false', got {raw!r}")
        return raw == "true"
    try:
        value = opt.type(raw)
    except ValueError:
        raise ConfigError(f"cannot parse {opt.name}={raw!r} as {opt.type.__name__}") from None
    if opt.choices and value not in opt.choices:
        raise ConfigError(f"{opt.name} must be one of {opt.choices}, got {value!r}")
    return value


def resolve_config(command: str, cli_values: dict, file_text: str | None) -> RunConfig:
    """Merge defaults, config-file values, and explicit flags (in that order)."""
    if command not in SCHEMAS:
        raise ConfigError(f"unknown command {command!r}")
    schema = {opt.name: opt for opt in SCHEMAS[command]}
    values = {opt.name: opt.default for opt in SCHEMAS[command]}

    if file_text is not None:
        file_values = parse_config_text(file_text)
        file_command = file_values.pop("command", None)
        if file_command is not None and file_command != command:
            raise ConfigError(
                f"config file is for command {file_command!r}, invoked as {command!r}"
            )
        for key, raw in file_values.items():
            if key not in schema:
                raise ConfigError(f"unknown config key {key!r} for command {command!r}")
            values[key] = _convert(schema[key], raw)

    for key, value in cli_values.items():
        if value is not _UNSET:
            values[key] = value

    for opt in SCHEMAS[command]:
        if opt.required and values.get(opt.name) is None:
            raise ConfigError(f"missing required option {opt.name!r}")
        if opt.choices and values[opt.name] is not None and values[opt.name] not in opt.choices:
            raise ConfigError(f"{opt.name} must be one of {opt.choices}")
    return RunConfig(command=command, values=values)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit(2); usage errors are exit 1
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="cointkit", description=__doc__, add_help=True)
    sub = parser.add_subparsers(dest="command", required=True)
    for command, opts in SCHEMAS.items():
        p = sub.add_parser(command, help=f"run the {command} operation")
        p.add_argument("--config", default=None, help="flat key=value config file")
        for opt in opts:
            flag = "--" + opt.name.replace("_", "-")
            if opt.type is bool:
                p.add_argument(flag, dest=opt.name, default=_UNSET, choices=("true", "false"))
            elif opt.choices:
                p.add_argument(
                    flag, dest=opt.name, default=_UNSET, type=opt.type, choices=opt.choices
                )
            else:
                p.add_argument(flag, dest=opt.name, default=_UNSET, type=opt.type, help=opt.help)
    return parser


def _csv_text(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _write_outputs(config: RunConfig, json_dict: dict, csv_rows: list[list[str]]) -> list[str]:
    output = config.values.get("output")
    if not output:
        return []
    stem, ext = os.path.splitext(output)
    if ext.lower() not in (".json", ".csv"):
        stem = output
    outdir = os.environ.get(OUTPUT_DIR_ENV)
    if outdir and not os.path.isabs(stem):
        stem = os.path.join(outdir, stem)
    parent = os.path.dirname(stem)
    if parent:
        os.makedirs(parent, exist_ok=True)

    fmt = config.values.get("format", "json")
    written = []
    if fmt in ("json", "both"):
        path = stem + ".json"
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(json_dumps(json_dict))
        written.append(path)
    if fmt in ("csv", "both"):
        path = stem + ".csv"
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(_csv_text(csv_rows))
        written.append(path)
    return written


def _stars_line(statistic: float, cvs: dict[int, float]) -> str:
    stars = significance_stars(statistic, cvs)
    return f"{statistic:.3f}{stars}"


def _warning_lines(warnings) -> list[str]:
    return [f"warning [{w.code}]: {w.message}" for w in warnings]


def _cmd_ingest_check(config: RunConfig) -> tuple[dict, list[list[str]], list[str]]:
    series = ingest_csv(config.values["input"])
    freq_label = "monthly" if series.frequency == 12 else "quarterly"
    report = {
        "type": "ingest_check",
        "name": series.name,
        "frequency": series.frequency,
        "start": series.start_label,
        "end": series.end_label,
        "observations": len(series),
        "min": float(series.values.min()),
        "max": float(series.values.max()),
    }
    rows = [
        ["name", "frequency", "start", "end", "observations", "min", "max"],
        [
            series.name,
            freq_label,
            series.start_label,
            series.end_label,
            str(len(series)),
            fmt12s(series.values.min()),
            fmt12s(series.values.max()),
        ],
    ]
    human = [
        f"{series.name}: {len(series)} {freq_label} observations, "
        f"{series.start_label}..{series.end_label}"
    ]
    return report, rows, human


def _cmd_adf(config: RunConfig) -> tuple[dict, list[list[str]], list[str]]:
    series = ingest_csv(config.values["input"])
    det = DeterministicSpec.from_label(config.values["det"])
    report = adf_test(series, config.values["lags"], det)
    rows = [
        [
            "statistic",
            "lags",
            "deterministic",
            "n_effective",
            "cv1",
            "cv5",
            "cv10",
            "reject1",
            "reject5",
            "reject10",
        ],
        [
            fmt12s(report.statistic),
            str(report.lags),
            det.label(),
            str(report.n_effective),
            fmt12s(report.critical_values[1]),
            fmt12s(report.critical_values[5]),
            fmt12s(report.critical_values[10]),
            str(report.reject_at[1]).lower(),
            str(report.reject_at[5]).lower(),
            str(report.reject_at[10]).lower(),
        ],
    ]
    human = [
        f"ADF on {series.name}: statistic {_stars_line(report.statistic, report.critical_values)} "
        f"(lags {report.lags}, {det.label()}, n_eff {report.n_effective})",
        "critical values: "
        + ", ".join(f"{l}%: {report.critical_values[l]:.3f}" for l in LEVELS),
    ]
    return report.to_json_dict(), rows, human


def _eg_csv_row(report) -> list[str]:
    spec = report.spec
    return [
        spec.transform,
        spec.normalize_on,
        str(spec.lags),
        "true" if spec.trend_in_stage_one else "false",
        fmt12s(report.statistic),
        report.stars,
        fmt12s(report.critical_values[1]),
        fmt12s(report.critical_values[5]),
        fmt12s(report.critical_values[10]),
        ";".join(w.code for w in report.warnings),
    ]


def _cmd_eg(config: RunConfig) -> tuple[dict, list[list[str]], list[str]]:
    a = ingest_csv(config.values["input"])
    b = ingest_csv(config.values["input2"])
    spec = EgSpec(
        transform=config.values["transform"],
        normalize_on=config.values["normalize_on"],
        lags=config.values["lags"],
        trend_in_stage_one=config.values["trend"],
    )
    report = engle_granger_test(a, b, spec)
    rows = [list(GRID_CSV_COLUMNS), _eg_csv_row(report)]
    slope = report.stage_one.coefficients["x"]
    human = [
        f"Engle-Granger ({spec.transform}, normalized on {spec.normalize_on}, "
        f"lags {spec.lags}, trend {str(spec.trend_in_stage_one).lower()})",
        f"stage-one slope: {slope:.3f}   statistic: "
        f"{_stars_line(report.statistic, report.critical_values)} (n_eff {report.n_effective})",
        "critical values: "
        + ", ".join(f"{l}%: {report.critical_values[l]:.3f}" for l in LEVELS),
    ]
    human += _warning_lines(report.warnings)
    return report.to_json_dict(), rows, human


def _cmd_grid(config: RunConfig) -> tuple[dict, list[list[str]], list[str]]:
    a = ingest_csv(config.values["input"])
    b = ingest_csv(config.values["input2"])
    grid = run_spec_grid(a, b)
    human = [
        f"{'transform':<14} {'norm':<7} {'lags':>4} {'trend':<6} {'statistic':>10}",
    ]
    for cell in grid.cells:
        spec = cell.spec
        if cell.report is not None:
            stat = _stars_line(cell.report.statistic, cell.report.critical_values)
        else:
            stat = "error"
        human.append(
            f"{spec.transform:<14} {spec.normalize_on:<7} {spec.lags:>4} "
            f"{str(spec.trend_in_stage_one).lower():<6} {stat:>10}"
        )
    if grid.cells_ok:
        human.append(
            f"aggregates: min {grid.min_statistic:.3f}, max {grid.max_statistic:.3f}, "
            f"median {grid.median_statistic:.3f}; rejections "
            + ", ".join(f"{l}%: {grid.reject_counts[l]}" for l in LEVELS)
        )
    warning_set = []
    for cell in grid.cells:
        if cell.report is not None:
            warning_set.extend(_warning_lines(cell.report.warnings))
    human += sorted(set(warning_set))
    return grid.to_json_dict(), grid.to_csv_rows(), human


def _cmd_ecm(config: RunConfig) -> tuple[dict, list[list[str]], list[str]]:
    y = ingest_csv(config.values["input"])
    x = ingest_csv(config.values["input2"])
    spec = EcmSpec(
        seasonal_gap=config.values["gap"],
        ect_lag=config.values["ect_lag"],
        ardl_control_lags=config.values["control_lags"],
        include_trend=config.values["trend"],
    )
    fit = estimate_ecm(y, x, spec)

    caveat = None
    check: dict = {}
    try:
        eg = engle_granger_test(
            y,
            x,
            EgSpec(
                transform="untransformed",
                normalize_on="first",
                lags=0,
                trend_in_stage_one=spec.include_trend,
            ),
        )
    except CointkitError as exc:
        check = {"error": f"{type(exc).__name__}: {exc}"}
        caveat = "companion cointegration test could not be run; the error-correction term may be undefined"
    else:
        check = {"statistic": eg.statistic, "reject_at_5": eg.reject_at[5]}
        if not eg.reject_at[5]:
            caveat = (
                "companion cointegration test does not reject no-cointegration at 5%; "
                "the error-correction term is then I(1) and this regression risks spurious results"
            )

    report = {
        "type": "ecm_report",
        "fit": fit.to_json_dict(),
        "cointegration_check": check,
        "caveat": caveat,
    }
    rows = [["equation", "term", "coefficient", "stderr", "t_stat"]]
    for eq_name, eq_fit in (("levels", fit.levels_fit), ("ardl", fit.ardl_fit)):
        for term in eq_fit.column_names:
            rows.append(
                [
                    eq_name,
                    term,
                    fmt12s(eq_fit.coefficients[term]),
                    fmt12s(eq_fit.stderrs[term]),
                    fmt12s(eq_fit.t_stats[term]),
                ]
            )
    human = [
        f"levels slope: {fit.levels_fit.coefficients['x']:.3f}",
        f"error-correction coefficient (ect_l{spec.ect_lag}): "
        f"{fit.ect_coefficient:.3f} (t = {fit.ect_t_stat:.3f})",
        "controls: " + ", ".join(fit.control_manifest),
    ]
    if caveat:
        human.append(f"warning: {caveat}")
    return report, rows, human


def _cmd_mc_falsepos(config: RunConfig) -> tuple[dict, list[list[str]], list[str]]:
    result = montecarlo.run_false_positive_experiment(
        n=config.values["n"],
        reps=config.values["reps"],
        level=config.values["level"],
        base_seed=config.values["seed"],
        workers=config.values["workers"],
    )
    level = config.values["level"]
    human = [
        f"false-positive rate at {level}%: {result.rejection_rate[level]:.3f} "
        f"({result.rejections[level]}/{result.replications}); "
        f"differenced-input guard fired in {result.guard_warning_count}/{result.replications}",
    ]
    return result.to_json_dict(), result.to_csv_rows(), human


def _cmd_mc_size(config: RunConfig) -> tuple[dict, list[list[str]], list[str]]:
    test = montecarlo.TestConfig(
        kind=config.values["test"],
        lags=config.values["lags"],
        trend=config.values["trend"],
        det=DeterministicSpec.from_label(config.values["det"]),
    )
    dgp = montecarlo.DgpSpec(
        kind=config.values["dgp"].replace("-", "_"),
        n=config.values["n"],
        innovation_sd=config.values["sd"],
        seed=0,
        beta=config.values["beta"],
        adjust=config.values["adjust"],
    )
    result = montecarlo.run_size_experiment(
        test=test,
        dgp=dgp,
        reps=config.values["reps"],
        base_seed=config.values["seed"],
        workers=config.values["workers"],
    )
    human = [
        f"{test.kind} on {dgp.kind}: rejection rates "
        + ", ".join(f"{l}%: {result.rejection_rate[l]:.3f}" for l in LEVELS)
    ]
    return result.to_json_dict(), result.to_csv_rows(), human


_HANDLERS = {
    "ingest-check": _cmd_ingest_check,
    "adf": _cmd_adf,
    "eg": _cmd_eg,
    "grid": _cmd_grid,
    "ecm": _cmd_ecm,
    "mc-falsepos": _cmd_mc_falsepos,
    "mc-size": _cmd_mc_size,
}


def _exit_code(exc: CointkitError) -> int:
    if isinstance(exc, UsageError):
        return 1
    if isinstance(exc, DataError):
        return 2
    if isinstance(exc, NumericalError):
        return 3
    return 3


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cli_values = {
            opt.name: getattr(args, opt.name) for opt in SCHEMAS[args.command]
        }
        for opt in SCHEMAS[args.command]:
            if opt.type is bool and cli_values[opt.name] is not _UNSET:
                cli_values[opt.name] = cli_values[opt.name] == "true"
        file_text = None
        if args.config is not None:
            try:
                with open(args.config, "r", encoding="utf-8") as fh:
                    file_text = fh.read()
            except OSError as exc:
                raise ConfigError(f"cannot read config file: {exc}") from None
        config = resolve_config(args.command, cli_values, file_text)
        report, rows, human = _HANDLERS[args.command](config)
        for line in human:
            print(line)
        for path in _write_outputs(config, report, rows):
            print(f"wrote {path}")
        return 0
    except CointkitError as exc:
        record = {"error": type(exc).__name__, "message": str(exc).replace("\n", "; ")}
        print("cointkit-error: " + json.dumps(record), file=sys.stderr)
        return _exit_code(exc)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
