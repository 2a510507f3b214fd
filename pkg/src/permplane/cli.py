"""Command-line front-end.

Subcommands:
  analyze   one input series -> trajectory, plane points, entropy
            evolution, drift flags, optional boundary curves, manifest
  compare   several inputs -> one long-format table for overlays
  synth     generate a synthetic series in the same file schema

All delimited outputs use 12-significant-digit formatting and are
written atomically; every run also writes a JSON manifest with the
resolved configuration and input digests, and re-running with equal
configuration reproduces the delimited outputs byte for byte. Exit
codes: 0 success, 2 configuration error, 3 input error, 4 insufficient
data.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .analysis import DriftReport, WindowSpec, analyze, drift_report
from .errors import ConfigurationError, InputError, InsufficientDataError
from .infotheory import cecp_bounds
from .ingest import CleaningPolicy, load_series, write_csv
from .ordinal import TIE_INDEX_ORDER, TIE_POLICIES, OrdinalConfig
from .synth import KIND_SPLICE, KINDS, GeneratorSpec, generate

EXIT_OK = 0
EXIT_CONFIGURATION = 2
EXIT_INPUT = 3
EXIT_INSUFFICIENT_DATA = 4

TRAJECTORY_FILE = "trajectory.csv"
CECP_FILE = "cecp_points.csv"
EVOLUTION_FILE = "entropy_evolution.csv"
DRIFT_FILE = "drift.csv"
BOUNDS_LOWER_FILE = "bounds_lower.csv"
BOUNDS_UPPER_FILE = "bounds_upper.csv"
COMPARE_FILE = "compare.csv"
MANIFEST_FILE = "manifest.json"
CECP_FIGURE = "cecp_plane.png"
EVOLUTION_FIGURE = "entropy_evolution.png"
DISTRIBUTIONS_FILE = "distributions.jsonl"


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIGURATION
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InsufficientDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INSUFFICIENT_DATA


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permplane",
        description="Ordinal-pattern efficiency surveillance for daily rate series.",
    )
    parser.add_argument("--version", action="version", version=f"permplane {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    io_flags = argparse.ArgumentParser(add_help=False)
    io_flags.add_argument("--column", default="value",
                          help="value column, by header name or index (default: value)")
    io_flags.add_argument("--date-format", default="%Y-%m-%d",
                          help="strptime pattern for the date column (default: %%Y-%%m-%%d)")
    io_flags.add_argument("--delimiter", default=",",
                          help="field delimiter (default: ,)")
    io_flags.add_argument("--missing", choices=["drop", "forward-fill"], default="drop",
                          help="absent-value policy (default: drop)")
    io_flags.add_argument("--duplicates", choices=["error", "keep-first"], default="error",
                          help="duplicate-timestamp policy (default: error)")

    window_flags = argparse.ArgumentParser(add_help=False)
    window_flags.add_argument("--dimension", type=int, default=4,
                              help="ordinal pattern length D (default: 4)")
    window_flags.add_argument("--delay", type=int, default=1,
                              help="embedding delay in observations (default: 1)")
    window_flags.add_argument("--window", type=int, default=500,
                              help="observations per sliding window (default: 500)")
    window_flags.add_argument("--step", type=int, default=30,
                              help="observations between window starts (default: 30)")
    window_flags.add_argument("--tie-policy", choices=list(TIE_POLICIES),
                              default=TIE_INDEX_ORDER,
                              help="tie handling for equal values (default: index-order)")
    window_flags.add_argument("--jitter-seed", type=int, default=0,
                              help="seed for the jitter tie policy (default: 0)")
    window_flags.add_argument("--jitter-amplitude", type=float, default=1e-9,
                              help="perturbation amplitude for jitter ties (default: 1e-9)")
    window_flags.add_argument("--h-threshold", type=float, default=0.8,
                              help="entropy level below which windows are flagged (default: 0.8)")
    window_flags.add_argument("--trend-span", type=int, default=None,
                              help="trailing windows per trend slope "
                                   "(default: 10, clamped to the window count)")
    window_flags.add_argument("--out-dir", default=".",
                              help="directory for output files (default: .)")
    window_flags.add_argument("--figures", action="store_true",
                              help="also render PNG figures next to the tables")

    p_analyze = sub.add_parser(
        "analyze", parents=[io_flags, window_flags],
        help="window one series and export its trajectory",
    )
    p_analyze.add_argument("--input", required=True, help="input CSV file")
    p_analyze.add_argument("--bounds", action="store_true",
                           help="also export the plane's boundary curves")
    p_analyze.add_argument("--bounds-resolution", type=int, default=1024,
                           help="grid size of the boundary curves (default: 1024)")
    p_analyze.add_argument("--dump-distributions", action="store_true",
                           help="debug: write per-window pattern counts as JSON lines")
    p_analyze.set_defaults(handler=_cmd_analyze)

    p_compare = sub.add_parser(
        "compare", parents=[io_flags, window_flags],
        help="window several series into one long-format table",
    )
    p_compare.add_argument("--input", action="append", required=True,
                           help="input CSV file (repeat for each series)")
    p_compare.set_defaults(handler=_cmd_compare)

    p_synth = sub.add_parser("synth", help="generate a synthetic series")
    p_synth.add_argument("--kind", choices=list(KINDS), required=True)
    p_synth.add_argument("--length", type=int, default=3996,
                         help="observation count (default: 3996)")
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--phi", type=float, default=0.8, help="ar1 coefficient")
    p_synth.add_argument("--r", type=float, default=4.0, help="logistic map parameter")
    p_synth.add_argument("--x0", type=float, default=None,
                         help="logistic start point (default: drawn from seed)")
    p_synth.add_argument("--hold-prob", type=float, default=0.9,
                         help="stale-quote probability of repeating the last value")
    p_synth.add_argument("--tick-size", type=float, default=0.01,
                         help="stale-quote quantization step")
    p_synth.add_argument("--segment", action="append", default=None, metavar="SPEC",
                         help="splice segment as kind:length[:key=value...]; repeatable")
    p_synth.add_argument("--name", default=None, help="series name (default: kind)")
    p_synth.add_argument("--out-dir", default=".")
    p_synth.set_defaults(handler=_cmd_synth)

    return parser


def _cmd_analyze(args: argparse.Namespace) -> int:
    config = _ordinal_config(args)
    spec = WindowSpec(length=args.window, step=args.step)
    series = _load(args, args.input)
    trajectory = analyze(series, config, spec)
    drift = _drift(trajectory, args)

    out_dir = _ensure_out_dir(args.out_dir)
    _write_trajectory_tables(out_dir, trajectory, drift)

    bounds = None
    if args.bounds:
        bounds = cecp_bounds(config.n_patterns, args.bounds_resolution)
        _write_bounds(out_dir, bounds)
    if args.dump_distributions:
        _write_distributions(out_dir, series, config, spec)
    if args.figures:
        from . import plotting

        plotting.plot_cecp([trajectory], out_dir / CECP_FIGURE, bounds=bounds)
        plotting.plot_entropy_evolution(
            [trajectory], out_dir / EVOLUTION_FIGURE, h_threshold=args.h_threshold
        )

    _write_manifest(
        out_dir / MANIFEST_FILE, "analyze", args, inputs=[args.input],
        overrides={"trend_span": drift.trend_span},
    )
    print(f"analyze: {len(trajectory)} windows from {len(series)} observations "
          f"-> {out_dir}")
    return EXIT_OK


def _cmd_compare(args: argparse.Namespace) -> int:
    if len(args.input) < 2:
        raise ConfigurationError(
            f"compare needs at least 2 --input files, got {len(args.input)}"
        )
    config = _ordinal_config(args)
    spec = WindowSpec(length=args.window, step=args.step)
    trajectories = [analyze(_load(args, path), config, spec) for path in args.input]

    out_dir = _ensure_out_dir(args.out_dir)
    lines = ["series,index,start_date,end_date,H,C"]
    for trajectory in trajectories:
        for r in trajectory.results:
            lines.append(
                f"{trajectory.name},{r.index},{r.start_date.isoformat()},"
                f"{r.end_date.isoformat()},{_fmt(r.quantifiers.h)},{_fmt(r.quantifiers.c)}"
            )
    _write_text(out_dir / COMPARE_FILE, "\n".join(lines) + "\n")

    if args.figures:
        from . import plotting

        plotting.plot_cecp(trajectories, out_dir / CECP_FIGURE)
        plotting.plot_entropy_evolution(
            trajectories, out_dir / EVOLUTION_FIGURE, h_threshold=args.h_threshold
        )

    _write_manifest(
        out_dir / MANIFEST_FILE, "compare", args, inputs=list(args.input),
        overrides={"trend_span": 10 if args.trend_span is None else args.trend_span},
    )
    print(f"compare: {len(trajectories)} series -> {out_dir / COMPARE_FILE}")
    return EXIT_OK


def _cmd_synth(args: argparse.Namespace) -> int:
    spec = _generator_spec(args)
    series = generate(spec)
    out_dir = _ensure_out_dir(args.out_dir)
    out_path = out_dir / f"{series.name}.csv"
    tmp = out_path.with_suffix(".csv.tmp")
    write_csv(series, tmp)
    os.replace(tmp, out_path)
    _write_manifest(
        out_dir / f"{series.name}.manifest.json", "synth", args, inputs=[]
    )
    print(f"synth: {len(series)} observations -> {out_path}")
    return EXIT_OK


def _drift(trajectory, args: argparse.Namespace):
    """Drift report with the default span clamped to the window count.

    An explicit --trend-span is validated strictly; the default of 10
    shrinks to fit short trajectories. A single-window trajectory gets
    its threshold flag and no trend.
    """
    if args.trend_span is None:
        if len(trajectory) < 2:
            flagged = trajectory.results[0].quantifiers.h < args.h_threshold
            return DriftReport(
                h_threshold=args.h_threshold,
                trend_span=len(trajectory),
                flags=(bool(flagged),),
                trends=(None,),
            )
        span = min(10, len(trajectory))
    else:
        span = args.trend_span
    return drift_report(trajectory, args.h_threshold, span)


def _ordinal_config(args: argparse.Namespace) -> OrdinalConfig:
    return OrdinalConfig(
        dimension=args.dimension,
        delay=args.delay,
        tie_policy=args.tie_policy,
        jitter_seed=args.jitter_seed,
        jitter_amplitude=args.jitter_amplitude,
    )


def _load(args: argparse.Namespace, path: str):
    if not os.path.exists(path):
        raise InputError(f"input file not found: {path}")
    column: str | int = args.column
    if isinstance(column, str) and column.lstrip("-").isdigit():
        column = int(column)
    return load_series(
        path,
        name=Path(path).stem,
        date_format=args.date_format,
        column=column,
        delimiter=args.delimiter,
        policy=CleaningPolicy(missing=args.missing, duplicates=args.duplicates),
    )


def _generator_spec(args: argparse.Namespace) -> GeneratorSpec:
    if args.kind == KIND_SPLICE:
        if not args.segment:
            raise ConfigurationError(
                "splice needs at least one --segment kind:length[:key=value...]"
            )
        segments = tuple(_parse_segment(text) for text in args.segment)
        return GeneratorSpec(
            kind=KIND_SPLICE, seed=args.seed, segments=segments, name=args.name
        )
    if args.segment:
        raise ConfigurationError("--segment is only valid with --kind splice")
    return GeneratorSpec(
        kind=args.kind,
        length=args.length,
        seed=args.seed,
        phi=args.phi,
        r=args.r,
        x0=args.x0,
        hold_prob=args.hold_prob,
        tick_size=args.tick_size,
        name=args.name,
    )


_SEGMENT_KEYS = {
    "phi": ("phi", float),
    "r": ("r", float),
    "x0": ("x0", float),
    "hold-prob": ("hold_prob", float),
    "hold_prob": ("hold_prob", float),
    "tick-size": ("tick_size", float),
    "tick_size": ("tick_size", float),
    "seed": ("seed", int),
}


def _parse_segment(text: str) -> GeneratorSpec:
    """Parse kind:length[:key=value...] into a segment spec."""
    parts = text.split(":")
    if len(parts) < 2:
        raise ConfigurationError(
            f"segment {text!r} must look like kind:length[:key=value...]"
        )
    kind = parts[0]
    if kind not in KINDS or kind == KIND_SPLICE:
        raise ConfigurationError(f"segment kind {kind!r} is not a plain generator")
    try:
        length = int(parts[1])
    except ValueError:
        raise ConfigurationError(f"segment {text!r}: length {parts[1]!r} is not an integer") from None
    kwargs: dict = {}
    for extra in parts[2:]:
        key, sep, value = extra.partition("=")
        if not sep or key not in _SEGMENT_KEYS:
            raise ConfigurationError(
                f"segment {text!r}: unknown or malformed option {extra!r}"
            )
        field_name, cast = _SEGMENT_KEYS[key]
        try:
            kwargs[field_name] = cast(value)
        except ValueError:
            raise ConfigurationError(
                f"segment {text!r}: cannot parse {value!r} for {key}"
            ) from None
    return GeneratorSpec(kind=kind, length=length, **kwargs)


def _write_trajectory_tables(out_dir: Path, trajectory, drift) -> None:
    lines = ["index,start_date,end_date,H,C"]
    for r in trajectory.results:
        lines.append(
            f"{r.index},{r.start_date.isoformat()},{r.end_date.isoformat()},"
            f"{_fmt(r.quantifiers.h)},{_fmt(r.quantifiers.c)}"
        )
    _write_text(out_dir / TRAJECTORY_FILE, "\n".join(lines) + "\n")

    lines = ["H,C,index"]
    for r in trajectory.results:
        lines.append(f"{_fmt(r.quantifiers.h)},{_fmt(r.quantifiers.c)},{r.index}")
    _write_text(out_dir / CECP_FILE, "\n".join(lines) + "\n")

    lines = ["index,start_date,H"]
    for r in trajectory.results:
        lines.append(f"{r.index},{r.start_date.isoformat()},{_fmt(r.quantifiers.h)}")
    _write_text(out_dir / EVOLUTION_FILE, "\n".join(lines) + "\n")

    lines = ["index,H,flagged,trend"]
    for r, flagged, trend in zip(trajectory.results, drift.flags, drift.trends):
        trend_cell = "" if trend is None else _fmt(trend)
        lines.append(
            f"{r.index},{_fmt(r.quantifiers.h)},{str(flagged).lower()},{trend_cell}"
        )
    _write_text(out_dir / DRIFT_FILE, "\n".join(lines) + "\n")


def _write_bounds(out_dir: Path, bounds) -> None:
    lower, upper = bounds
    for path, curve in ((out_dir / BOUNDS_LOWER_FILE, lower),
                        (out_dir / BOUNDS_UPPER_FILE, upper)):
        lines = ["H,C"]
        for h, c in curve:
            lines.append(f"{_fmt(h)},{_fmt(c)}")
        _write_text(path, "\n".join(lines) + "\n")


def _write_distributions(out_dir: Path, series, config, spec) -> None:
    from .analysis import window_bounds
    from .ordinal import pattern_distribution

    lines = []
    for start, stop in window_bounds(len(series), spec):
        lines.append(pattern_distribution(series.values[start:stop], config).to_json())
    _write_text(out_dir / DISTRIBUTIONS_FILE, "\n".join(lines) + "\n")


def _write_manifest(path: Path, command: str, args: argparse.Namespace,
                    inputs: list[str],
                    overrides: dict | None = None) -> None:
    configuration = {
        key: value
        for key, value in sorted(vars(args).items())
        if key not in ("handler", "command") and not key.startswith("_")
    }
    configuration.update(overrides or {})
    manifest = {
        "tool": "permplane",
        "version": __version__,
        "command": command,
        "configuration": configuration,
        "inputs": [
            {"path": name, "sha256": _digest(name)} for name in inputs
        ],
        "created": datetime.now(timezone.utc).isoformat(),
    }
    _write_text(path, json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _digest(path: str) -> str:
    hasher = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            hasher.update(chunk)
    return hasher.hexdigest()


def _ensure_out_dir(out_dir: str) -> Path:
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_text(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.chmod(tmp, 0o644)  # mkstemp defaults to 0600
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


if __name__ == "__main__":
    sys.exit(main())
