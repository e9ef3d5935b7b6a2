"""Command line client around the service handlers.

Values are resolved in order: built-in defaults, then the top level of
the JSON config file, then the config section named after the
subcommand, then command line flags.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .service.handlers import COLUMNS, COMMANDS
from .service.models import GridSpec
from .state import DegenerateOutcomeError

GRID_FIELDS = ("grid", "q_grid", "s_grid")

_NON_MODEL_ARGS = {
    "command",
    "config",
    "format",
    "out",
    "plate_index",
    "plates_per_filter",
    "passes_per_plate",
}

_PLATE_FLAGS = (
    ("plate_index", "refractive_index"),
    ("plates_per_filter", "plates_per_filter"),
    ("passes_per_plate", "passes_per_plate"),
)


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file with defaults")
    parser.add_argument(
        "--format", choices=("csv", "json"), default=None, help="output format"
    )
    parser.add_argument("--out", help="output path (default: stdout)")


def _add_plate_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--plate-index", type=float, help="filter plate refractive index"
    )
    parser.add_argument("--plates-per-filter", type=int)
    parser.add_argument("--passes-per-plate", type=int)


def _add_setup_flags(parser: argparse.ArgumentParser, mode: bool = True) -> None:
    parser.add_argument("--setup", choices=("sbs", "hybrid"))
    if mode:
        parser.add_argument("--mode", choices=("ideal", "realistic"))
    parser.add_argument("--r-v", type=float, help="V-polarization reflectance")
    parser.add_argument("--r-h", type=float, help="H-polarization reflectance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pccloner",
        description="Asymmetric phase-covariant cloning of polarization qubits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("frontier", help="fidelity trade-off for both cloner families")
    p.add_argument("--grid", help="asymmetry grid as start:stop:num")
    _add_output_flags(p)

    p = sub.add_parser("filters", help="filter ratios and plate tilt angles")
    _add_setup_flags(p, mode=False)
    p.add_argument("--q", type=float, help="single asymmetry value")
    p.add_argument("--q-grid", help="asymmetry grid as start:stop:num")
    _add_plate_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("clone", help="equator scans of the configured cloner")
    _add_setup_flags(p)
    p.add_argument("--q", type=float, help="single asymmetry value")
    p.add_argument("--q-grid", help="asymmetry grid as start:stop:num")
    p.add_argument("--r-fc", type=float, help="fiber coupler reflectance")
    p.add_argument("--residual-phase", type=float, help="uncompensated phase, rad")
    p.add_argument("--overlap", type=float, help="temporal overlap amplitude s")
    p.add_argument("--ancilla-theta", type=float, help="ancilla polar offset, rad")
    p.add_argument("--ancilla-phi", type=float, help="ancilla azimuth, rad")
    _add_plate_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("psucc", help="success probability over an asymmetry grid")
    _add_setup_flags(p)
    p.add_argument("--q", type=float, help="single asymmetry value")
    p.add_argument("--q-grid", help="asymmetry grid as start:stop:num")
    p.add_argument("--r-fc", type=float, help="fiber coupler reflectance")
    _add_plate_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("sample-counts", help="Poisson-sampled repeated measurements")
    _add_setup_flags(p)
    p.add_argument("--q", type=float, help="asymmetry value")
    p.add_argument("--phi", type=float, help="signal equator phase, rad")
    p.add_argument("--r-fc", type=float, help="fiber coupler reflectance")
    p.add_argument("--overlap", type=float, help="temporal overlap amplitude s")
    p.add_argument("--residual-phase", type=float, help="uncompensated phase, rad")
    p.add_argument("--ancilla-theta", type=float, help="ancilla polar offset, rad")
    p.add_argument("--ancilla-phi", type=float, help="ancilla azimuth, rad")
    p.add_argument("--pair-rate", type=float, help="generated pairs per second")
    p.add_argument("--duration", type=float, help="seconds per repetition")
    p.add_argument("--repetitions", type=int, help="number of repetitions")
    p.add_argument("--seed", type=int, help="random seed")
    _add_plate_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("hom", help="two-photon coincidence dip versus overlap")
    p.add_argument("--reflectance", type=float, help="coupler reflectance")
    p.add_argument("--s-grid", help="overlap grid as start:stop:num")
    _add_output_flags(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        config = json.load(fh)
    if not isinstance(config, dict):
        raise ValueError("config file must hold a JSON object")
    return config


def build_payload(command: str, args: argparse.Namespace, config: dict) -> dict:
    """Resolve one request payload from defaults, config file, and flags."""
    model_cls, _ = COMMANDS[command]
    fields = set(model_cls.model_fields)

    payload = {k: v for k, v in config.items() if k in fields}
    section = config.get(command, {})
    if not isinstance(section, dict):
        raise ValueError(f"config section {command!r} must be an object")
    payload.update({k: v for k, v in section.items() if k in fields})

    payload.update(
        {
            k: v
            for k, v in vars(args).items()
            if k not in _NON_MODEL_ARGS and v is not None and k in fields
        }
    )

    plate = dict(payload.get("plate", {}))
    for attr, name in _PLATE_FLAGS:
        value = getattr(args, attr, None)
        if value is not None:
            plate[name] = value
    if plate:
        payload["plate"] = plate

    # psucc takes grids only; a bare --q becomes a one-point grid
    if command == "psucc" and getattr(args, "q", None) is not None:
        payload["q_grid"] = {"start": args.q, "stop": args.q, "num": 1}
        payload.pop("q", None)

    for key in GRID_FIELDS:
        if isinstance(payload.get(key), str):
            payload[key] = GridSpec.parse(payload[key]).model_dump()
    return payload


def emit_json(response) -> str:
    return json.dumps(response.model_dump(), indent=2) + "\n"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def emit_csv(command: str, response) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS[command])
    for row in response.rows:
        writer.writerow(_csv_cell(row.get(name)) for name in COLUMNS[command])
    return buf.getvalue()


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def run_command(command: str, args: argparse.Namespace) -> str:
    config = _load_config(args.config)
    payload = build_payload(command, args, config)
    model_cls, handler = COMMANDS[command]
    response = handler(model_cls(**payload))
    fmt = args.format or config.get("format") or "csv"
    if fmt == "json":
        return emit_json(response)
    return emit_csv(command, response)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0
    try:
        text = run_command(args.command, args)
    except (ValueError, DegenerateOutcomeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
