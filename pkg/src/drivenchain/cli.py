"""Command-line interface.

Subcommands map one-to-one onto sweep models plus `cut` and `validate`.
Exit codes: 0 success, 1 config error, 2 runtime error, 3 completed with
masked cells.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ConfigError, DrivenChainError
from .sweep import load_config, run_cut, run_sweep

_SUBCOMMAND_MODEL = {
    "static-sweep": "static",
    "kicked-sweep": "kicked-cov",
    "kicked-full-sweep": "kicked-full",
    "band-map": "bands",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drivenchain",
        description=(
            "Asymptotic-state sweeps for boundary-driven static and "
            "periodically kicked XY chains"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, model in _SUBCOMMAND_MODEL.items():
        cmd = sub.add_parser(name, help=f"run a {model} sweep over the configured grid")
        _common_args(cmd)
    cut = sub.add_parser("cut", help="scan one axis for a list of chain sizes")
    _common_args(cut)
    val = sub.add_parser("validate", help="validate a config and echo the normalized form")
    val.add_argument("--config", required=True, help="TOML or JSON config file")
    val.add_argument("--cut", action="store_true", help="validate as a cut config")
    return parser


def _common_args(cmd: argparse.ArgumentParser):
    cmd.add_argument("--config", required=True, help="TOML or JSON config file")
    cmd.add_argument("--out", default=".", help="output directory (default: current)")
    cmd.add_argument("--workers", type=int, default=None, help="override run.workers")
    cmd.add_argument(
        "--seed", type=int, default=None,
        help="reserved; echoed into metadata (all algorithms are deterministic)",
    )


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = load_config(args.config, cut=args.command == "cut" or getattr(args, "cut", False))
    except ConfigError as exc:
        for line in exc.errors:
            print(f"config error: {line}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 1

    if args.command == "validate":
        print(json.dumps(config.echo, indent=2, sort_keys=True))
        print(f"config digest: {config.digest}")
        return 0

    expected = _SUBCOMMAND_MODEL.get(args.command)
    if expected is not None and config.model != expected:
        print(
            f"config error: subcommand {args.command} expects model = "
            f"'{expected}', config says '{config.model}'",
            file=sys.stderr,
        )
        return 1

    if args.workers is not None:
        if args.workers < 1:
            print("config error: --workers must be >= 1", file=sys.stderr)
            return 1
        config.echo["run"]["workers"] = args.workers
    if args.seed is not None:
        config.echo["run"]["seed"] = args.seed

    try:
        dataset = run_cut(config) if args.command == "cut" else run_sweep(config)
        csv_path, json_path = dataset.write(args.out)
    except DrivenChainError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"output error: {exc}", file=sys.stderr)
        return 2

    masked = dataset.masked_count
    print(f"wrote {csv_path} and {json_path} ({len(dataset.records)} records, {masked} masked)")
    return 3 if masked else 0


if __name__ == "__main__":
    sys.exit(main())
