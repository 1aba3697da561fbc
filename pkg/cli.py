"""Command-line entry point: `rabibus run|list|check`."""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .controller import ExperimentController
from .errors import RabiBusError

logger = logging.getLogger("rabibus")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rabibus",
        description=(
            "Quantum Rabi bus experiments: spectra, transfer dynamics, steady states, transmons. "
            "Experiments are YAML config files (not TOML); bundled ones are addressed by id."
        ),
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run experiment configs and write CSV plus manifest")
    run.add_argument("configs", nargs="+", help="YAML file paths or bundled config ids")
    run.add_argument("-o", "--out-dir", type=Path, default=None, help="output directory (default: cwd)")

    commands.add_parser("list", help="list bundled YAML experiment configs and the result each reproduces")

    check = commands.add_parser("check", help="compare a run at n_fock and at 2 n_fock")
    check.add_argument("config", help="YAML file path or bundled config id")
    return parser


def _list(controller: ExperimentController) -> int:
    entries = controller.list_experiments()
    width = max((len(e["id"]) for e in entries), default=0)
    kind_width = max((len(e["kind"]) for e in entries), default=0)
    for entry in entries:
        print(f"{entry['id']:<{width}}  {entry['kind']:<{kind_width}}  {entry['title']}")
        if entry.get("reproduces"):
            print(f"{'':<{width + kind_width + 4}}reproduces: {entry['reproduces']}")
    return 0


def _check(controller: ExperimentController, name: str) -> int:
    try:
        report = controller.check(name)
    except RabiBusError as exc:
        logger.error("[rabibus] %s: %s", name, exc)
        return exc.exit_code
    coarse, fine = report["n_fock"]
    print(f"{report['id']}: n_fock {coarse} vs {fine}")
    for column, delta in report["deltas"].items():
        print(f"  {column:<24} {delta:.3e}")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    controller = ExperimentController(out_dir=getattr(args, "out_dir", None))

    if args.command == "list":
        return _list(controller)
    if args.command == "check":
        return _check(controller, args.config)
    return controller.run_many(args.configs)
