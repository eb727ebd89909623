"""Command-line driver: ``gaugekit list | check <name|all> | monopole | holonomy``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from gaugekit import __version__
from gaugekit.commands import DEFAULT_CHARGES, REGISTRY, RunConfig, run
from gaugekit.config import settings
from gaugekit.errors import GaugeKitError
from gaugekit.events import Event, EventType, event_bus
from gaugekit.reports import FORMATS, render, write_report

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
STDOUT = "-"


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--h", type=_positive_float, help="finite-difference step for checks that take one")
    common.add_argument("--n", type=_positive_int, help="time steps for ordered exponentials")
    common.add_argument("--cells", type=_positive_int, help="quadrature cells per sphere axis")
    common.add_argument("--tol", type=_positive_float, help="override every tolerance")
    common.add_argument("--seed", type=int, help="seed for randomized sweeps (default from config)")
    common.add_argument("--out", help=f"report file or directory; {STDOUT!r} prints to stdout")
    common.add_argument("--format", choices=FORMATS, help="report format (default from config)")
    common.add_argument("--fixture", help="bundle fixture id or JSON path to validate as well")
    common.add_argument("--workers", type=_positive_int, help="threads for grid sweeps")
    noise = common.add_mutually_exclusive_group()
    noise.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    noise.add_argument("--quiet", "-q", action="store_true", help="warnings only")

    parser = argparse.ArgumentParser(
        prog="gaugekit",
        description="Residual checks for gauge theory on coordinate charts.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list the named checks")

    check = sub.add_parser("check", parents=[common], help="run one named check or all of them")
    check.add_argument("target", help="check name, or 'all'")

    monopole = sub.add_parser("monopole", parents=[common], help="two-chart monopole and flux quantization")
    monopole.add_argument(
        "--g", type=float, action="append", dest="charges", help="magnetic charge (repeatable)"
    )

    holonomy = sub.add_parser("holonomy", parents=[common], help="rectangle holonomy convergence table")
    holonomy.add_argument("--scale-sweep", type=_positive_int, default=3, dest="levels", help="loop scales s, s/2, ...")
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)


def _log_failure(event: Event) -> None:
    data = event.data
    logger.warning("Check %s: value %.6g vs tolerance %.3g", data["name"], data["value"], data["tolerance"])


def _print_registry() -> None:
    width = max(len(name) for name in REGISTRY)
    for name in sorted(REGISTRY):
        check = REGISTRY[name]
        print(f"{name:<{width}}  {check.module:<12} {check.description}")


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    charges = tuple(args.charges) if getattr(args, "charges", None) else DEFAULT_CHARGES
    return RunConfig(
        command=args.command,
        target=getattr(args, "target", "all"),
        fixture=args.fixture,
        h=args.h,
        n=args.n,
        cells=args.cells,
        tol=args.tol,
        seed=args.seed,
        out=None if args.out in (None, STDOUT) else Path(args.out),
        format=args.format,
        workers=args.workers,
        charges=charges,
        levels=getattr(args, "levels", 3),
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI; returns 0 when every check behaves as expected, 1 on check failures, 2 on usage errors."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "list":
        _print_registry()
        return 0

    _configure_logging(args)
    try:
        config = _config_from_args(args)
    except GaugeKitError as exc:
        logger.error("%s", exc)
        return 2
    if config.workers is not None:
        settings.setdefault("numerics", {})["workers"] = config.workers

    with event_bus.subscribed(_log_failure, EventType.CHECK_FAILED):
        report = run(config)

    if args.out == STDOUT:
        sys.stdout.write(render(report, config.format))
    else:
        write_report(report, config.format, config.out)

    if not report.passed:
        logger.error("%d check(s) failed: %s", len(report.failures), ", ".join(c.name for c in report.failures))
        return 1
    logger.info("%s: all %d checks passed", config.label, len(report.checks))
    return 0


if __name__ == "__main__":
    sys.exit(main())
