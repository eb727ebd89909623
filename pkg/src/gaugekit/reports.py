"""Check results and the CSV / JSON / text report writers."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

from jinja2 import Environment, FileSystemLoader, select_autoescape

from gaugekit.config import PACKAGE_DIR, get_output_dir

logger = logging.getLogger(__name__)

TEMPLATE_DIR = PACKAGE_DIR / "config" / "templates"
FORMATS = ("csv", "json", "text")


@dataclass
class CheckResult:
    """One residual compared against its tolerance.

    ``expect_pass=False`` marks a documented obstruction: the check is
    reported as failing but does not fail the run.
    """

    name: str
    value: float
    tolerance: float
    detail: str = ""
    expect_pass: bool = True

    @property
    def passed(self) -> bool:
        return bool(math.isfinite(self.value) and self.value <= self.tolerance)

    @property
    def ok(self) -> bool:
        return self.passed == self.expect_pass


@dataclass
class RunReport:
    command: str
    seed: int
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def extend(self, checks: list[CheckResult]) -> None:
        self.checks.extend(checks)

    @property
    def ordered(self) -> list[CheckResult]:
        return sorted(self.checks, key=lambda c: c.name)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.ordered if not c.ok]


def _num(value: float) -> str:
    return "%.17g" % value


def to_csv(report: RunReport) -> str:
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(["name", "value", "tolerance", "pass"])
    for check in report.ordered:
        writer.writerow([check.name, _num(check.value), _num(check.tolerance), "true" if check.passed else "false"])
    return output.getvalue()


def to_json(report: RunReport) -> str:
    envelope = {
        "command": report.command,
        "seed": report.seed,
        "passed": report.passed,
        "checks": [
            {
                "name": c.name,
                "value": _num(c.value),
                "tolerance": _num(c.tolerance),
                "pass": c.passed,
                "expected": "pass" if c.expect_pass else "fail",
                "detail": c.detail,
            }
            for c in report.ordered
        ],
    }
    return json.dumps(envelope, sort_keys=True, indent=2) + "\n"


def to_text(report: RunReport) -> str:
    env = Environment(
        loader=FileSystemLoader(str(TEMPLATE_DIR)),
        autoescape=select_autoescape(default=False),
        keep_trailing_newline=True,
    )
    template = env.get_template("report.txt")
    return template.render(report=report, checks=report.ordered, fmt=_num)


def render(report: RunReport, fmt: str = "csv") -> str:
    if fmt == "csv":
        return to_csv(report)
    if fmt == "json":
        return to_json(report)
    if fmt == "text":
        return to_text(report)
    raise ValueError(f"Unknown report format {fmt!r}; expected one of {FORMATS}")


def write_report(report: RunReport, fmt: str = "csv", out: Path | str | None = None) -> Path:
    """Render and write the report; ``out`` may be a file or a directory."""
    suffix = {"csv": ".csv", "json": ".json", "text": ".txt"}[fmt]
    target = Path(out) if out is not None else get_output_dir()
    if target.suffix == "":
        target = target / f"{report.command.replace(' ', '_')}{suffix}"
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(render(report, fmt))
    logger.info("Wrote %s report to %s", fmt, target)
    return target
