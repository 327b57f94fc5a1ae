"""CSV artifacts, summaries and matrix input files.

The CSV dialect is fixed: comma separated, header row, LF line endings and
floats printed with 17 significant digits so that reruns are byte-identical.
"""

import csv
import io
import logging
import math
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO

import numpy as np

from ..exceptions import ConfigError
from ..models.operators import Matrix
from ..models.results import Report

logger = logging.getLogger(__name__)

FLOAT_FORMAT = ".17g"


def format_value(value: Any) -> str:
    """Render one CSV cell."""
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, FLOAT_FORMAT)
    return str(value)


def write_csv(stream: TextIO, fieldnames: Sequence[str], rows: Iterable[Dict[str, Any]]) -> None:
    writer = csv.DictWriter(stream, fieldnames=list(fieldnames), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: format_value(row.get(key)) for key in fieldnames})


def summarize(title: str, reports: Sequence[Report]) -> List[str]:
    """Human-readable pass/fail lines, one block per report, failures listed."""
    lines = [title]
    for report in reports:
        status = "PASS" if report.passed else "FAIL"
        lines.append(f"[{status}] {report.name} ({len(report.checks)} checks)")
        for check in report.failures():
            lines.append(
                f"    failed {check.name}: {format_value(check.lhs)} > {format_value(check.rhs)}"
                + (f" ({check.detail})" if check.detail else "")
            )
    passed = sum(report.passed for report in reports)
    lines.append(f"{passed}/{len(reports)} passed")
    return lines


class ArtifactSink:
    """Destination for one command's table and summary.

    With an output directory the table goes to `<command>.csv` and the summary
    to `summary.txt`; otherwise the table is printed on stdout and the summary
    on stderr.
    """

    def __init__(self, command: str, out: Optional[Path] = None):
        self.command = command
        self.out = out

    def table(self, fieldnames: Sequence[str], rows: Iterable[Dict[str, Any]]) -> Optional[Path]:
        if self.out is None:
            write_csv(sys.stdout, fieldnames, rows)
            return None
        self.out.mkdir(parents=True, exist_ok=True)
        path = self.out / f"{self.command}.csv"
        with path.open("w", encoding="utf-8", newline="") as handle:
            write_csv(handle, fieldnames, rows)
        logger.info("wrote %s", path)
        return path

    def summary(self, lines: Sequence[str]) -> Optional[Path]:
        text = "\n".join(lines) + "\n"
        if self.out is None:
            sys.stderr.write(text)
            return None
        self.out.mkdir(parents=True, exist_ok=True)
        path = self.out / "summary.txt"
        with path.open("w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        return path


def read_matrix(path: Path) -> Matrix:
    """Read a row-major matrix file whose first line is `rows,cols`."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"Cannot read matrix file {path}: {exc}") from exc
    records = [row for row in csv.reader(io.StringIO(text)) if row and any(cell.strip() for cell in row)]
    if not records:
        raise ConfigError(f"Matrix file {path} is empty")
    try:
        rows, cols = (int(cell) for cell in records[0])
        values = [[float(cell) for cell in row] for row in records[1:]]
    except ValueError as exc:
        raise ConfigError(f"Malformed matrix file {path}: {exc}") from exc
    if len(values) != rows or any(len(row) != cols for row in values):
        raise ConfigError(f"Matrix file {path} does not match its header {rows},{cols}")
    return Matrix.of(np.asarray(values))
