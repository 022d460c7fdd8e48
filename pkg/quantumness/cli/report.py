"""Machine-readable outputs: JSON run reports and CSV sweeps."""
# Standard
import csv
import hashlib
import io
import json
import logging
import math
import os
import tempfile
from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path
from typing import Any, Dict, List, Optional

# Local
from quantumness.errors import InvariantBreachError

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 12
TWO_STATE_HEADER = ["x", "F_acc", "F_pgm", "lambda1", "P_s_opt", "F_clone"]
SYMMETRIC_HEADER = ["n", "F_acc", "lambda1", "P_s_opt"]
UNHASHED_FIELDS = ("wall_time_seconds", "digest")


class ExitCode(IntEnum):
    """
    Enum for the process exit status of a command.
    """

    SUCCESS = 0
    INPUT_ERROR = 1
    NOT_CONVERGED = 2
    INVARIANT_BREACH = 3


def canonical_json(document):
    """Serialize with sorted keys and no NaN, the form that gets hashed."""
    return json.dumps(document, sort_keys=True, separators=(",", ":"), allow_nan=False)


def _check_finite(value, location="report"):
    if isinstance(value, float) and not math.isfinite(value):
        raise InvariantBreachError(f"Non-finite number at {location}")
    if isinstance(value, dict):
        for key, item in value.items():
            _check_finite(item, f"{location}.{key}")
    elif isinstance(value, (list, tuple)):
        for index, item in enumerate(value):
            _check_finite(item, f"{location}[{index}]")


@dataclass
class RunReport:
    """
    Class for the JSON report of one command.

    The digest covers every field except the wall time, so two runs with the
    same inputs and configuration share a digest.

    ...

    Attributes
    ----------
    command: str
        name of the command that produced the report.
    input_digest: str or None
        digest of the input ensemble, if the command read one.
    config: dict
        echo of the solver configuration.
    arguments: dict
        the other command-line settings of the run.
    results: dict
        command-specific values.
    bounds: dict or None
        BoundsReport of the input, if computed.
    status: str
        ``converged`` or ``not_converged``.
    wall_time_seconds: float
        elapsed time, not hashed.

    Methods
    -------
    digest():
        sha256 of the canonical JSON of the hashed fields.
    to_dict():
        the report with its digest.
    to_json():
        indented JSON text.
    """

    command: str
    config: Dict[str, Any]
    results: Dict[str, Any]
    arguments: Dict[str, Any] = field(default_factory=dict)
    input_digest: Optional[str] = None
    bounds: Optional[Dict[str, Any]] = None
    status: str = "converged"
    wall_time_seconds: float = 0.0

    def _hashed(self):
        return {
            "command": self.command,
            "config": self.config,
            "arguments": self.arguments,
            "results": self.results,
            "input_digest": self.input_digest,
            "bounds": self.bounds,
            "status": self.status,
        }

    def digest(self):
        """Returns the sha256 hex digest of everything but the wall time."""
        return hashlib.sha256(canonical_json(self._hashed()).encode()).hexdigest()

    def to_dict(self):
        """Returns the report as a dictionary, digest included.

        Raises
        ------
        InvariantBreachError
            If any number in the report is NaN or infinite.
        """
        document = self._hashed()
        _check_finite(document)
        document["wall_time_seconds"] = self.wall_time_seconds
        document["digest"] = self.digest()
        return document

    def to_json(self):
        """Returns the report as indented JSON text."""
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def report_digest(document):
    """Digest of a report dictionary as read back from disk."""
    hashed = {
        key: value for key, value in document.items() if key not in UNHASHED_FIELDS
    }
    return hashlib.sha256(canonical_json(hashed).encode()).hexdigest()


def format_number(value):
    """Decimal text with 12 significant digits."""
    if isinstance(value, int):
        return str(value)
    return f"{value:.{SIGNIFICANT_DIGITS}g}"


def csv_text(header, rows: List[List[Any]]):
    """Render rows under ``header`` as CSV text."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise InvariantBreachError(
                f"Row has {len(row)} values for {len(header)} columns"
            )
        _check_finite(list(row), "csv row")
        writer.writerow([format_number(value) for value in row])
    return buffer.getvalue()


def write_atomic(path, text):
    """Write ``text`` to ``path`` through a temporary file and a rename.

    Readers of ``path`` see either the old content or the new one, never a
    partial file.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    handle, temporary = tempfile.mkstemp(
        prefix=f".{path.name}.", suffix=".tmp", dir=path.parent
    )
    try:
        with os.fdopen(handle, "w") as stream:
            stream.write(text)
        os.replace(temporary, path)
    except BaseException:
        Path(temporary).unlink(missing_ok=True)
        raise
    logger.info(f"Wrote {path}")
