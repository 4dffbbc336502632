from __future__ import annotations

import csv
import io
import json
import logging
import os
import tempfile
from typing import Any, Dict, List, Optional, Sequence

from riesz.errors import ConfigError, ReportError
from riesz.harness import CheckRecord, Direction, Status, SweepConfig, summarize


logger = logging.getLogger(__name__)

CSV_HEADER = (
    "name",
    "direction",
    "status",
    "computed",
    "bound",
    "slack_used",
    "inputs",
    "notes",
)


def config_summary(cfg: SweepConfig) -> Dict[str, Any]:
    """The parts of a SweepConfig that determine its report."""
    return {
        "p_grid": list(cfg.p_grid) if cfg.p_grid is not None else "auto",
        "rs_grid": [list(rs) for rs in cfg.rs_grid] if cfg.rs_grid else "auto",
        "alpha_grid": list(cfg.alpha_grid) if cfg.alpha_grid else "auto",
        "radii": list(cfg.radii),
        "dims": list(cfg.dims),
        "profiles": list(cfg.profiles),
        "quad": {
            "rel_tol": cfg.quad.rel_tol,
            "abs_tol": cfg.quad.abs_tol,
            "max_depth": cfg.quad.max_depth,
            "reject_tol": cfg.quad.reject_tol,
        },
        "beta": cfg.beta,
        "q": cfg.q_label,
        "form": cfg.form.value,
        "grid_size": cfg.grid_size,
        "free_constants": cfg.echo_constants(),
        "seed": cfg.seed,
    }


def render_json(
    records: Sequence[CheckRecord], cfg: Optional[SweepConfig] = None
) -> str:
    document: Dict[str, Any] = {
        "records": [r.as_dict() for r in records],
        "summary": summarize(records),
    }
    if cfg is not None:
        document["params"] = {"d": cfg.params.d, "alpha": cfg.params.alpha}
        document["config"] = config_summary(cfg)
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def render_csv(records: Sequence[CheckRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(
            [
                r.name,
                r.direction.value,
                r.status.value,
                repr(r.computed),
                repr(r.bound),
                repr(r.slack_used),
                json.dumps(r.inputs, sort_keys=True, separators=(",", ":")),
                json.dumps(list(r.notes)),
            ]
        )
    return buffer.getvalue()


def _write_atomic(text: str, path: str) -> None:
    """Write text to path via a sibling temp file, leaving nothing on failure."""
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".report-", suffix=".tmp")
    except OSError as e:
        raise ReportError(f"cannot write report to {path}: {e}") from e
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except OSError as e:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise ReportError(f"cannot write report to {path}: {e}") from e


def emit_report(
    records: Sequence[CheckRecord],
    fmt: str,
    path: str,
    cfg: Optional[SweepConfig] = None,
) -> None:
    if not records:
        raise ConfigError("no records to report")
    if fmt == "json":
        text = render_json(records, cfg)
    elif fmt == "csv":
        text = render_csv(records)
    else:
        raise ConfigError(f"unknown report format {fmt!r}")
    _write_atomic(text, path)
    logger.info("wrote %d records to %s", len(records), path)


def read_csv_report(path: str) -> List[CheckRecord]:
    """Parse a report written by emit_report(..., "csv", ...)."""
    try:
        with open(path, newline="", encoding="utf-8") as f:
            rows = list(csv.reader(f))
    except OSError as e:
        raise ReportError(f"cannot read report {path}: {e}") from e
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ConfigError(f"{path} is not a check report")
    records = []
    for name, direction, status, computed, bound, slack, inputs, notes in rows[1:]:
        records.append(
            CheckRecord(
                name,
                json.loads(inputs),
                float(computed),
                float(bound),
                Direction(direction),
                float(slack),
                Status(status),
                tuple(json.loads(notes)),
            )
        )
    return records
