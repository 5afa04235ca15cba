"""Serialize census reports as stable JSON documents and delimited tables.

Output is deterministic byte for byte: keys are sorted, verdicts arrive
already ordered by id, and nothing time- or path-dependent is recorded.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict

from . import __version__
from .census import CensusReport

ROW_FIELDS = (
    "order",
    "label",
    "family",
    "census_total",
    "predicted_total",
    "abelian",
    "cyclic",
    "census_by_order",
    "coverage",
    "collides_with",
)

VERDICT_FIELDS = ("id", "family", "label", "expected", "observed", "status", "witness")


def to_document(report: CensusReport, command: str = "") -> dict:
    """The JSON-ready document for a report."""
    return {
        "schema_version": 1,
        "tool": {"name": "cycensus", "version": __version__},
        "invocation": {
            "command": command,
            "max_order": report.max_order,
            "targets": list(report.targets),
        },
        "catalog": {
            "entries": len(report.rows),
            "partial_orders": list(report.partial_orders),
        },
        "rows": report.rows,
        "verdicts": [asdict(v) for v in report.verdicts],
        "cross_tab": {str(k): v for k, v in report.cross_tab.items()},
        "summary": dict(report.summary),
    }


def json_text(document: dict) -> str:
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def _flag(b: bool) -> str:
    return "true" if b else "false"


def rows_csv(rows: list[dict]) -> str:
    """Catalog census rows as CSV, one line per entry."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ROW_FIELDS)
    for row in rows:
        census = ";".join(
            f"{d}:{c}"
            for d, c in sorted(row["census_by_order"].items(), key=lambda kv: int(kv[0]))
        )
        writer.writerow(
            [
                row["order"],
                row["label"],
                row["family"],
                row["census_total"],
                row["predicted_total"],
                _flag(row["abelian"]),
                _flag(row["cyclic"]),
                census,
                row["coverage"],
                row["collides_with"],
            ]
        )
    return buf.getvalue()


def verdicts_csv(verdicts) -> str:
    """Verdicts as CSV, one line per checked statement."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(VERDICT_FIELDS)
    for v in verdicts:
        d = asdict(v)
        writer.writerow([d[f] for f in VERDICT_FIELDS])
    return buf.getvalue()
