"""Export related functionality: rendering results as aligned tables, CSV or JSON."""

from __future__ import annotations

import csv
import io
import json
import logging
from typing import TYPE_CHECKING, Any

from .import_csv import sample_bytes

if TYPE_CHECKING:
    from pathlib import Path

    from .calibration import ComparisonTable, EndpointCheck
    from .lens_model import CurvePoint

logger = logging.getLogger(f"liquilens.{__name__}")

# display precision per kind of quantity, used by the table format only
DISPLAY_FORMATS = {
    "angle": "{:.2f}",
    "length": "{:.4f}",
    "volume": "{:.4f}",
    "um": "{:.3f}",
    "ratio": "{:.6f}",
    "float": "{:.6g}",
    "int": "{:d}",
    "text": "{}",
}

CURVE_COLUMNS = [
    ("focal_mm", "length"),
    ("volume_mm3", "volume"),
    ("contact_angle_deg", "angle"),
    ("radius_mm", "length"),
    ("sag_mm", "length"),
]
COMPARE_COLUMNS = [
    ("volume", "float"),
    ("theta_meas_deg", "angle"),
    ("theta_theory_deg", "angle"),
    ("theta_fitted_deg", "angle"),
    ("f_meas_mm", "length"),
    ("f_theory_mm", "length"),
    ("note", "text"),
]
# json rows also carry the theory minus measured deltas
DELTA_KEYS = ("theta_delta_deg", "f_delta_mm", "f_delta_relative")

Field = tuple[str, Any, str]


def format_cell(value: Any, kind: str, *, display: bool) -> str:  # noqa: ANN401
    """Format a value for table (display precision) or csv (full precision) output."""
    if value is None:
        return ""
    if isinstance(value, float) and not display:
        return repr(value)
    return DISPLAY_FORMATS[kind].format(value)


def render_record(fields: list[Field], output_format: str) -> str:
    """Render a single result record of (name, value, kind) fields."""
    if output_format == "json":
        return json.dumps({name: value for name, value, _ in fields}, indent=2) + "\n"
    if output_format == "csv":
        return render_rows([(name, kind) for name, _, kind in fields], [[value for _, value, _ in fields]], "csv")
    width = max(len(name) for name, _, _ in fields)
    return "".join(f"{name:<{width}}  {format_cell(value, kind, display=True)}\n" for name, value, kind in fields)


def render_rows(columns: list[tuple[str, str]], rows: list[list[Any]], output_format: str) -> str:
    """Render rows of values under the given (name, kind) columns."""
    names = [name for name, _ in columns]
    if output_format == "json":
        return json.dumps([dict(zip(names, row, strict=True)) for row in rows], indent=2) + "\n"
    if output_format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(names)
        for row in rows:
            writer.writerow([format_cell(v, kind, display=False) for v, (_, kind) in zip(row, columns, strict=True)])
        return buffer.getvalue()
    cells = [[format_cell(v, kind, display=True) for v, (_, kind) in zip(row, columns, strict=True)] for row in rows]
    widths = [max([len(name)] + [len(row[i]) for row in cells]) for i, name in enumerate(names)]
    lines = ["  ".join(name.rjust(w) for name, w in zip(names, widths, strict=True)).rstrip()]
    lines += ["  ".join(cell.rjust(w) for cell, w in zip(row, widths, strict=True)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def curve_rows(points: list[CurvePoint]) -> list[list[Any]]:
    """Return theoretical curve points as rows under CURVE_COLUMNS."""
    return [[p.focal_length, p.volume, p.contact_angle, p.radius, p.sag] for p in points]


def compare_rows(table: ComparisonTable) -> list[list[Any]]:
    """Return comparison rows under COMPARE_COLUMNS."""
    return [
        [row.volume, row.theta_meas, row.theta_theory, row.theta_fitted, row.f_meas, row.f_theory, row.note]
        for row in table.rows
    ]


def write_sample(path: Path) -> None:
    """Write the embedded sample dataset to a file."""
    path = path.expanduser()
    path.write_bytes(sample_bytes())
    logger.info(f"Wrote sample dataset to {path}")


def endpoint_record(check: EndpointCheck) -> dict[str, Any]:
    """Return an endpoint discrepancy check as a JSON-ready dict."""
    return {
        "theta_deg": check.theta,
        "index": check.index,
        "computed_focal_mm": check.computed_focal,
        "reported_focal_mm": check.reported_focal,
        "relative_delta": check.relative_delta,
        "reproduced": check.reproduced,
        "matching_index": check.matching_index,
        "statement": check.describe(),
    }


def render_comparison(table: ComparisonTable, output_format: str) -> tuple[str, str]:
    """Render a comparison table, returning (stdout text, stderr text).

    The endpoint discrepancy statements follow the table, go into the "endpoints" key of the json
    document, or to stderr for csv so the csv stays a single table.
    """
    rows = compare_rows(table)
    statements = "".join(f"endpoint: {check.describe()}\n" for check in table.endpoints)
    if output_format == "json":
        names = [name for name, _ in COMPARE_COLUMNS]
        document = {
            "rows": [
                dict(zip(names, row, strict=True))
                | dict(zip(DELTA_KEYS, (point.theta_delta, point.f_delta, point.f_delta_relative), strict=True))
                for row, point in zip(rows, table.rows, strict=True)
            ],
            "endpoints": [endpoint_record(check) for check in table.endpoints],
        }
        return json.dumps(document, indent=2) + "\n", ""
    text = render_rows(COMPARE_COLUMNS, rows, output_format)
    if output_format == "csv":
        return text, statements
    return text + ("\n" + statements if statements else ""), ""
