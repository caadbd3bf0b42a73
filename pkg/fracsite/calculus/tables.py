"""
Tabular output for the command line: CSV and JSON renderings of result rows.
"""
import csv
import io
import math
from dataclasses import dataclass

import numpy as np
from django.core.exceptions import ValidationError
from rest_framework.renderers import JSONRenderer

CSV = "csv"
JSON = "json"
FORMATS = (CSV, JSON)


@dataclass(frozen=True)
class GridSpec:
    """``count`` evenly spaced points from start to stop, written ``start:stop:count``."""

    start: float
    stop: float
    count: int

    def __post_init__(self):
        self.clean()

    def clean(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValidationError("grid limits must be finite")
        if int(self.count) != self.count or self.count < 1:
            raise ValidationError("grid count must be a positive integer")
        if self.stop < self.start:
            raise ValidationError("grid stop must not be below start")

    @classmethod
    def parse(cls, text):
        parts = text.split(":")
        if len(parts) != 3:
            raise ValidationError(f"grid must look like start:stop:count, got '{text}'")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise ValidationError(f"grid must look like start:stop:count, got '{text}'") from exc
        return cls(start, stop, count)

    @classmethod
    def single(cls, value):
        return cls(float(value), float(value), 1)

    def values(self):
        if self.count == 1:
            return [self.start]
        return [float(x) for x in np.linspace(self.start, self.stop, self.count)]


def format_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.15g}"
    if value is None:
        return ""
    return str(value)


def emit_table(rows, fmt=CSV, fields=None):
    """
    Renders homogeneous rows (dicts sharing their keys) as text.

    CSV has a header line and one line per row, floats with 15 significant
    digits and '\\n' line endings; with no rows only the header is written.
    JSON is an array of objects with the same field names.
    """
    if fmt not in FORMATS:
        raise ValidationError(f"unknown output format '{fmt}'")
    rows = list(rows)
    fields = list(fields) if fields is not None else (list(rows[0]) if rows else [])
    if fmt == JSON:
        data = [{name: row[name] for name in fields} for row in rows]
        return render_json(data)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if fields:
        writer.writerow(fields)
    for row in rows:
        writer.writerow([format_value(row[name]) for name in fields])
    return buffer.getvalue()


def render_json(data):
    return JSONRenderer().render(data, renderer_context={"indent": 2}).decode("utf-8") + "\n"
