"""CSV and metadata output."""

import csv
import json
import math


def format_value(v):
    if isinstance(v, str):
        return v
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return "nan"
    return f"{float(v):.12e}"


def write_csv(fh, columns, rows):
    """Comma-separated table with a header row; numbers in ``%.12e``."""
    w = csv.writer(fh, lineterminator="\r\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([format_value(v) for v in r])


def write_meta(path, meta):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True, default=str)
