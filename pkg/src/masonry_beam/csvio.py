"""Deterministic CSV output with the resolved configuration as a comment header."""

from __future__ import annotations

import csv
import io
import json


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def render_csv(command: str, columns: list[str], rows: list[dict], config: dict) -> str:
    buf = io.StringIO()
    buf.write(f"# masonry-beam {command}\n")
    buf.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(c)) for c in columns])
    return buf.getvalue()


def read_csv(path) -> list[dict]:
    """Parse a file written by :func:`render_csv` (comment lines skipped)."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def gnuplot_script(csv_path: str, x: str, y: list[str], columns: list[str], title: str) -> str:
    idx = {c: i + 1 for i, c in enumerate(columns)}
    plots = ", \\\n     ".join(
        f"'{csv_path}' using {idx[x]}:{idx[c]} with lines title '{c}'" for c in y
    )
    return (
        "set datafile separator ','\n"
        "set datafile commentschars '#'\n"
        "set key autotitle columnhead\n"
        f"set title '{title}'\n"
        f"set xlabel '{x}'\n"
        f"plot {plots}\n"
    )
