"""Locale-independent CSV with `# key=value` metadata lines."""
from __future__ import annotations

import csv
import io
import math
from typing import Iterable, Mapping, Sequence


def fmt(v) -> str:
    if isinstance(v, (bool, str)):
        return str(v)
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return repr(v)


def render(header: Sequence[str], rows: Iterable[Sequence], meta: Mapping[str, object] = ()) -> str:
    buf = io.StringIO()
    for k, v in dict(meta).items():
        buf.write(f"# {k}={v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(c) for c in row])
    return buf.getvalue()


def write(path, header, rows, meta=()) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(render(header, rows, meta))


def _cell(c: str):
    try:
        return float(c)
    except ValueError:
        return c


def read(path) -> tuple[dict, list[str], list[list]]:
    """Inverse of `write`: (meta, header, rows); non-numeric cells stay strings."""
    meta, lines = {}, []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("# "):
                k, _, v = line[2:].rstrip("\n").partition("=")
                meta[k] = v
            else:
                lines.append(line)
    reader = csv.reader(lines)
    header = next(reader)
    return meta, header, [[_cell(c) for c in r] for r in reader]
