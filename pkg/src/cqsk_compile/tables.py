"""CSV tables with a leading ``# schema: ...`` comment line."""

from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence


def write_csv(rows: Iterable[dict], columns: Sequence[str], schema: str | None = None) -> str:
    buf = io.StringIO()
    if schema:
        buf.write(f"# schema: {schema}\n")
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({c: r[c] for c in columns})
    return buf.getvalue()


def read_csv(text: str, converters: dict | None = None) -> list[dict]:
    """Rows as dicts; comment lines are skipped and ``converters`` map column -> type."""
    converters = converters or {}
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return [
        {c: converters.get(c, str)(v) for c, v in r.items()}
        for r in csv.DictReader(body)
    ]


def schema_of(text: str) -> str | None:
    first = text.split("\n", 1)[0]
    return first[len("# schema:"):].strip() if first.startswith("# schema:") else None
