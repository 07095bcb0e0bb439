"""File formats: CSV arrays and JSON matroids/polymatroids/matrices.

Array CSV: first line holds the column labels, each following line one
row of comma-separated decimal symbols.  Matroid JSON carries either the
dense rank table keyed by decimal bitmask (relative to the label order)
or a circuit list.  Round-trips are exact.
"""

from __future__ import annotations

import json
import os
import tempfile
from typing import Any

from .errors import InputError
from .matroid import IntegerPolymatroid, Label, Matroid, from_circuits
from .voa import Voa


def _parse_label(text: str) -> Label:
    try:
        return int(text)
    except ValueError:
        return text


def voa_to_csv(t: Voa) -> str:
    lines = [",".join(str(c) for c in t.columns)]
    lines += [",".join(str(x) for x in row) for row in t.rows]
    return "\n".join(lines) + "\n"


def voa_from_csv(text: str, level: int) -> Voa:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty CSV array")
    columns = tuple(_parse_label(c.strip()) for c in lines[0].split(","))
    rows = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = [p.strip() for p in ln.split(",")]
        try:
            rows.append(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
        if len(parts) != len(columns):
            raise InputError(
                f"line {lineno}: {len(parts)} fields, expected {len(columns)}")
    return Voa(level, columns, rows)


def matroid_to_json(m: Matroid | IntegerPolymatroid) -> dict[str, Any]:
    return {
        "n": m.n,
        "labels": list(m.labels),
        "rank": {str(mask): m.table[mask] for mask in range(1 << m.n)},
    }


def _from_rank_json(data: dict, cls):
    labels = data.get("labels")
    n = data.get("n")
    if labels is None:
        if n is None:
            raise InputError("matroid JSON needs 'labels' or 'n'")
        labels = list(range(1, int(n) + 1))
    if n is not None and int(n) != len(labels):
        raise InputError("matroid JSON: 'n' does not match 'labels'")
    rank = {int(k): int(v) for k, v in data["rank"].items()}
    return cls(tuple(labels), rank, validate=True)


def matroid_from_json(data: dict | str) -> Matroid:
    """Accepts the rank-table schema or the circuit-list schema."""
    if isinstance(data, str):
        data = json.loads(data)
    if "rank" in data:
        return _from_rank_json(data, Matroid)
    if "circuits" in data:
        labels = data.get("labels")
        if labels is None:
            if "n" not in data:
                raise InputError("circuit JSON needs 'labels' or 'n'")
            labels = list(range(1, int(data["n"]) + 1))
        return from_circuits(tuple(labels), data["circuits"])
    raise InputError("matroid JSON needs a 'rank' table or a 'circuits' list")


def polymatroid_from_json(data: dict | str) -> IntegerPolymatroid:
    if isinstance(data, str):
        data = json.loads(data)
    if "rank" not in data:
        raise InputError("polymatroid JSON needs a 'rank' table")
    return _from_rank_json(data, IntegerPolymatroid)


def matrix_to_json(entries, labels, modulus: int | None = None) -> dict[str, Any]:
    return {
        "rows": len(entries),
        "cols": len(entries[0]) if entries else 0,
        "labels": list(labels),
        "entries": [list(r) for r in entries],
        **({"modulus": modulus} if modulus is not None else {}),
    }


def matrix_from_json(data: dict | str):
    if isinstance(data, str):
        data = json.loads(data)
    entries = [[int(x) for x in row] for row in data["entries"]]
    labels = data.get("labels")
    if labels is None:
        labels = list(range(1, (len(entries[0]) if entries else 0) + 1))
    return entries, tuple(labels), data.get("modulus")


def write_atomic(path: str, text: str):
    """Write via a temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_voa_csv(path: str, t: Voa, max_rows: int = 10_000_000):
    if t.n_rows > max_rows:
        raise InputError(
            f"array has {t.n_rows} rows, above the --max-rows guard {max_rows}")
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(",".join(str(c) for c in t.columns) + "\n")
            for row in t.rows:
                fh.write(",".join(str(x) for x in row) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
