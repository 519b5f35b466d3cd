"""Deterministic JSON and plain-text rendering of pipeline results."""

from __future__ import annotations

import json
from typing import Sequence


def dumps(obj, indent: int = 2) -> str:
    """JSON with every list of scalars kept on one line."""

    def scalar_list(v):
        return isinstance(v, list) and all(not isinstance(x, (list, dict)) for x in v)

    def enc(v, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if isinstance(v, dict):
            if not v:
                return "{}"
            items = [f"{pad}{json.dumps(str(k))}: {enc(x, level + 1)}" for k, x in v.items()]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(v, (list, tuple)):
            v = list(v)
            if scalar_list(v):
                return "[" + ", ".join(json.dumps(x) for x in v) + "]"
            return "[\n" + ",\n".join(pad + enc(x, level + 1) for x in v) + "\n" + end + "]"
        return json.dumps(v)

    return enc(obj, 0) + "\n"


def matrix_json(m: Sequence[Sequence[int]]):
    return [list(row) for row in m]


def matrix_table(m: Sequence[Sequence], clusters: Sequence[Sequence[int]] | None = None) -> str:
    """Aligned table; cluster boundaries drawn as '|' columns and '-' rows."""
    n = len(m)
    if n == 0:
        return "[]\n"
    cells = [[str(v) for v in row] for row in m]
    width = max(len(c) for row in cells for c in row)
    cuts = set()
    if clusters:
        acc = 0
        for c in clusters[:-1]:
            acc += len(c)
            cuts.add(acc)
    lines = []
    for r, row in enumerate(cells):
        if r in cuts:
            lines.append(rule(len(row), width, cuts))
        parts = []
        for c, v in enumerate(row):
            if c in cuts:
                parts.append("|")
            parts.append(v.rjust(width))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def rule(ncols: int, width: int, cuts) -> str:
    parts = []
    for c in range(ncols):
        if c in cuts:
            parts.append("+")
        parts.append("-" * width)
    return "-".join(parts)
