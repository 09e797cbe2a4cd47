"""Text format for designs and the JSON catalogue of enumerated designs.

Design files look like::

    T=3
    # label: example
    010
    001
    100

The first row printed is y = T-1 and the last is y = 0; columns run x = 0 to
T-1 from left to right.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from .grid import Design
from .symmetry import max_torus_side

PathLike = Union[str, Path]
CATALOG_SCHEMA = 1


class DesignFormatError(ValueError):
    """Malformed design text."""


def parse_design(text: str) -> Design:
    lines = [ln.rstrip("\r") for ln in text.split("\n")]
    while lines and lines[-1].strip() == "":
        lines.pop()
    if not lines or not lines[0].startswith("T="):
        raise DesignFormatError("first line must be T=<integer>")
    try:
        T = int(lines[0][2:].strip())
    except ValueError:
        raise DesignFormatError(f"bad header {lines[0]!r}") from None
    if T < 1:
        raise DesignFormatError("torus side must be positive")
    if T > max_torus_side():
        raise DesignFormatError(f"torus side {T} exceeds the bound {max_torus_side()} (set ISOWEAVE_MAX_T)")
    label = None
    rows: List[str] = []
    for ln in lines[1:]:
        if ln.startswith("#"):
            if rows:
                raise DesignFormatError("metadata lines must precede the rows")
            body = ln[1:].strip()
            if body.startswith("label:"):
                label = body[len("label:"):].strip() or None
            continue
        rows.append(ln.strip())
    if len(rows) != T:
        raise DesignFormatError(f"expected {T} rows, found {len(rows)}")
    for r in rows:
        if len(r) != T:
            raise DesignFormatError(f"row {r!r} does not have {T} cells")
        if set(r) - {"0", "1"}:
            raise DesignFormatError(f"row {r!r} has characters other than 0 and 1")
    grid = np.array([[int(ch) for ch in r] for r in rows], dtype=np.uint8)
    # grid[row, x] with row 0 at the top (y = T-1)
    return Design(grid[::-1, :].T, label)


def grid_rows(d: Design) -> List[str]:
    """Rows from the top (y = T-1) down to y = 0."""
    T = d.torus_side
    return ["".join(str(int(d.cells[x, y])) for x in range(T)) for y in range(T - 1, -1, -1)]


def format_design(d: Design) -> str:
    head = [f"T={d.torus_side}"]
    if d.label:
        head.append(f"# label: {d.label}")
    return "\n".join(head + grid_rows(d)) + "\n"


def load_design(path: PathLike) -> Design:
    return parse_design(Path(path).read_text())


def save_design(d: Design, path: PathLike) -> None:
    Path(path).write_text(format_design(d))


def catalog_dict(enum) -> dict:
    """JSON-ready catalogue of an ``Enumeration``."""
    from .construct import design_id

    designs = []
    for d, r, apart in zip(enum.designs, enum.reports, enum.falls_apart):
        designs.append({
            "id": design_id(d),
            "label": d.label,
            "order": r.order,
            "species": r.species.value,
            "M1": r.M1,
            "N1": r.N1,
            "grid": grid_rows(d),
            "falls_apart": apart,
        })
    return {
        "schema": CATALOG_SCHEMA,
        "order": enum.order,
        "counts": {
            "handed": enum.handed_count,
            "with_reflections": enum.reflection_count,
            "falling_apart_excluded": enum.falling_apart_excluded,
        },
        "notice": enum.notice,
        "designs": designs,
    }


def dump_catalog(enum, path: Optional[PathLike] = None) -> str:
    text = json.dumps(catalog_dict(enum), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def load_catalog(path: PathLike) -> List[Design]:
    data = json.loads(Path(path).read_text())
    if data.get("schema") != CATALOG_SCHEMA:
        raise DesignFormatError(f"unsupported catalogue schema {data.get('schema')!r}")
    out = []
    for entry in data["designs"]:
        rows = entry["grid"]
        out.append(parse_design("\n".join([f"T={len(rows)}", f"# label: {entry.get('label') or entry['id']}"] + rows)))
    return out
