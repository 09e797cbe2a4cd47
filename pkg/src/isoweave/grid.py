"""Periodic two-way two-fold weave designs and the plane isometries acting on them.

A design is a T x T binary matrix on a torus.  ``cells[x, y] == 1`` means the
warp (vertical strand, constant x) passes over the weft in cell (x, y); such
cells are drawn dark.  Cell (x, y) occupies the unit square [x, x+1) x [y, y+1).

Points that can carry a rotation centre are kept in *doubled* integer
coordinates: ``HalfPoint(dx, dy)`` is the plane point (dx/2, dy/2).  Cell
corners have both components even, cell centres both odd, mid-sides mixed.

Side reversal (tau) never moves anything; it flips which strand is on top,
which on a design is a colour complement.  A motion that turns warps into
wefts (a quarter-turn, a diagonal mirror) also complements the design, so the
two effects cancel.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np

Cell = Tuple[int, int]


class GeometryError(ValueError):
    """An isometry that cannot act on the cell grid."""


@dataclass(frozen=True, eq=False)
class Design:
    """A doubly periodic over/under assignment.

    ``cells`` is indexed ``cells[x, y]``; the design on all of Z^2 is
    ``d(x, y) = cells[x % T, y % T]``.
    """

    cells: np.ndarray
    label: Optional[str] = None

    def __post_init__(self):
        arr = np.array(self.cells, dtype=np.uint8, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError(f"design must be a non-empty square matrix, got shape {arr.shape}")
        if np.any(arr > 1):
            raise ValueError("design cells must be 0 or 1")
        arr.setflags(write=False)
        object.__setattr__(self, "cells", arr)

    @property
    def torus_side(self) -> int:
        return self.cells.shape[0]

    def __call__(self, x: int, y: int) -> int:
        T = self.torus_side
        return int(self.cells[x % T, y % T])

    def __eq__(self, other):
        if not isinstance(other, Design):
            return NotImplemented
        return self.cells.shape == other.cells.shape and bool(np.array_equal(self.cells, other.cells))

    def __hash__(self):
        return hash((self.torus_side, self.cells.tobytes()))

    def __repr__(self):
        tag = f", label={self.label!r}" if self.label else ""
        return f"Design(T={self.torus_side}{tag})"

    def with_label(self, label: Optional[str]) -> "Design":
        return Design(self.cells, label)

    def tiled(self, k: int) -> "Design":
        """The same infinite design stored on a torus k times larger."""
        return Design(np.tile(self.cells, (k, k)), self.label)

    @classmethod
    def from_function(cls, T: int, fn, label: Optional[str] = None) -> "Design":
        X, Y = np.meshgrid(np.arange(T), np.arange(T), indexing="ij")
        return cls(np.vectorize(fn)(X, Y).astype(np.uint8) & 1, label)


def plain_weave() -> Design:
    return Design.from_function(2, lambda x, y: (x + y) % 2, label="plain")


@dataclass(frozen=True, order=True)
class HalfPoint:
    """The plane point (dx/2, dy/2)."""

    dx: int
    dy: int

    @property
    def parity(self) -> str:
        a, b = self.dx % 2, self.dy % 2
        if a == b == 0:
            return "corner"
        if a == b == 1:
            return "centre"
        return "mid-side"

    @classmethod
    def cell_centre(cls, x: int, y: int) -> "HalfPoint":
        return cls(2 * x + 1, 2 * y + 1)

    @classmethod
    def corner(cls, x: int, y: int) -> "HalfPoint":
        return cls(2 * x, 2 * y)

    def shifted(self, vx: int, vy: int) -> "HalfPoint":
        """Move by the (whole-cell) translation (vx, vy)."""
        return HalfPoint(self.dx + 2 * vx, self.dy + 2 * vy)

    def __str__(self):
        def half(n):
            return str(n // 2) if n % 2 == 0 else f"{n}/2"
        return f"({half(self.dx)}, {half(self.dy)})"


@dataclass(frozen=True)
class Translation:
    vx: int
    vy: int
    tau: bool = False


@dataclass(frozen=True)
class QuarterTurn:
    center: HalfPoint
    direction: int = 1
    tau: bool = False

    def __post_init__(self):
        if self.direction not in (1, -1):
            raise GeometryError("quarter-turn direction must be +1 or -1")


@dataclass(frozen=True)
class HalfTurn:
    center: HalfPoint
    tau: bool = False


Isometry = Union[Translation, QuarterTurn, HalfTurn]

_ROT = np.array([[0, -1], [1, 0]])
_ROT_INV = np.array([[0, 1], [-1, 0]])
_NEG = np.array([[-1, 0], [0, -1]])
_ID = np.eye(2, dtype=int)


def affine(iso: Isometry) -> Tuple[np.ndarray, np.ndarray]:
    """Integer affine map ``c -> A @ c + b`` on cell indices induced by ``iso``."""
    if isinstance(iso, Translation):
        return _ID, np.array([iso.vx, iso.vy])
    if isinstance(iso, HalfTurn):
        c = iso.center
        return _NEG, np.array([c.dx - 1, c.dy - 1])
    if isinstance(iso, QuarterTurn):
        cx, cy = iso.center.dx, iso.center.dy
        if (cx - cy) % 2:
            raise GeometryError(f"quarter-turn centre {iso.center} lies on a cell side")
        if iso.direction == 1:
            return _ROT, np.array([(cx + cy) // 2 - 1, (cy - cx) // 2])
        return _ROT_INV, np.array([(cx - cy) // 2, (cx + cy) // 2 - 1])
    raise TypeError(f"not an isometry: {iso!r}")


def swaps_strands(A: np.ndarray) -> bool:
    """Whether the linear part sends vertical strands to horizontal ones."""
    return A[0, 0] == 0


def map_cell(iso: Isometry, cell: Cell) -> Cell:
    """Cell containing the image of the centre of ``cell``.  Tau is ignored."""
    A, b = affine(iso)
    x, y = A @ np.array(cell) + b
    return int(x), int(y)


def expected_complement(iso: Isometry) -> bool:
    """Whether the design must be colour-complemented for ``iso`` to be a symmetry."""
    if isinstance(iso, QuarterTurn):
        return not iso.tau
    return bool(iso.tau)


def _image_indices(T: int, A: np.ndarray, b: np.ndarray):
    X, Y = np.meshgrid(np.arange(T), np.arange(T), indexing="ij")
    Xi = (A[0, 0] * X + A[0, 1] * Y + b[0]) % T
    Yi = (A[1, 0] * X + A[1, 1] * Y + b[1]) % T
    return Xi, Yi


def is_symmetry(d: Design, iso: Isometry) -> bool:
    A, b = affine(iso)
    Xi, Yi = _image_indices(d.torus_side, A, b)
    flip = np.uint8(expected_complement(iso))
    return bool(np.array_equal(d.cells[Xi, Yi], d.cells ^ flip))


def transform_design(d: Design, iso: Isometry) -> Design:
    """The design of the fabric moved by ``iso``."""
    A, b = affine(iso)
    Xi, Yi = _image_indices(d.torus_side, A, b)
    out = np.empty_like(d.cells)
    out[Xi, Yi] = d.cells ^ np.uint8(expected_complement(iso))
    return Design(out, d.label)


def complement(d: Design) -> Design:
    return Design(d.cells ^ np.uint8(1), d.label)


def translate(d: Design, v: Cell) -> Design:
    return transform_design(d, Translation(*v))


def reflect_x(d: Design) -> Design:
    """Mirror image in the line x = 0 (no colour change: warps stay warps)."""
    return Design(d.cells[::-1, :], d.label)
