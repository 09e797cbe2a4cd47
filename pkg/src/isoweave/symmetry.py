"""Symmetry survey of a design and classification into species 33-39.

The survey is exhaustive: every isometry of the cell grid modulo the torus is
tested.  Each family of motions (translations, quarter-turns, half-turns and
four mirror directions) is a fixed linear part followed by a translation v,
so one pass over v in [0, T)^2 decides the whole family.
"""
from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .grid import (
    Design,
    HalfPoint,
    HalfTurn,
    Isometry,
    QuarterTurn,
    Translation,
    affine,
    is_symmetry,
    swaps_strands,
)
from .lattice import CentreSort, LatticeUnit, _split_level, first_quadrant, rot90

Vec = Tuple[int, int]
Basis = Tuple[Vec, Vec]

DEFAULT_MAX_T = 64


def max_torus_side() -> int:
    return int(os.environ.get("ISOWEAVE_MAX_T", DEFAULT_MAX_T))


class Species(str, enum.Enum):
    S33_3 = "33_3"
    S33_4 = "33_4"
    S34 = "34"
    S35_3 = "35_3"
    S35_4 = "35_4"
    S36_1 = "36_1"
    S36_2 = "36_2"
    S36_S = "36s"
    S37 = "37"
    S38 = "38"
    S39 = "39"

    @classmethod
    def parse(cls, text: str) -> "Species":
        key = text.strip().replace("₁", "_1").replace("₂", "_2").replace("₃", "_3").replace("₄", "_4")
        key = key.replace("ₛ", "s").replace("_s", "s").replace("_S", "s")
        for s in cls:
            if s.value == key or s.value.replace("_", "") == key.replace("_", ""):
                return s
        raise ValueError(f"unknown species {text!r}")

    def __str__(self):
        return self.value


class Row:
    """One row of the table of unit sizes, in multiples of the level-1 area."""

    def __init__(self, g1_area, g1_level, h1_area, order):
        self.g1_area, self.g1_level, self.h1_area, self.order = g1_area, g1_level, h1_area, order


TABLE: Dict[Species, Row] = {
    Species.S33_3: Row(4, 3, 4, 2),
    Species.S33_4: Row(8, 4, 8, 4),
    Species.S34: Row(2, 2, 2, 2),
    Species.S35_3: Row(4, 3, 4, 2),
    Species.S35_4: Row(8, 4, 8, 4),
    Species.S36_1: Row(1, 1, 1, 1),
    Species.S36_2: Row(2, 2, 2, 2),
    Species.S36_S: Row(2, 2, 2, 2),
    Species.S37: Row(8, 4, 16, 4),
    Species.S38: Row(4, 3, 8, 4),
    Species.S39: Row(1, 1, 2, 2),
}

H1_P2 = frozenset({Species.S36_1, Species.S36_2, Species.S36_S, Species.S35_3, Species.S35_4})
H1_EQUALS_G1 = frozenset({Species.S34, Species.S33_3, Species.S33_4})


class Rejection(Exception):
    """The design has no species in 33-39.

    ``reason`` is one of ``reflective``, ``exceptional``, ``no-quarter-turn``,
    ``conformed`` or ``not-isonemal``.
    """

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


class ClassificationError(RuntimeError):
    """The symmetry group contradicts the known placements (a bug, not bad input)."""


# linear part and base offset of each family of grid motions c -> A c + b0 + v
FAMILIES = {
    "translation": (np.array([[1, 0], [0, 1]]), (0, 0)),
    "quarter": (np.array([[0, -1], [1, 0]]), (-1, 0)),
    "half": (np.array([[-1, 0], [0, -1]]), (-1, -1)),
    "mirror_v": (np.array([[-1, 0], [0, 1]]), (-1, 0)),
    "mirror_h": (np.array([[1, 0], [0, -1]]), (0, -1)),
    "mirror_d": (np.array([[0, 1], [1, 0]]), (0, 0)),
    "mirror_a": (np.array([[0, -1], [-1, 0]]), (-1, -1)),
}


MIRROR_FAMILIES = ("mirror_v", "mirror_h", "mirror_d", "mirror_a")


def family_matches(cells: np.ndarray, A: np.ndarray, b0: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    """For g(c) = A c + b0 + v, whether g preserves (``same``) or complements
    (``flipped``) the design, for every v in [0, T)^2."""
    T = cells.shape[0]
    X, Y = np.meshgrid(np.arange(T), np.arange(T), indexing="ij")
    B = np.empty_like(cells)
    B[(A[0, 0] * X + A[0, 1] * Y + b0[0]) % T, (A[1, 0] * X + A[1, 1] * Y + b0[1]) % T] = cells
    idx = (np.arange(T)[None, :] + np.arange(T)[:, None]) % T  # idx[v, i] = i + v
    # shifted[vx, x, vy, y] = cells[x + vx, y + vy]
    eq = cells[idx][:, :, idx] == B[None, :, None, :]
    same = eq.all(axis=(1, 3))
    flipped = (~eq).all(axis=(1, 3))
    return same, flipped


def hnf_basis(mask: np.ndarray) -> Basis:
    """Basis ((a, 0), (x0, c)) of the lattice whose residues mod T are ``mask``."""
    T = mask.shape[0]
    a = next((x for x in range(1, T) if mask[x, 0]), T)
    c = next((y for y in range(1, T) if mask[:, y].any()), T)
    x0 = 0 if c == T else int(np.flatnonzero(mask[:, c])[0]) % a
    return (a, 0), (x0, c)


def reduce_point(p: Vec, basis: Basis, scale: int = 1) -> Vec:
    """Canonical residue of ``p`` modulo scale * lattice(basis) (basis in HNF)."""
    (a, _), (x0, c) = basis
    a, x0, c = a * scale, x0 * scale, c * scale
    x, y = p
    k = y // c
    x, y = x - k * x0, y - k * c
    return x % a, y


def lattice_contains(v: Vec, basis: Basis) -> bool:
    return reduce_point(v, basis) == (0, 0)


def shortest_vector(basis: Basis) -> Vec:
    """Lagrange-Gauss reduction; returns a shortest non-zero lattice vector."""
    b1, b2 = basis
    def n2(v):
        return v[0] * v[0] + v[1] * v[1]
    if n2(b1) > n2(b2):
        b1, b2 = b2, b1
    while True:
        mu = round(Fraction(b1[0] * b2[0] + b1[1] * b2[1], n2(b1)))
        b2 = (b2[0] - mu * b1[0], b2[1] - mu * b1[1])
        if n2(b2) >= n2(b1):
            return b1
        b1, b2 = b2, b1


def basis_area(basis: Basis) -> int:
    (a, b), (c, d) = basis
    return abs(a * d - b * c)


@dataclass(frozen=True)
class SymmetrySurvey:
    """Every symmetry of a design, modulo translations.

    ``translations`` spans the side-preserving (no tau) translations, the
    lattice of H1; ``g1_translations`` spans all translations with or without
    tau, the lattice of G1.  Rotation centres are listed once per class modulo
    the side-preserving translations, direction +1 only.
    """

    torus_side: int
    translations: Basis
    g1_translations: Basis
    quarter_centers: Tuple[Tuple[HalfPoint, bool], ...]
    half_centers: Tuple[Tuple[HalfPoint, bool], ...]
    has_reflection_or_glide: bool
    mirror_families: Tuple[str, ...] = ()


def _dedupe_centres(found: List[Tuple[Vec, bool]], basis: Basis) -> Tuple[Tuple[HalfPoint, bool], ...]:
    seen = {}
    for p, tau in found:
        key = reduce_point(p, basis, scale=2)
        seen.setdefault((key, tau), None)
    return tuple(sorted((HalfPoint(*k), tau) for (k, tau) in seen))


def survey(d: Design) -> SymmetrySurvey:
    T = d.torus_side
    if T > max_torus_side():
        raise ValueError(f"torus side {T} exceeds the bound {max_torus_side()} (set ISOWEAVE_MAX_T)")
    cells = d.cells
    plain_t, tau_t = family_matches(cells, *FAMILIES["translation"])
    h1 = hnf_basis(plain_t)
    g1 = hnf_basis(plain_t | tau_t)

    same_q, flip_q = family_matches(cells, *FAMILIES["quarter"])
    quarters = []
    for vx, vy in zip(*np.nonzero(same_q | flip_q)):
        # a quarter-turn that leaves colours alone must carry tau
        # centres c and c + (T, T) give the same torus map
        for k in (0, T):
            quarters.append(((int(vx - vy) + k, int(vx + vy) + k), bool(same_q[vx, vy])))
    same_h, flip_h = family_matches(cells, *FAMILIES["half"])
    # centres v, v + (T, 0), v + (0, T), v + (T, T) give one torus map but
    # need not be equivalent under translation
    halves = [((int(vx) + i * T, int(vy) + j * T), bool(flip_h[vx, vy]))
              for vx, vy in zip(*np.nonzero(same_h | flip_h)) for i in (0, 1) for j in (0, 1)]

    mirrors = []
    for name in MIRROR_FAMILIES:
        s, f = family_matches(cells, *FAMILIES[name])
        if s.any() or f.any():
            mirrors.append(name)

    return SymmetrySurvey(
        torus_side=T,
        translations=h1,
        g1_translations=g1,
        quarter_centers=_dedupe_centres(quarters, h1),
        half_centers=_dedupe_centres(halves, h1),
        has_reflection_or_glide=bool(mirrors),
        mirror_families=tuple(mirrors),
    )


def strand_orbits(T: int, isometries: Sequence[Isometry]) -> List[int]:
    """Orbit label of each strand (warps 0..T-1, then wefts) under the isometries."""
    parent = list(range(2 * T))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for iso in isometries:
        A, b = affine(iso)
        for x in range(T):
            ix, iy = A @ np.array([x, 0]) + b
            warp_img = int(iy) % T + T if swaps_strands(A) else int(ix) % T
            parent[find(x)] = find(warp_img)
            jx, jy = A @ np.array([0, x]) + b
            weft_img = int(jx) % T if swaps_strands(A) else int(jy) % T + T
            parent[find(x + T)] = find(weft_img)
    return [find(i) for i in range(2 * T)]


@dataclass(frozen=True)
class SpeciesReport:
    species: Species
    g1_unit: LatticeUnit
    h1_unit: LatticeUnit
    h1_type: str
    order: int
    period: int
    reflected_handedness: bool
    g1_type: str = "p4"

    @property
    def M1(self) -> int:
        return self.g1_unit.base[0]

    @property
    def N1(self) -> int:
        return self.g1_unit.base[1]

    @property
    def level(self) -> int:
        return self.g1_unit.level

    @property
    def seed(self) -> Tuple[int, int]:
        return self.g1_unit.base

    def as_dict(self) -> dict:
        return {
            "species": self.species.value,
            "M1": self.M1,
            "N1": self.N1,
            "level": self.level,
            "order": self.order,
            "period": self.period,
            "h1_type": self.h1_type,
            "reflected": self.reflected_handedness,
        }


def _centre_classes(s: SymmetrySurvey) -> Dict[Vec, Tuple[str, bool]]:
    classes: Dict[Vec, Tuple[str, bool]] = {}
    for c, tau in s.quarter_centers:
        key = reduce_point((c.dx, c.dy), s.g1_translations, scale=2)
        prev = classes.setdefault(key, (c.parity, tau))
        if prev != (c.parity, tau):
            raise ClassificationError(f"quarter-turn centre class {key} carries both tau flags")
    return classes


def _species_for(level: int, classes: Sequence[Tuple[str, bool]]) -> Tuple[Species, CentreSort]:
    sorts = sorted(classes)
    if level == 1:
        if [s for s, _ in sorts] != ["centre", "corner"]:
            raise ClassificationError(f"level-1 centres should be of opposite sorts, got {sorts}")
        (_, centre_tau), (_, corner_tau) = sorts
        if not centre_tau:
            raise ClassificationError("a side-preserving quarter-turn cannot sit in a cell")
        return (Species.S36_1 if corner_tau else Species.S39), CentreSort.CELL_CENTRE
    kinds = {s for s, _ in sorts}
    taus = sorted(t for _, t in sorts)
    if len(kinds) != 1:
        raise ClassificationError(f"level-{level} centres should share a sort, got {sorts}")
    kind = kinds.pop()
    if level == 2:
        if kind == "centre":
            if taus != [True, True]:
                raise ClassificationError("cell-centred level-2 units need tau at every quarter-turn")
            return Species.S36_S, CentreSort.CELL_CENTRE
        if taus == [False, False]:
            return Species.S34, CentreSort.CELL_CORNER
        if taus == [True, True]:
            return Species.S36_2, CentreSort.CELL_CORNER
        raise ClassificationError("mixed quarter-turns on a corner-centred level-2 unit")
    if kind != "corner":
        raise ClassificationError(f"level-{level} unit centred in cells")
    if taus == [False, False]:
        sp = Species.S33_3 if level == 3 else Species.S33_4
    elif taus == [True, True]:
        sp = Species.S35_3 if level == 3 else Species.S35_4
    else:
        sp = Species.S38 if level == 3 else Species.S37
    return sp, CentreSort.CELL_CORNER


def _unit_from_vector(v: Vec, centre: CentreSort) -> LatticeUnit:
    p, q = first_quadrant(v)
    level, _, _ = _split_level(p, q)
    return LatticeUnit(max(p, q), min(p, q), level, centre, (level % 2 == 1) != (p > q))


def smallest_axis_period(basis: Basis) -> int:
    """Least n > 0 with (n, 0) in the lattice."""
    return basis[0][0]


def classify(d: Design, s: Optional[SymmetrySurvey] = None) -> SpeciesReport:
    """Species of ``d``; raises Rejection when it is none of 33-39."""
    s = s or survey(d)
    if s.has_reflection_or_glide:
        raise Rejection("exceptional" if s.quarter_centers else "reflective", ",".join(s.mirror_families))
    if not s.quarter_centers:
        raise Rejection("no-quarter-turn")

    side = shortest_vector(s.g1_translations)
    if not lattice_contains(rot90(side), s.g1_translations):
        raise ClassificationError(f"translation lattice {s.g1_translations} is not square")
    p, q = first_quadrant(side)
    if q == 0 or p == q:
        raise Rejection("conformed", f"lattice unit side {side} is not oblique")
    level, m1, n1 = _split_level(p, q)
    if level > 4 or math.gcd(m1, n1) != 1:
        raise Rejection("not-isonemal", f"level {level} unit on legs ({abs(m1)}, {abs(n1)})")

    T = d.torus_side
    centre_point = s.quarter_centers[0][0]
    gens: List[Isometry] = [
        Translation(*s.g1_translations[0]),
        Translation(*s.g1_translations[1]),
        QuarterTurn(centre_point),
    ]
    if len(set(strand_orbits(T, gens))) != 1:
        raise Rejection("not-isonemal", "strands fall into several classes")

    classes = _centre_classes(s)
    if len(classes) != 2:
        raise ClassificationError(f"expected two quarter-turn centre classes, found {len(classes)}")
    species, centre_sort = _species_for(level, list(classes.values()))

    g1_unit = _unit_from_vector(side, centre_sort)
    h1_side = shortest_vector(s.translations)
    plain_sorts = {sort for sort, tau in classes.values() if not tau}
    if plain_sorts:
        h1_type = "p4"
        h1_centre = CentreSort.CELL_CENTRE if plain_sorts == {"centre"} else CentreSort.CELL_CORNER
    else:
        h1_type = "p2"
        h1_centre = centre_sort
    h1_unit = _unit_from_vector(h1_side, h1_centre)

    f = g1_unit.base[0] ** 2 + g1_unit.base[1] ** 2
    row = TABLE[species]
    period = basis_area(s.translations)
    order = smallest_axis_period(s.translations)
    if basis_area(s.g1_translations) != row.g1_area * f or level != row.g1_level:
        raise ClassificationError(f"{species}: G1 unit area {basis_area(s.g1_translations)} vs {row.g1_area}x{f}")
    if period != row.h1_area * f:
        raise ClassificationError(f"{species}: H1 unit area {period} vs {row.h1_area}x{f}")
    if order != row.order * f:
        raise ClassificationError(f"{species}: order {order} vs {row.order}x{f}")
    if (T * T) % period:
        raise ClassificationError(f"torus {T}x{T} is not tiled by the period {period}")
    return SpeciesReport(
        species=species,
        g1_unit=g1_unit,
        h1_unit=h1_unit,
        h1_type=h1_type,
        order=order,
        period=period,
        reflected_handedness=g1_unit.reflected,
    )


def try_classify(d: Design) -> Optional[SpeciesReport]:
    try:
        return classify(d)
    except Rejection:
        return None


def strand_symmetry(d: Design, report: Optional[SpeciesReport] = None) -> str:
    """Symmetry of a single strand: ``12/12``, ``half_turn``, ``11/11`` or ``trivial``.

    Warp 0 stands for every strand (the design is isonemal).  ``12/12`` means
    some half-turn with tau has its centre on the strand's axis, ``half_turn``
    a plain one does, ``11/11`` a translation along the strand with tau.
    """
    T = d.torus_side
    axis = [HalfPoint(1, cy) for cy in range(2 * T)]
    if any(is_symmetry(d, HalfTurn(c, tau=True)) for c in axis):
        return "12/12"
    if any(is_symmetry(d, HalfTurn(c)) for c in axis):
        return "half_turn"
    if any(is_symmetry(d, Translation(0, t, tau=True)) for t in range(1, T)):
        return "11/11"
    return "trivial"
