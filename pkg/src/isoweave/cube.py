"""Woven cubes: nets of six lattice units and strand transitivity on the cube.

A net is six G1 lattice units of the design laid out as a cross in the plane.
Each face carries a frame (outward normal n, right r, up u) of the unit cube,
obtained by folding the cross.  Across every cube edge the design on one face
continues as the plane design on the unfolded neighbour; the plane isometry
from that unfolded square to the neighbour's place in the net is the gluing
map, and the cube carries a well-defined fabric when every gluing map is a
side-preserving symmetry of the design.

Strands on the cube are built from strand pieces (a strip of the plane design
meeting the interior of one face) linked across edges by the gluing maps.
Cube rotations act on pieces face by face; a rotation is a symmetry when the
colours it carries agree, possibly all reversed (tau), on every face.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import floor, ceil
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .grid import Design, HalfPoint, HalfTurn, Isometry, QuarterTurn, Translation, is_symmetry
from .lattice import rot90
from .symmetry import (
    Species,
    SpeciesReport,
    classify,
    reduce_point,
    shortest_vector,
    survey,
)

Vec3 = Tuple[int, int, int]
Point = Tuple[Fraction, Fraction]
Strip = Tuple[str, int]  # ("warp", x) or ("weft", y)
Cell = Tuple[int, int]

CUBE_SPECIES = frozenset({Species.S33_3, Species.S33_4, Species.S34, Species.S37, Species.S38, Species.S39})

# net positions in units of (s, rot90(s)); (1, 1) is the root face
CROSS = ((1, 1), (1, 0), (0, 1), (2, 1), (1, 2), (1, 3))


class CubeError(ValueError):
    """The design cannot be woven onto a cube."""


@dataclass(frozen=True)
class Verdict:
    verdict: bool
    reason: str


def cube_weavable(r: SpeciesReport) -> Verdict:
    sp = r.species
    if sp in CUBE_SPECIES:
        return Verdict(True, "lattice unit with side-preserving quarter-turns at its corners")
    if sp is Species.S36_1:
        return Verdict(False, "tau-parity: every quarter-turn carries tau, so three of them at a cube corner reverse the colours")
    if sp is Species.S36_S:
        return Verdict(False, "cell-centred level-2 unit: its corners are filled quarter-turns at cell centres")
    return Verdict(False, "corner lemma: only filled quarter-turns are available for the face corners")


def _neg(a: Vec3) -> Vec3:
    return (-a[0], -a[1], -a[2])


def _dot(a: Vec3, b: Vec3) -> int:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _apply(m: np.ndarray, v: Vec3) -> Vec3:
    return tuple(int(t) for t in m @ np.array(v))


@dataclass(frozen=True)
class Frame:
    n: Vec3
    r: Vec3
    u: Vec3

    def step(self, di: int, dj: int) -> "Frame":
        """Frame of the face reached by crossing an edge of the net."""
        n, r, u = self.n, self.r, self.u
        if (di, dj) == (1, 0):
            return Frame(r, _neg(n), u)
        if (di, dj) == (-1, 0):
            return Frame(_neg(r), n, u)
        if (di, dj) == (0, 1):
            return Frame(u, r, _neg(n))
        if (di, dj) == (0, -1):
            return Frame(_neg(u), r, n)
        raise ValueError("steps are unit moves")


@dataclass(frozen=True)
class PlaneMap:
    """x -> R x + t on the plane, R a multiple of a quarter-turn."""

    R: Tuple[Tuple[int, int], Tuple[int, int]]
    t: Point

    def __call__(self, p: Point) -> Point:
        (a, b), (c, d) = self.R
        return (a * p[0] + b * p[1] + self.t[0], c * p[0] + d * p[1] + self.t[1])

    @property
    def swaps(self) -> bool:
        return self.R[0][0] == 0

    def cell(self, c: Cell) -> Cell:
        x, y = self((Fraction(c[0]) + Fraction(1, 2), Fraction(c[1]) + Fraction(1, 2)))
        return floor(x), floor(y)

    def strip(self, s: Strip) -> Strip:
        kind, k = s
        mid = Fraction(k) + Fraction(1, 2)
        p = (mid, Fraction(0)) if kind == "warp" else (Fraction(0), mid)
        x, y = self(p)
        vertical = (kind == "warp") != self.swaps
        return ("warp", int(x - Fraction(1, 2))) if vertical else ("weft", int(y - Fraction(1, 2)))

    def isometry(self, tau: bool = False) -> Isometry:
        R, (tx, ty) = self.R, self.t
        if R == ((1, 0), (0, 1)):
            if tx.denominator != 1 or ty.denominator != 1:
                raise CubeError("gluing translation is not integral")
            return Translation(int(tx), int(ty), tau)
        if R == ((-1, 0), (0, -1)):
            return HalfTurn(HalfPoint(int(tx), int(ty)), tau)
        if R == ((0, -1), (1, 0)):
            return QuarterTurn(HalfPoint(int(tx - ty), int(tx + ty)), 1, tau)
        if R == ((0, 1), (-1, 0)):
            return QuarterTurn(HalfPoint(int(tx + ty), int(ty - tx)), -1, tau)
        raise CubeError(f"not a plane rotation: {R}")


@dataclass(frozen=True)
class CubeFace:
    pos: Tuple[int, int]
    centre: Point
    frame: Frame
    corners: Tuple[Point, ...]
    colours: Dict[Cell, int]
    strips: Tuple[Strip, ...]


@dataclass(frozen=True)
class CubeNet:
    """Six faces laid out as a cross, with gluing maps across the cube edges."""

    design: Design
    centre: HalfPoint
    side: Tuple[int, int]
    faces: Tuple[CubeFace, ...]
    gluings: Tuple[Tuple[int, int, PlaneMap], ...]  # (face, neighbour, map from unfolded square)

    def face_by_normal(self, n: Vec3) -> int:
        return next(i for i, f in enumerate(self.faces) if f.frame.n == n)

    def with_face_colours(self, index: int, colours: Dict[Cell, int]) -> "CubeNet":
        faces = list(self.faces)
        f = faces[index]
        faces[index] = CubeFace(f.pos, f.centre, f.frame, f.corners, dict(colours), f.strips)
        return CubeNet(self.design, self.centre, self.side, tuple(faces), self.gluings)


def _half(p: HalfPoint) -> Point:
    return Fraction(p.dx, 2), Fraction(p.dy, 2)


def _interval_overlap(a: Tuple[Fraction, Fraction], b: Tuple[Fraction, Fraction]) -> bool:
    return max(a[0], b[0]) < min(a[1], b[1])


def _project(points: Sequence[Point], axis: Tuple[Fraction, Fraction]) -> Tuple[Fraction, Fraction]:
    vals = [p[0] * axis[0] + p[1] * axis[1] for p in points]
    return min(vals), max(vals)


def _square_cells(corners: Sequence[Point], s: Tuple[int, int]) -> List[Cell]:
    """Cells whose interior meets the interior of the square (exact separating-axis test)."""
    xs = [p[0] for p in corners]
    ys = [p[1] for p in corners]
    axes = [(Fraction(s[0]), Fraction(s[1])), (Fraction(-s[1]), Fraction(s[0]))]
    sq = [_project(corners, a) for a in axes]
    out = []
    for x in range(floor(min(xs)), ceil(max(xs))):
        for y in range(floor(min(ys)), ceil(max(ys))):
            box = [(Fraction(x), Fraction(y)), (Fraction(x + 1), Fraction(y)),
                   (Fraction(x), Fraction(y + 1)), (Fraction(x + 1), Fraction(y + 1))]
            if all(_interval_overlap(_project(box, a), iv) for a, iv in zip(axes, sq)):
                out.append((x, y))
    return out


def _strips_across(points: Sequence[Point]) -> List[Strip]:
    """Strips whose open band meets the open hull of ``points`` (a square or an edge)."""
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    out: List[Strip] = []
    out += [("warp", x) for x in range(floor(min(xs)), ceil(max(xs)))]
    out += [("weft", y) for y in range(floor(min(ys)), ceil(max(ys)))]
    return out


def _cells_across(a: Point, b: Point) -> List[Cell]:
    """Cells whose interior meets the open segment ab (the segment is oblique)."""
    normal = (b[1] - a[1], a[0] - b[0])
    level = a[0] * normal[0] + a[1] * normal[1]
    out = []
    for x in range(floor(min(a[0], b[0])), ceil(max(a[0], b[0]))):
        for y in range(floor(min(a[1], b[1])), ceil(max(a[1], b[1]))):
            box = [(Fraction(x), Fraction(y)), (Fraction(x + 1), Fraction(y)),
                   (Fraction(x), Fraction(y + 1)), (Fraction(x + 1), Fraction(y + 1))]
            lo, hi = _project(box, normal)
            if lo < level < hi and _interval_overlap((Fraction(x), Fraction(x + 1)), (min(a[0], b[0]), max(a[0], b[0]))) \
                    and _interval_overlap((Fraction(y), Fraction(y + 1)), (min(a[1], b[1]), max(a[1], b[1]))):
                out.append((x, y))
    return out


def _plane_map(src_centre: Point, src: Frame, dst_centre: Point, dst: Frame) -> PlaneMap:
    """The plane isometry taking the square at src_centre to the one at dst_centre
    so that points with the same position on the cube correspond."""
    R = ((_dot(src.r, dst.r), _dot(src.u, dst.r)), (_dot(src.r, dst.u), _dot(src.u, dst.u)))
    (a, b), (c, d) = R
    t = (dst_centre[0] - (a * src_centre[0] + b * src_centre[1]),
         dst_centre[1] - (c * src_centre[0] + d * src_centre[1]))
    return PlaneMap(R, t)


def _face_unit(d: Design) -> Tuple[HalfPoint, Tuple[int, int]]:
    """Centre and side of a lattice unit with side-preserving quarter-turns at its corners."""
    s = survey(d)
    side = shortest_vector(s.g1_translations)
    classes: Dict[Tuple[int, int], Tuple[HalfPoint, bool]] = {}
    for c, tau in s.quarter_centers:
        classes.setdefault(reduce_point((c.dx, c.dy), s.g1_translations, scale=2), (c, tau))
    ordered = sorted(classes.values(), key=lambda ct: (not ct[1], ct[0]))
    for centre, _ in ordered:
        corner = HalfPoint(centre.dx + side[0] - side[1], centre.dy + side[1] + side[0])
        if corner.parity != "mid-side" and is_symmetry(d, QuarterTurn(corner)):
            return centre, side
    raise CubeError("no lattice unit has side-preserving quarter-turns at its corners")


def cube_net(d: Design, report: Optional[SpeciesReport] = None) -> CubeNet:
    """A cross-shaped net of six G1 lattice units of ``d``."""
    report = report or classify(d)
    v = cube_weavable(report)
    if not v.verdict:
        raise CubeError(f"species {report.species} cannot be woven onto a cube: {v.reason}")
    return build_net(d)


def build_net(d: Design) -> CubeNet:
    """Lay out the net without the species gate; raises CubeError when the
    geometry fails (no suitable unit, or a gluing map that is not a symmetry)."""
    centre, s = _face_unit(d)
    w = rot90(s)
    P = _half(centre)
    half = Fraction(1, 2)

    frames: Dict[Tuple[int, int], Frame] = {CROSS[0]: Frame((0, 0, 1), (1, 0, 0), (0, 1, 0))}
    queue = deque([CROSS[0]])
    while queue:
        cur = queue.popleft()
        for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            nxt = (cur[0] + di, cur[1] + dj)
            if nxt in CROSS and nxt not in frames:
                frames[nxt] = frames[cur].step(di, dj)
                queue.append(nxt)

    def place(i, j) -> Point:
        return (P[0] + i * s[0] + j * w[0], P[1] + i * s[1] + j * w[1])

    def corners_of(c: Point) -> Tuple[Point, ...]:
        return tuple((c[0] + a * s[0] + b * w[0], c[1] + a * s[1] + b * w[1])
                     for a, b in ((-half, -half), (half, -half), (half, half), (-half, half)))

    faces = []
    for pos in CROSS:
        c = place(*pos)
        corners = corners_of(c)
        colours = {cell: d(*cell) for cell in _square_cells(corners, s)}
        faces.append(CubeFace(pos, c, frames[pos], corners, colours, tuple(_strips_across(corners))))
    if len({f.frame.n for f in faces}) != 6:
        raise CubeError("the net does not fold to a cube")

    gluings = []
    by_normal = {f.frame.n: k for k, f in enumerate(faces)}
    for k, f in enumerate(faces):
        for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            unfolded = f.frame.step(di, dj)
            g = by_normal[unfolded.n]
            src = place(f.pos[0] + di, f.pos[1] + dj)
            m = _plane_map(src, unfolded, faces[g].centre, faces[g].frame)
            iso = m.isometry()
            if not is_symmetry(d, iso):
                raise CubeError(f"gluing face {k} to face {g} needs {iso}, which is not a symmetry")
            gluings.append((k, g, m))
    return CubeNet(d, centre, s, tuple(faces), tuple(gluings))


# strands on the cube --------------------------------------------------------

def _edge(f: CubeFace, di: int, dj: int) -> Tuple[Point, Point]:
    c0, c1, c2, c3 = f.corners  # (-,-), (+,-), (+,+), (-,+)
    return {(1, 0): (c1, c2), (-1, 0): (c3, c0), (0, 1): (c2, c3), (0, -1): (c0, c1)}[(di, dj)]


_DIRS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def _gluing_table(net: CubeNet):
    it = iter(net.gluings)
    table = {}
    for k in range(len(net.faces)):
        for dd in _DIRS:
            f, g, m = next(it)
            table[(k, dd)] = (g, m)
    return table


@dataclass(frozen=True)
class CubeVerification:
    consistent: bool
    strands: Tuple[Tuple[Tuple[int, Strip], ...], ...]
    symmetries: Tuple[Tuple[Tuple[Tuple[int, ...], ...], bool], ...]
    orbits: Tuple[Tuple[int, ...], ...]
    adjacent_pairs_swapped: bool
    problems: Tuple[str, ...] = ()

    @property
    def transitive(self) -> bool:
        return len(self.orbits) == 1

    @property
    def isonemal(self) -> bool:
        return self.consistent and self.transitive and self.adjacent_pairs_swapped


def cube_rotations() -> List[np.ndarray]:
    """The 24 rotations of the cube as signed permutation matrices."""
    out = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            m = np.zeros((3, 3), dtype=int)
            for i, (j, sg) in enumerate(zip(perm, signs)):
                m[i, j] = sg
            if round(np.linalg.det(m)) == 1:
                out.append(m)
    return out


def cube_strands(net: CubeNet) -> Tuple[Dict[Tuple[int, Strip], int], List[str]]:
    """Strand label of every strand piece, and any colour clashes along edges."""
    parent: Dict[Tuple[int, Strip], Tuple[int, Strip]] = {}
    for k, f in enumerate(net.faces):
        for st in f.strips:
            parent[(k, st)] = (k, st)

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    problems = []
    table = _gluing_table(net)
    for k, f in enumerate(net.faces):
        for dd in _DIRS:
            g, m = table[(k, dd)]
            a, b = _edge(f, *dd)
            for st in _strips_across((a, b)):
                img = (g, m.strip(st))
                if img not in parent:
                    problems.append(f"strip {st} leaves face {k} but {img[1]} misses face {g}")
                    continue
                parent[find((k, st))] = find(img)
            for cell in _cells_across(a, b):
                mine = f.colours.get(cell)
                theirs = net.faces[g].colours.get(m.cell(cell))
                if mine is None or theirs is None:
                    problems.append(f"cell {cell} on the edge of face {k} has no partner on face {g}")
                elif theirs != mine ^ int(m.swaps):
                    problems.append(f"cell {cell} changes colour crossing from face {k} to face {g}")
    roots: Dict[Tuple[int, Strip], int] = {}
    label = {}
    for piece in sorted(parent):
        label[piece] = roots.setdefault(find(piece), len(roots))
    return label, problems


def verify_cube(net: CubeNet) -> CubeVerification:
    label, problems = cube_strands(net)
    n_strands = max(label.values()) + 1 if label else 0
    strands = [[] for _ in range(n_strands)]
    for piece, i in sorted(label.items()):
        strands[i].append(piece)

    symmetries = []
    perms = []
    for rho in cube_rotations():
        sigma = None
        ok = True
        image_of = {}
        for k, f in enumerate(net.faces):
            img_frame = Frame(_apply(rho, f.frame.n), _apply(rho, f.frame.r), _apply(rho, f.frame.u))
            g = net.face_by_normal(img_frame.n)
            m = _plane_map(f.centre, img_frame, net.faces[g].centre, net.faces[g].frame)
            for cell, col in f.colours.items():
                other = net.faces[g].colours.get(m.cell(cell))
                if other is None:
                    ok = False
                    break
                flip = other ^ col ^ int(m.swaps)
                if sigma is None:
                    sigma = flip
                elif flip != sigma:
                    ok = False
                    break
            if not ok:
                break
            for st in f.strips:
                image_of[(k, st)] = (g, m.strip(st))
        if not ok:
            continue
        perm = []
        for i, pieces in enumerate(strands):
            targets = {label.get(image_of[p]) for p in pieces}
            if len(targets) != 1 or None in targets:
                ok = False
                break
            perm.append(targets.pop())
        if not ok or sorted(perm) != list(range(n_strands)):
            continue
        symmetries.append((tuple(map(tuple, rho.tolist())), bool(sigma)))
        perms.append(tuple(perm))

    # orbits of strands under the symmetric rotations
    parent = list(range(n_strands))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for perm in perms:
        for i, j in enumerate(perm):
            parent[find(i)] = find(j)
    groups: Dict[int, List[int]] = {}
    for i in range(n_strands):
        groups.setdefault(find(i), []).append(i)
    orbits = tuple(tuple(g) for g in groups.values())

    involutions = [p for (rho, _), p in zip(symmetries, perms)
                   if np.array_equal(np.array(rho) @ np.array(rho), np.eye(3, dtype=int)) and not np.array_equal(np.array(rho), np.eye(3, dtype=int))]
    swapped = True
    for k, f in enumerate(net.faces):
        for kind, idx in f.strips:
            nb = (k, (kind, idx + 1))
            if nb not in label:
                continue
            a, b = label[(k, (kind, idx))], label[nb]
            if a == b:
                continue
            if not any(p[a] == b and p[b] == a for p in involutions):
                swapped = False
                problems.append(f"adjacent strands {a} and {b} are not swapped by a half-turn of the cube")
    return CubeVerification(
        consistent=not any("colour" in p or "misses" in p or "partner" in p for p in problems),
        strands=tuple(tuple(s) for s in strands),
        symmetries=tuple(symmetries),
        orbits=orbits,
        adjacent_pairs_swapped=swapped,
        problems=tuple(problems),
    )


def verify_cube_isonemal(net: CubeNet) -> bool:
    return verify_cube(net).isonemal
