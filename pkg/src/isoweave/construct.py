"""Symmetry groups of the species, their cell orbits, and exhaustive enumeration.

A group is fixed by its species and level-1 seed (M, N).  With u = (M, N) and
w = (-N, M) the translation lattice of G1 is spanned by u, w at level 1,
u + w, w - u at level 2, and twice those at levels 3 and 4.  The quarter-turn
at the unit centre, a translation and one mid-side half-turn (with their tau
flags) generate the whole group.
"""
from __future__ import annotations

import hashlib
import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .grid import (
    Design,
    HalfPoint,
    HalfTurn,
    Isometry,
    QuarterTurn,
    Translation,
    affine,
    complement,
    expected_complement,
    map_cell,
    transform_design,
)
from .lattice import LatticeError, LatticeUnit, decompose_order
from .symmetry import FAMILIES, MIRROR_FAMILIES, TABLE, Rejection, Species, SpeciesReport, classify, family_matches

Vec = Tuple[int, int]


class GroupError(ValueError):
    """Species and seed that do not make a group."""


@dataclass(frozen=True)
class Placement:
    level: int
    cell_centred: bool
    centre_tau: bool
    corner_tau: bool
    tau_translations: bool


# placements of the quarter-turns (tau means the marker is filled) per species
PLACEMENTS: Dict[Species, Placement] = {
    Species.S36_1: Placement(1, True, True, True, False),
    Species.S39: Placement(1, True, True, False, True),
    Species.S34: Placement(2, False, False, False, False),
    Species.S36_2: Placement(2, False, True, True, False),
    Species.S36_S: Placement(2, True, True, True, False),
    Species.S33_3: Placement(3, False, False, False, False),
    Species.S35_3: Placement(3, False, True, True, False),
    Species.S38: Placement(3, False, False, True, True),
    Species.S33_4: Placement(4, False, False, False, False),
    Species.S35_4: Placement(4, False, True, True, False),
    Species.S37: Placement(4, False, False, True, True),
}

SPECIES_BY_POWER: Dict[int, Tuple[Species, ...]] = {
    0: (Species.S36_1,),
    1: (Species.S39, Species.S34, Species.S36_2, Species.S36_S, Species.S33_3, Species.S35_3),
    2: (Species.S38, Species.S33_4, Species.S35_4, Species.S37),
}


def g1_vectors(seed: Vec, level: int) -> Tuple[Vec, Vec]:
    M, N = seed
    u, w = (M, N), (-N, M)
    if level in (2, 4):
        u, w = (u[0] + w[0], u[1] + w[1]), (w[0] - u[0], w[1] - u[1])
    k = 2 if level >= 3 else 1
    return (k * u[0], k * u[1]), (k * w[0], k * w[1])


@dataclass(frozen=True)
class GroupSpec:
    """A constructed symmetry group acting on a torus of side ``torus_side``.

    ``placement`` maps ``centre``/``corner`` to the quarter-turn marker
    (``□`` or ``■``) and ``mid-side`` to ``half-turn`` or ``tau-half-turn``.
    """

    species: Species
    seed: Vec
    torus_side: int
    generators: Tuple[Isometry, ...]
    placement: Dict[str, str]
    translation_basis: Tuple[Vec, Vec]
    centre: HalfPoint
    corner: HalfPoint
    mid_side: HalfPoint

    @property
    def level(self) -> int:
        return PLACEMENTS[self.species].level

    @property
    def g1_unit(self) -> LatticeUnit:
        s = first_quadrant_side(self.translation_basis[0])
        return LatticeUnit(max(s), min(s), self.level)


def first_quadrant_side(v: Vec) -> Vec:
    a, b = v
    while not (a > 0 and b >= 0):
        a, b = -b, a
    return a, b


def _h1_contains(v: Vec, basis: Tuple[Vec, Vec], tau: bool) -> bool:
    (a, b), (c, d) = basis
    det = a * d - b * c
    x = v[0] * d - v[1] * c
    y = a * v[1] - b * v[0]
    if x % det or y % det:
        return False
    return not tau or (x // det + y // det) % 2 == 0


def build_group(species: Species, seed: Vec) -> GroupSpec:
    species = Species(species)
    M, N = seed
    try:
        LatticeUnit(M, N, 1)
    except LatticeError as exc:
        raise GroupError(f"seed {seed} is not a level-1 unit: {exc}") from None
    pl = PLACEMENTS[species]
    g1, g2 = g1_vectors(seed, pl.level)
    O = HalfPoint(1, 1) if pl.cell_centred else HalfPoint(0, 0)
    corner = HalfPoint(O.dx + g1[0] + g2[0], O.dy + g1[1] + g2[1])
    mid = HalfPoint(O.dx + g1[0], O.dy + g1[1])
    f = M * M + N * N
    side = next(s for s in range(1, 16 * f + 1)
                if _h1_contains((s, 0), (g1, g2), pl.tau_translations)
                and _h1_contains((0, s), (g1, g2), pl.tau_translations))
    if side != TABLE[species].order * f:
        raise GroupError(f"{species}: torus side {side} disagrees with order {TABLE[species].order * f}")
    gens = (
        Translation(*g1, tau=pl.tau_translations),
        Translation(*g2, tau=pl.tau_translations),
        QuarterTurn(O, 1, tau=pl.centre_tau),
        HalfTurn(mid, tau=pl.tau_translations),
    )
    mark = {True: "■", False: "□"}
    placement = {
        "centre": mark[pl.centre_tau],
        "corner": mark[pl.corner_tau],
        "mid-side": "tau-half-turn" if pl.tau_translations else "half-turn",
    }
    return GroupSpec(species, (M, N), side, gens, placement, (g1, g2), O, corner, mid)


@dataclass(frozen=True)
class OrbitPartition:
    orbit_id: np.ndarray
    parity: np.ndarray
    contradiction: bool

    @property
    def count(self) -> int:
        return int(self.orbit_id.max()) + 1

    def sizes(self) -> List[int]:
        return np.bincount(self.orbit_id.ravel()).tolist()

    def colour(self, bits: Sequence[int]) -> np.ndarray:
        """Cell matrix with orbit i's representative coloured bits[i]."""
        return (np.asarray(bits, dtype=np.uint8)[self.orbit_id] ^ self.parity).astype(np.uint8)


def cell_orbits(g: GroupSpec) -> OrbitPartition:
    """Union-find with parity over the torus cells under the generators."""
    T = g.torus_side
    n = T * T
    parent = list(range(n))
    rel = [0] * n  # parity relative to parent
    contradiction = False

    def find(i):
        path = []
        while parent[i] != i:
            path.append(i)
            i = parent[i]
        # compress, accumulating parity from the root down
        acc = 0
        for j in reversed(path):
            acc ^= rel[j]
            rel[j] = acc
            parent[j] = i
        return i

    def parity_of(i):
        find(i)
        return rel[i] if parent[i] != i else 0

    for iso in g.generators:
        flip = int(expected_complement(iso))
        A, b = affine(iso)
        for x in range(T):
            for y in range(T):
                ix, iy = A @ (x, y) + b
                i, j = x * T + y, int(ix % T) * T + int(iy % T)
                ri, rj = find(i), find(j)
                pi, pj = parity_of(i), parity_of(j)
                if ri == rj:
                    if pi ^ pj != flip:
                        contradiction = True
                    continue
                parent[rj] = ri
                rel[rj] = pi ^ pj ^ flip
    roots: Dict[int, int] = {}
    orbit = np.empty(n, dtype=np.int64)
    par = np.empty(n, dtype=np.uint8)
    for i in range(n):
        r = find(i)
        orbit[i] = roots.setdefault(r, len(roots))
        par[i] = parity_of(i)
    # parity relative to the first cell of each orbit
    first_par = {}
    for i in range(n):
        first_par.setdefault(orbit[i], par[i])
        par[i] ^= first_par[orbit[i]]
    return OrbitPartition(orbit.reshape(T, T), par.reshape(T, T), contradiction)


# canonical forms -----------------------------------------------------------

_QUARTER = QuarterTurn(HalfPoint(0, 0))


def _variants(d: Design) -> List[np.ndarray]:
    """The four rotations of ``d`` and their complements."""
    out = []
    cur = d
    for _ in range(4):
        out.append(cur.cells)
        out.append(cur.cells ^ np.uint8(1))
        cur = transform_design(cur, _QUARTER)
    return out


def _min_translate(cells: np.ndarray) -> bytes:
    """Least flattened cell matrix over all torus translations.

    Each shifted column is packed into an integer whose order is the
    lexicographic one; candidate shifts are narrowed a column at a time.
    """
    T = cells.shape[0]
    weights = np.array([1 << (T - 1 - k) for k in range(T)], dtype=object if T > 62 else np.int64)
    vx, vy = np.meshgrid(np.arange(T), np.arange(T), indexing="ij")
    vx, vy = vx.ravel(), vy.ravel()
    ys = np.arange(T)
    best = []
    for x in range(T):
        cols = cells[((x + vx) % T)[:, None], (ys[None, :] + vy[:, None]) % T]
        keys = cols.astype(weights.dtype) @ weights
        keep = keys == keys.min()
        best.append(cols[int(np.argmax(keep))])
        vx, vy = vx[keep], vy[keep]
    return np.concatenate(best).tobytes()


def canonical_form(d: Design, reflections: bool = False) -> bytes:
    """Lexicographically least cell matrix over translations, rotations,
    complement and (optionally) mirror images."""
    key = min(_min_translate(c) for c in _variants(d))
    if reflections:
        key = min(key, canonical_form(Design(d.cells[::-1, :])))
    return key


def design_id(d: Design) -> str:
    return hashlib.sha256(f"{d.torus_side}:".encode() + canonical_form(d)).hexdigest()[:16]


# falling apart -------------------------------------------------------------

@dataclass(frozen=True)
class FallApart:
    verdict: bool
    witness: Optional[FrozenSet[Tuple[str, int]]] = None


def _strand_name(i: int, T: int) -> Tuple[str, int]:
    return ("warp", i) if i < T else ("weft", i - T)


def falls_apart(d: Design) -> FallApart:
    """Whether some proper set of strands lies entirely on top of the rest.

    Edges run from the upper strand to the lower one at every crossing; the
    design hangs together iff this digraph is strongly connected.  The
    witness is a set of strands closed under "lies above", liftable as a layer.
    """
    T = d.torus_side
    c = d.cells.astype(bool)
    succ = [set() for _ in range(2 * T)]
    pred = [set() for _ in range(2 * T)]
    for x in range(T):
        for y in range(T):
            top, bottom = (x, T + y) if c[x, y] else (T + y, x)
            succ[top].add(bottom)
            pred[bottom].add(top)

    def reach(adj):
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return seen

    below = reach(succ)
    if len(below) < 2 * T:
        top = set(range(2 * T)) - below
    else:
        top = reach(pred)
        if len(top) == 2 * T:
            return FallApart(False)
    return FallApart(True, frozenset(_strand_name(i, T) for i in top))


def is_top_set(d: Design, warps: Iterable[int], wefts: Iterable[int]) -> bool:
    """Whether no strand outside the set passes over a strand inside it."""
    T = d.torus_side
    W = np.zeros(T, dtype=bool)
    F = np.zeros(T, dtype=bool)
    W[list(warps)] = True
    F[list(wefts)] = True
    c = d.cells.astype(bool)
    # warp x over weft y with weft in the set and warp outside
    if np.any(c & ~W[:, None] & F[None, :]):
        return False
    return not np.any(~c & W[:, None] & ~F[None, :])


# enumeration ---------------------------------------------------------------

@dataclass(frozen=True)
class Enumeration:
    order: int
    designs: Tuple[Design, ...]
    reports: Tuple[SpeciesReport, ...]
    handed_count: int
    reflection_count: int
    falling_apart_excluded: int
    notice: str = ""
    falls_apart: Tuple[bool, ...] = ()
    contradictions: Tuple[Tuple[str, Vec], ...] = ()

    def __iter__(self):
        return iter(self.designs)

    def __len__(self):
        return len(self.designs)

    def by_species(self) -> Dict[Species, int]:
        out: Dict[Species, int] = {}
        for r in self.reports:
            out[r.species] = out.get(r.species, 0) + 1
        return out


def _has_overgroup(cells: np.ndarray, n_plain: int, n_all: int) -> bool:
    """Cheap test for symmetries beyond a known group: any further
    translation, or any mirror or glide.  Extra rotations of a p4 group
    always bring extra translations with them."""
    same, flipped = family_matches(cells, *FAMILIES["translation"])
    if int(same.sum()) != n_plain or int(same.sum() + flipped.sum()) != n_all:
        return True
    for name in MIRROR_FAMILIES:
        s, fl = family_matches(cells, *FAMILIES[name])
        if s.any() or fl.any():
            return True
    return False


def designs_of_group(g: GroupSpec, part: Optional[OrbitPartition] = None) -> List[Tuple[Design, SpeciesReport]]:
    """Every colouring of the group's orbits whose full group is exactly ``g``."""
    part = part or cell_orbits(g)
    if part.contradiction:
        return []
    T = g.torus_side
    f = g.seed[0] ** 2 + g.seed[1] ** 2
    n_all = T * T // (TABLE[g.species].g1_area * f)
    n_plain = T * T // (TABLE[g.species].h1_area * f)
    out = []
    for bits in itertools.product((0, 1), repeat=part.count):
        cells = part.colour(bits)
        if _has_overgroup(cells, n_plain, n_all):
            continue
        d = Design(cells)
        try:
            r = classify(d)
        except Rejection:
            continue
        if r.species == g.species and r.seed == g.seed and r.order == g.torus_side and not r.reflected_handedness:
            out.append((d, r))
    return out


def enumerate_designs(
    order: int,
    species_filter: Optional[Iterable[Species]] = None,
    include_falling_apart: bool = False,
) -> Enumeration:
    """All isonemal designs of ``order`` with quarter-turn symmetry, one per
    class under translation, rotation and side reversal.  Only the right-handed
    member of each mirror pair is produced."""
    dec = decompose_order(order)
    if order <= 4:
        return Enumeration(order, (), (), 0, 0, 0, notice="orders up to 4 have conformed lattice units; none listed")
    if dec.p > 2 or not dec.reps:
        return Enumeration(order, (), (), 0, 0, 0, notice=f"no designs of order {order} have quarter-turn symmetry")
    wanted = None if species_filter is None else {Species(s) for s in species_filter}
    seen: Dict[bytes, Tuple[Design, SpeciesReport]] = {}
    contradictions = []
    excluded = 0
    for seed in dec.reps:
        for sp in SPECIES_BY_POWER[dec.p]:
            if wanted is not None and sp not in wanted:
                continue
            g = build_group(sp, seed)
            part = cell_orbits(g)
            if part.contradiction:
                contradictions.append((sp.value, seed))
                continue
            for d, r in designs_of_group(g, part):
                key = canonical_form(d)
                if key in seen:
                    continue
                apart = falls_apart(d).verdict
                if apart and not include_falling_apart:
                    excluded += 1
                    seen[key] = None
                    continue
                seen[key] = (d, r, key, apart)
    kept = [v for v in seen.values() if v is not None]
    kept.sort(key=lambda drk: (list(Species).index(drk[1].species), drk[1].seed, drk[2]))
    designs, reports, apart_flags = [], [], []
    handed = 0
    counter: Dict[Species, int] = {}
    for d, r, key, apart in kept:
        counter[r.species] = counter.get(r.species, 0) + 1
        designs.append(d.with_label(f"{order}-{r.species.value}-{counter[r.species]}"))
        reports.append(r)
        apart_flags.append(apart)
        # a mirror image is a separate handed class unless it is the same design
        handed += 1 if canonical_form(Design(d.cells[::-1, :])) == key else 2
    return Enumeration(
        order,
        tuple(designs),
        tuple(reports),
        handed_count=handed,
        reflection_count=len(designs),
        falling_apart_excluded=excluded,
        falls_apart=tuple(apart_flags),
        contradictions=tuple(contradictions),
    )
