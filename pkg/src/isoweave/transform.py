"""Doubling and halving of designs.

Doubling replaces every strand by two adjacent strands that behave alike;
halving keeps every other strand in each direction.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .grid import Design, HalfPoint, QuarterTurn, Translation, is_symmetry
from .lattice import rot90
from .symmetry import Species, SpeciesReport, classify, shortest_vector, survey

DOUBLING_MAP: Dict[Species, Species] = {
    Species.S34: Species.S33_4,
    Species.S36_1: Species.S35_3,
    Species.S36_2: Species.S35_4,
    Species.S36_S: Species.S35_4,
    Species.S39: Species.S38,
}

HALVABLE = frozenset({Species.S36_1, Species.S36_S, Species.S39})


class PreconditionError(ValueError):
    """A theorem check applied outside its hypotheses."""


def double(d: Design) -> Design:
    return Design(np.repeat(np.repeat(d.cells, 2, axis=0), 2, axis=1), d.label and f"{d.label} doubled")


def halve(d: Design, offset: Tuple[int, int] = (0, 0)) -> Design:
    """Keep strands x = a, y = b (mod 2): d'(x, y) = d(2x + a, 2y + b)."""
    a, b = offset
    if a not in (0, 1) or b not in (0, 1):
        raise ValueError("offsets must be 0 or 1")
    if d.torus_side % 2:
        raise ValueError(f"cannot halve a design on an odd torus (T={d.torus_side})")
    return Design(d.cells[a::2, b::2])


def check_doublable(r: SpeciesReport) -> Tuple[bool, Optional[Species]]:
    """Whether the doubled design is again isonemal, with its species."""
    image = DOUBLING_MAP.get(r.species)
    return image is not None, image


@dataclass(frozen=True)
class HalvingCheck:
    offset: Tuple[int, int]
    halved: Design
    centre: HalfPoint
    generators: Tuple
    contains: bool


def _level1_vector(side: Tuple[int, int], level: int) -> Tuple[int, int]:
    if level == 1:
        return side
    r = rot90(side)
    return (side[0] - r[0]) // 2, (side[1] - r[1]) // 2


def check_halving_theorem(d: Design) -> List[HalvingCheck]:
    """For each of the four halvings, whether its group contains a group of
    type 36_1 built on the level-1 unit of ``d``.

    The quarter-turn of that group is a filled one at the centre of a kept
    cell; its translations are the level-1 vectors, which come from the
    doubled (level-3) vectors of ``d``.
    """
    r = classify(d)
    if r.species not in HALVABLE:
        raise PreconditionError(f"halving theorem needs species 36_1, 36s or 39, not {r.species}")
    work = d if d.torus_side % 2 == 0 else d.tiled(2)
    s = survey(work)
    u = _level1_vector(shortest_vector(s.g1_translations), r.level)
    w = rot90(u)
    T = work.torus_side
    filled = [c for c, tau in s.quarter_centers if tau and c.parity == "centre"]
    # every translate of a listed centre by the side-preserving lattice
    (a1, _), (x0, c1) = s.translations
    out = []
    for a in (0, 1):
        for b in (0, 1):
            centre = None
            for c in filled:
                for i in range(2 * T // a1 + 2):
                    for j in range(2 * T // c1 + 2):
                        dx = c.dx + 2 * (i * a1 + j * x0)
                        dy = c.dy + 2 * j * c1
                        X, Y = (dx - 1) // 2, (dy - 1) // 2
                        if X % 2 == a and Y % 2 == b:
                            centre = HalfPoint(X - a + 1, Y - b + 1)
                            break
                    if centre:
                        break
                if centre:
                    break
            h = halve(work, (a, b))
            if centre is None:
                out.append(HalvingCheck((a, b), h, HalfPoint(1, 1), (), False))
                continue
            gens = (Translation(*u), Translation(*w), QuarterTurn(centre, 1, tau=True))
            out.append(HalvingCheck((a, b), h, centre, gens, all(is_symmetry(h, g) for g in gens)))
    return out
