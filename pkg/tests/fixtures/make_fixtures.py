"""Regenerate the design fixtures in this directory.

The catalogue designs cannot be read off pictures here, so each one is pinned
down from enumeration plus properties it is known to have:

* 10-93-1: the only species-39 design of order 10.
* 10-107-1, 10-27-1: the only order-10 designs of species 34 and 36_2.
* 10-85-1: the species-36s design of order 10 obtained from 10-93-1 by
  darkening the fewest cells (the centres of its dark crosses).
* fig13a: 10-85-1 doubled.
* 20-19437: a species-38 design obtained from fig13a by turning dark cells
  pale, closest to it in Hamming distance.
* fig13b: the species-33_4 design nearest to 20-19437.
* 20-3391: the first species-37 design (in canonical order) that hangs together.
* 13-45-1, 10-39-1, 10-55-2: the first design of the right species and order.
* 4-1-2*: the unique (up to symmetry and mirror image) 4x4 design with a quarter-turn, no
  mirror, transitive on strands, of order 4, that falls apart.
* fig16b: the first species-39 design of order 26.

Run ``python3 tests/fixtures/make_fixtures.py`` from the repository root.
"""
from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

from isoweave.construct import canonical_form, enumerate_designs, falls_apart
from isoweave.grid import Design, HalfPoint, HalfTurn, QuarterTurn, Translation, plain_weave, transform_design
from isoweave.io import save_design
from isoweave.symmetry import Species, smallest_axis_period, strand_orbits, survey
from isoweave.transform import double

HERE = Path(__file__).resolve().parent


def images(d: Design):
    """All images of d under translations, rotations and complement."""
    cur = d
    for _ in range(4):
        for c in (cur.cells, cur.cells ^ 1):
            for a in range(d.torus_side):
                for b in range(d.torus_side):
                    yield np.roll(np.roll(c, a, 0), b, 1)
        cur = transform_design(cur, QuarterTurn(HalfPoint(0, 0)))


def first(enum, species):
    return next(d for d, r in zip(enum.designs, enum.reports) if r.species == species)


def pick(enum, species):
    return [d for d, r in zip(enum.designs, enum.reports) if r.species == species]


def houndstooth() -> Design:
    found = {}
    for bits in range(1 << 16):
        cells = np.array([(bits >> k) & 1 for k in range(16)], dtype=np.uint8).reshape(4, 4)
        d = Design(cells)
        s = survey(d)
        if not s.quarter_centers or s.has_reflection_or_glide or smallest_axis_period(s.translations) != 4:
            continue
        gens = [Translation(*s.g1_translations[0]), Translation(*s.g1_translations[1])]
        gens += [QuarterTurn(c, 1, tau) for c, tau in s.quarter_centers]
        gens += [HalfTurn(c, tau) for c, tau in s.half_centers]
        if len(set(strand_orbits(4, gens))) != 1 or not falls_apart(d).verdict:
            continue
        found.setdefault(canonical_form(d, reflections=True), d)
    if len(found) != 1:
        sys.exit(f"expected one houndstooth class, found {len(found)}")
    return next(iter(found.values()))


def main():
    e5, e10, e13 = enumerate_designs(5), enumerate_designs(10), enumerate_designs(13)
    e20 = enumerate_designs(20)
    e26 = enumerate_designs(26, species_filter=[Species.S39])
    out = {}
    out["satin-5"] = first(e5, Species.S36_1)
    out["plain"] = plain_weave()
    out["box-weave"] = double(plain_weave())
    out["10-93-1"] = first(e10, Species.S39)
    out["10-107-1"] = first(e10, Species.S34)
    out["10-27-1"] = first(e10, Species.S36_2)
    out["10-39-1"] = first(e10, Species.S35_3)
    out["10-55-2"] = first(e10, Species.S33_3)
    out["13-45-1"] = first(e13, Species.S36_1)

    base = out["10-93-1"].cells
    cand = []
    for d in pick(e10, Species.S36_S):
        for img in images(d):
            if np.all(img >= base):
                cand.append((int((img != base).sum()), Design(img)))
                break
    if not cand:
        sys.exit("no 36s design lies over 10-93-1")
    # fewest added dark cells: only the cross centres change
    out["10-85-1"] = min(cand, key=lambda t: t[0])[1]
    out["fig13a"] = double(out["10-85-1"])

    big = out["fig13a"].cells
    best = None
    for d in pick(e20, Species.S38):
        for img in images(d):
            if np.all(img <= big):
                dist = int((big != img).sum())
                if best is None or dist < best[0]:
                    best = (dist, Design(img))
    if best is None:
        sys.exit("no species-38 design lies under fig13a")
    out["20-19437"] = best[1]

    ref = out["20-19437"].cells
    best = None
    for d in pick(e20, Species.S33_4):
        for img in images(d):
            dist = int((ref != img).sum())
            if best is None or dist < best[0]:
                best = (dist, Design(img))
    out["fig13b"] = best[1]
    out["20-3391"] = next(d for d, r, a in zip(e20.designs, e20.reports, e20.falls_apart)
                          if r.species == Species.S37 and not a)
    out["fig16b"] = first(e26, Species.S39)
    out["4-1-2*"] = houndstooth()

    for name, d in out.items():
        save_design(d.with_label(name), HERE / f"{name}.txt")
        print(name, d.torus_side)


if __name__ == "__main__":
    main()
