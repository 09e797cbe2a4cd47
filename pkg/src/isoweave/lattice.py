"""Integer arithmetic of oblique square lattice units.

A level-1 unit is the square on the hypotenuse of a right triangle whose legs
(M, N) are of opposite parity and coprime.  Escribing a unit (drawing the
square through its corners' neighbours) doubles the area and maps the legs
(M, N) -> (M + N, M - N), so

    level 1: (M, N)          level 2: (M + N, M - N)
    level 3: (2M, 2N)        level 4: (2(M + N), 2(M - N))
    level 5: (4M, 4N)

Odd levels have a side vector (M, N); even levels are turned the other way
and have side (N, M).  A unit whose side vector is the mirror image of that
convention is stored normalised with ``reflected=True``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Optional, Tuple

Vec = Tuple[int, int]


class CentreSort(enum.Enum):
    CELL_CENTRE = "cell-centre"
    CELL_CORNER = "cell-corner"

    def opposite(self) -> "CentreSort":
        return CentreSort.CELL_CORNER if self is CentreSort.CELL_CENTRE else CentreSort.CELL_CENTRE


class LatticeError(ValueError):
    """A square that cannot be a lattice unit of an isonemal design."""


def rot90(v: Vec) -> Vec:
    return (-v[1], v[0])


def first_quadrant(v: Vec) -> Vec:
    """The rotation of ``v`` by a multiple of 90 degrees with x > 0, y >= 0."""
    a, b = v
    if (a, b) == (0, 0):
        raise LatticeError("zero vector")
    for _ in range(4):
        if a > 0 and b >= 0:
            return a, b
        a, b = -b, a
    raise AssertionError("unreachable")


def inscribe_legs(M: int, N: int) -> Tuple[int, int]:
    return (M + N) // 2, (M - N) // 2


def escribe_legs(M: int, N: int) -> Tuple[int, int]:
    return M + N, M - N


@dataclass(frozen=True)
class LatticeUnit:
    """An oblique square unit with legs M > N >= 1 at a given level."""

    M: int
    N: int
    level: int
    centre_sort: CentreSort = CentreSort.CELL_CORNER
    reflected: bool = False

    def __post_init__(self):
        M, N, level = self.M, self.N, self.level
        if not (M > N >= 1):
            raise LatticeError(f"legs must satisfy M > N >= 1, got ({M}, {N})")
        if not 1 <= level <= 5:
            raise LatticeError(f"level must be 1..5, got {level}")
        bM, bN = M, N
        for _ in range(level - 1):
            if (bM + bN) % 2:
                raise LatticeError(f"({M}, {N}) is not a level-{level} unit")
            bM, bN = inscribe_legs(bM, bN)
        if bN < 1 or (bM + bN) % 2 == 0:
            raise LatticeError(f"({M}, {N}) is not a level-{level} unit")
        if math.gcd(bM, bN) != 1:
            raise LatticeError(f"level-1 legs ({bM}, {bN}) share the factor {math.gcd(bM, bN)}")
        if level >= 3 and self.centre_sort is CentreSort.CELL_CENTRE:
            raise LatticeError("units of level 3 and above must be centred on cell corners")

    @property
    def area(self) -> int:
        return self.M ** 2 + self.N ** 2

    @property
    def base(self) -> Tuple[int, int]:
        """Legs (M1, N1) of the level-1 unit this unit is built on."""
        M, N = self.M, self.N
        for _ in range(self.level - 1):
            M, N = inscribe_legs(M, N)
        return M, N

    @property
    def corner_sort(self) -> CentreSort:
        return self.centre_sort.opposite() if self.level == 1 else self.centre_sort

    @property
    def isonemal_capable(self) -> bool:
        return self.level <= 4

    def vectors(self) -> Tuple[Vec, Vec]:
        """Side vectors (s, rot90(s)) of the unit in its drawn orientation."""
        native_odd = self.level % 2 == 1
        s = (self.M, self.N) if native_odd != self.reflected else (self.N, self.M)
        return s, rot90(s)


def level1_units_up_to(max_area: int) -> List[Tuple[int, int, int]]:
    """All admissible level-1 legs (M, N, M^2 + N^2) up to ``max_area``, by (area, M)."""
    out = []
    for M in range(2, math.isqrt(max_area) + 1):
        for N in range(1 + M % 2, M, 2):
            area = M * M + N * N
            if area <= max_area and math.gcd(M, N) == 1:
                out.append((M, N, area))
    return sorted(out, key=lambda t: (t[2], t[0]))


class ArrayEntry(NamedTuple):
    i: int
    j: int
    M: int
    N: int
    area: int
    admissible: bool


def sum_of_squares_array(size: int = 8) -> List[ArrayEntry]:
    """Upper-triangular array of odd sums M^2 + N^2 with M = i + j, N = j - i + 1.

    Entries with a common factor are kept but marked inadmissible.
    """
    out = []
    for i in range(1, size + 1):
        for j in range(i, size + 1):
            M, N = i + j, j - i + 1
            out.append(ArrayEntry(i, j, M, N, M * M + N * N, math.gcd(M, N) == 1))
    return out


def array_position(M: int, N: int) -> Tuple[int, int]:
    """Inverse of the array indexing: (i, j) holding legs (M, N)."""
    return (M - N + 1) // 2, (M + N - 1) // 2


def coprime_witness(M: int, N: int) -> Optional[Tuple[int, int]]:
    """(m, n) with m*M + n*N == 1, or None when gcd(M, N) > 1."""
    old_r, r = M, N
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r != 1:
        return None
    return old_s, old_t


def _split_level(p: int, q: int) -> Tuple[int, int, int]:
    """Level and level-1 legs (signed) for a first-quadrant side vector."""
    k = 0
    while p % 2 == 0 and q % 2 == 0:
        p, q, k = p // 2, q // 2, k + 1
    if (p + q) % 2:
        return 2 * k + 1, p, q
    return 2 * k + 2, (p + q) // 2, (q - p) // 2


def classify_square(v: Vec, corner_sort: CentreSort = CentreSort.CELL_CORNER) -> LatticeUnit:
    """Identify the unit whose side is ``v`` and whose corners are of ``corner_sort``.

    Raises LatticeError for sides on a forbidden line (axis-parallel or at 45
    degrees), for level-1 legs with a common factor, and for corner placements
    the level does not allow.  Level 5 is returned (flagged through
    ``isonemal_capable``); anything higher is rejected.
    """
    p, q = first_quadrant(v)
    if q == 0 or p == q:
        raise LatticeError(f"side {v} lies on a forbidden line")
    level, m1, n1 = _split_level(p, q)
    if math.gcd(m1, n1) != 1:
        raise LatticeError(f"side {v} is built on legs with common factor {math.gcd(m1, n1)}")
    if level > 5:
        raise LatticeError(f"side {v} gives a level-{level} unit")
    if level == 1:
        centre = corner_sort.opposite()
    else:
        centre = corner_sort
        if level >= 3 and corner_sort is CentreSort.CELL_CENTRE:
            raise LatticeError(f"level-{level} corners cannot lie at cell centres")
    reflected = (level % 2 == 1) != (p > q)
    return LatticeUnit(max(p, q), min(p, q), level, centre, reflected)


def escribe(u: LatticeUnit) -> LatticeUnit:
    """The next-level unit escribing ``u``; the centre stays put."""
    if u.level >= 5:
        raise LatticeError("level-5 units cannot be escribed")
    M, N = escribe_legs(u.M, u.N)
    return LatticeUnit(M, N, u.level + 1, u.centre_sort, u.reflected)


def inscribe(u: LatticeUnit) -> LatticeUnit:
    if u.level <= 1:
        raise LatticeError("level-1 units have no inscribed unit")
    M, N = inscribe_legs(u.M, u.N)
    return LatticeUnit(M, N, u.level - 1, u.centre_sort, u.reflected)


@dataclass(frozen=True)
class OrderDecomposition:
    n: int
    f: int
    p: int
    reps: Tuple[Tuple[int, int], ...]

    @property
    def has_designs(self) -> bool:
        return self.n > 4 and self.p <= 2 and bool(self.reps)


def decompose_order(n: int) -> OrderDecomposition:
    """Split n = f * 2**p (f odd) and list coprime leg pairs a > b >= 1 with a^2 + b^2 = f."""
    if n < 1:
        raise ValueError("order must be positive")
    p = (n & -n).bit_length() - 1
    f = n >> p
    reps = []
    for b in range(1, math.isqrt(f // 2) + 1):
        a2 = f - b * b
        a = math.isqrt(a2)
        if a * a == a2 and a > b and math.gcd(a, b) == 1:
            reps.append((a, b))
    reps.sort(reverse=True)
    return OrderDecomposition(n, f, p, tuple(reps))


def iter_table(max_area: int) -> Iterator[Tuple[int, int, int, bool, str]]:
    """Rows (area, M, N, admissible, reason) over all opposite-parity legs."""
    rows = []
    for M in range(2, math.isqrt(max_area) + 1):
        for N in range(1 + M % 2, M, 2):
            area = M * M + N * N
            if area > max_area:
                continue
            g = math.gcd(M, N)
            rows.append((area, M, N, g == 1, "" if g == 1 else f"common factor {g}"))
    yield from sorted(rows, key=lambda r: (r[0], r[1]))
