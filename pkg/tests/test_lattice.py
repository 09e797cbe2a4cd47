from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from isoweave.lattice import (
    CentreSort,
    LatticeError,
    LatticeUnit,
    array_position,
    classify_square,
    coprime_witness,
    decompose_order,
    escribe,
    inscribe,
    iter_table,
    level1_units_up_to,
    sum_of_squares_array,
)


class TestLevel1Units:
    def test_smallest(self):
        assert level1_units_up_to(17) == [(2, 1, 5), (3, 2, 13), (4, 1, 17)]

    def test_common_factor_three_excluded(self):
        assert all((M, N) != (6, 3) for M, N, _ in level1_units_up_to(400))

    def test_area_125(self):
        legs = {(M, N) for M, N, a in level1_units_up_to(125) if a == 125}
        assert legs == {(11, 2)}
        rows = {(M, N): ok for a, M, N, ok, _ in iter_table(125) if a == 125}
        assert rows == {(10, 5): False, (11, 2): True}

    def test_brute_force(self):
        want = sorted(((M, N, M * M + N * N) for M in range(1, 30) for N in range(1, M)
                       if (M + N) % 2 and math.gcd(M, N) == 1 and M * M + N * N <= 500),
                      key=lambda t: (t[2], t[0]))
        assert level1_units_up_to(500) == want


class TestArrays:
    def test_array_entries(self):
        entries = {(e.i, e.j): e for e in sum_of_squares_array(8)}
        assert len(entries) == 36
        assert (entries[1, 1].M, entries[1, 1].N) == (2, 1)
        assert entries[2, 3].area == 25 + 4
        removed = {(i, j) for (i, j), e in entries.items() if not e.admissible}
        assert removed == {(2, 4), (2, 7), (3, 7), (5, 7)}

    @given(st.integers(1, 30), st.integers(0, 30))
    def test_position_inverse(self, i, k):
        j = i + k
        assert array_position(i + j, j - i + 1) == (i, j)


class TestClassifySquare:
    def test_level1(self):
        u = classify_square((2, 1), CentreSort.CELL_CORNER)
        assert (u.level, u.base, u.area) == (1, (2, 1), 5)
        assert u.corner_sort is CentreSort.CELL_CORNER

    def test_level2(self):
        u = classify_square((3, 1))
        assert (u.level, u.base) == (2, (2, 1))

    def test_forbidden(self):
        for v in ((2, 2), (3, 0), (0, 5), (-4, 4)):
            with pytest.raises(LatticeError):
                classify_square(v)

    def test_level5_flagged(self):
        u = classify_square((8, 4))
        assert (u.level, u.base, u.isonemal_capable) == (5, (2, 1), False)

    def test_common_factor(self):
        with pytest.raises(LatticeError):
            classify_square((6, 3))

    def test_centre_sort_limits(self):
        with pytest.raises(LatticeError):
            classify_square((4, 2), CentreSort.CELL_CENTRE)

    @given(st.sampled_from([(2, 1), (3, 2), (4, 1), (5, 2), (4, 3), (6, 1)]), st.integers(1, 4),
           st.booleans(), st.integers(0, 3))
    def test_round_trip(self, legs, level, reflected, turns):
        u = LatticeUnit(*legs, level=1, reflected=reflected)
        for _ in range(level - 1):
            u = escribe(u)
        s, _ = u.vectors()
        for _ in range(turns):
            s = (-s[1], s[0])
        back = classify_square(s, u.corner_sort)
        assert back == u


class TestEscription:
    def test_chain(self):
        u = LatticeUnit(2, 1, 1)
        u2 = escribe(u)
        assert (u2.M, u2.N, u2.level) == (3, 1, 2)
        u3 = escribe(u2)
        assert (u3.M, u3.N, u3.level) == (4, 2, 3)
        u5 = escribe(escribe(u3))
        assert (u5.M, u5.N, u5.level) == (8, 4, 5)
        assert inscribe(u5) == escribe(u3)

    @given(st.sampled_from([(2, 1), (3, 2), (4, 1), (5, 2)]), st.integers(1, 4))
    def test_area_doubles(self, legs, level):
        u = LatticeUnit(*legs, 1)
        for _ in range(level - 1):
            u = escribe(u)
        assert escribe(u).area == 2 * u.area
        assert inscribe(escribe(u)) == u

    def test_limits(self):
        with pytest.raises(LatticeError):
            inscribe(LatticeUnit(2, 1, 1))
        with pytest.raises(LatticeError):
            escribe(LatticeUnit(8, 4, 5))
        with pytest.raises(LatticeError):
            LatticeUnit(3, 1, 1)


class TestCoprimeWitness:
    @pytest.mark.parametrize("M,N", [(2, 1), (11, 2), (8, 1), (7, 4), (13, 8)])
    def test_witness(self, M, N):
        m, n = coprime_witness(M, N)
        assert m * M + n * N == 1

    def test_none(self):
        assert coprime_witness(6, 3) is None


class TestDecomposeOrder:
    def test_known_examples(self):
        d = decompose_order(40)
        assert (d.f, d.p, d.has_designs) == (5, 3, False)
        d = decompose_order(20)
        assert (d.f, d.p, d.reps, d.has_designs) == (5, 2, ((2, 1),), True)
        d = decompose_order(15)
        assert (d.reps, d.has_designs) == ((), False)
        assert decompose_order(65).reps == ((8, 1), (7, 4))

    def test_small_orders(self):
        assert not decompose_order(4).has_designs
        assert decompose_order(5).has_designs
        with pytest.raises(ValueError):
            decompose_order(0)

    @given(st.integers(1, 3000))
    def test_reps_by_brute_force(self, n):
        d = decompose_order(n)
        assert d.f * 2 ** d.p == n and d.f % 2 == 1
        want = {(a, b) for a in range(1, 60) for b in range(1, a)
                if a * a + b * b == d.f and math.gcd(a, b) == 1}
        assert set(d.reps) == want


def test_table_rows():
    rows = list(iter_table(50))
    assert rows[0] == (5, 2, 1, True, "")
    assert (45, 6, 3, False, "common factor 3") in rows
    assert all(a <= 50 and (M + N) % 2 for a, M, N, _, _ in rows)
