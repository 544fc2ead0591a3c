import pytest

from hadpart import (
    Reason,
    ZeroDimension,
    partition_feasible,
    verify_partition_full,
    verify_partition_sampled,
)


class TestExamples:
    def test_power_of_two(self):
        v = partition_feasible(8)
        assert v.feasible
        assert v.reason is Reason.POWER_OF_TWO
        assert v.residue is None

    def test_twelve(self):
        v = partition_feasible(12)
        assert not v.feasible
        assert v.reason is Reason.DIVISIBILITY_FAILS
        assert v.residue == 8  # 2048 = 170 * 12 + 8
        assert v.note is None

    def test_two(self):
        assert partition_feasible(2).feasible

    def test_one(self):
        assert partition_feasible(1).feasible


class TestTable:
    def test_full_range_to_1024(self):
        for m in range(1, 1025):
            v = partition_feasible(m)
            assert v.feasible == (m & (m - 1) == 0)
            if not v.feasible:
                assert v.residue != 0

    def test_residue_against_big_integer_division(self):
        for m in range(1, 65):
            v = partition_feasible(m)
            if not v.feasible:
                assert v.residue == (1 << (m - 1)) % m

    def test_odd_annotation(self):
        for m in (3, 5, 7, 9, 15, 63):
            v = partition_feasible(m)
            assert v.note is Reason.ODD_DIMENSION_MAX_TWO_ORTHOGONAL
        for m in (6, 12, 20, 48):
            assert partition_feasible(m).note is None


class TestErrors:
    @pytest.mark.parametrize("m", [0, -1, -8])
    def test_zero_dimension(self, m):
        with pytest.raises(ZeroDimension):
            partition_feasible(m)


class TestConsistencyWithConstruction:
    def test_feasible_dimensions_verify(self):
        # full verification up to m=16, sampled spot check at m=32
        for n in (0, 1, 2, 3, 4):
            m = 1 << n
            assert partition_feasible(m).feasible
            assert verify_partition_full(n).passed
        assert partition_feasible(32).feasible
        assert verify_partition_sampled(5, 200, seed=7).passed
