import random

import pytest

from hadpart import (
    Dimension,
    DimensionMismatch,
    HadamardMatrix,
    IndexOutOfRange,
    LevelTooLargeForFlatIndex,
    LevelTooLargeForFullIteration,
    NegativeLevel,
    PartitionAddress,
    ShiftOutOfRange,
    base_partition,
    count_exponent,
    decode_address,
    double_matrix,
    encode_address,
    enumerate_canonical,
    family_size,
    iter_partition,
    matrix_by_address,
    pair_matrices,
    shift_matrix,
    split_halves,
)

from conftest import gram_is_orthogonal, slow

A_ROWS = ("++++", "++--", "+-+-", "+--+")
B_ROWS = ("+++-", "++-+", "+-++", "+---")


def rows_of(matrix):
    return tuple(str(v) for v in matrix.rows)


class TestBasePartition:
    def test_exact_rows(self):
        a, b = base_partition()
        assert rows_of(a) == A_ROWS
        assert rows_of(b) == B_ROWS

    def test_single_rows(self):
        a, b = base_partition()
        assert str(a.row(0)) == "++++"
        assert str(b.row(2)) == "+-++"

    def test_rows_cover_all_canonicals(self):
        a, b = base_partition()
        union = {v.bits for v in a.rows} | {v.bits for v in b.rows}
        assert union == {c.bits for c in enumerate_canonical(Dimension(2))}

    def test_both_orthogonal(self):
        for matrix in base_partition():
            assert gram_is_orthogonal(matrix)


class TestShift:
    def test_zero_is_identity(self):
        a = base_partition()[0]
        assert shift_matrix(a, 0) == a

    def test_shift_one(self):
        a = base_partition()[0]
        assert rows_of(shift_matrix(a, 1)) == ("+--+", "++++", "++--", "+-+-")

    def test_full_cycle_is_identity(self):
        # the k = m case of the cyclic action, reached by composing steps
        a = base_partition()[0]
        out = a
        for _ in range(4):
            out = shift_matrix(out, 1)
        assert out == a

    @pytest.mark.parametrize("k", [-1, 4, 5])
    def test_out_of_range(self, k):
        with pytest.raises(ShiftOutOfRange):
            shift_matrix(base_partition()[0], k)


class TestPair:
    def test_identity_shift(self):
        a = base_partition()[0]
        pair = pair_matrices(a, a, 0)
        assert pair.left == a and pair.right == a

    def test_row_pairing_with_shift_one(self):
        a, b = base_partition()
        pair = pair_matrices(a, b, 1)
        # row 0 of the strip joins A row 0 with B row (0-1) mod 4 = 3
        assert str(pair.left.row(0)) + str(pair.right.row(0)) == "+++++---"

    def test_right_halves_sweep_all_shifts(self):
        a, b = base_partition()
        rights = [pair_matrices(a, b, k).right for k in range(4)]
        assert {tuple(m.row_bits()) for m in rights} == {
            tuple(shift_matrix(b, k).row_bits()) for k in range(4)
        }
        for m in rights:
            assert gram_is_orthogonal(m)

    def test_dimension_mismatch(self):
        a = base_partition()[0]
        h2 = HadamardMatrix.from_strings(("++", "+-"))
        with pytest.raises(DimensionMismatch):
            pair_matrices(a, h2, 0)


class TestDouble:
    def test_h2_shift0_gives_row_set_of_a(self):
        h2 = HadamardMatrix.from_strings(("++", "+-"))
        out = double_matrix(pair_matrices(h2, h2, 0))
        assert rows_of(out) == ("++++", "+-+-", "++--", "+--+")
        assert {str(v) for v in out.rows} == set(A_ROWS)

    def test_h2_shift1_gives_row_set_of_b(self):
        h2 = HadamardMatrix.from_strings(("++", "+-"))
        out = double_matrix(pair_matrices(h2, h2, 1))
        assert {str(v) for v in out.rows} == set(B_ROWS)

    def test_top_and_bottom_rows_are_orthogonal(self):
        from hadpart import inner_product

        a, b = base_partition()
        out = double_matrix(pair_matrices(a, b, 2))
        for r in range(4):
            assert inner_product(out.row(r), out.row(4 + r)) == 0

    def test_doubles_are_orthogonal(self):
        a, b = base_partition()
        for k in range(4):
            assert gram_is_orthogonal(double_matrix(pair_matrices(a, b, k)))


class TestCounting:
    @pytest.mark.parametrize("n,e", [(2, 1), (3, 4), (4, 11)])
    def test_examples(self, n, e):
        assert count_exponent(n) == e
        assert family_size(n) == 1 << e

    def test_recurrence(self):
        for n in range(2, 21):
            assert count_exponent(n + 1) == 2 * count_exponent(n) + n

    def test_negative_level(self):
        with pytest.raises(NegativeLevel):
            count_exponent(-1)


class TestAddressCodec:
    def test_zero_index(self):
        addr = decode_address(3, 0)
        assert (addr.i.base, addr.j.base, addr.k) == (0, 0, 0)

    def test_fifteen(self):
        # 15 = (1*2 + 1)*4 + 3
        addr = decode_address(3, 15)
        assert (addr.i.base, addr.j.base, addr.k) == (1, 1, 3)
        assert encode_address(addr) == 15

    def test_level4_top(self):
        # 2047 = (15*16 + 15)*8 + 7
        addr = decode_address(4, 2047)
        assert addr.i.to_flat() == 15
        assert addr.j.to_flat() == 15
        assert addr.k == 7
        assert addr.to_flat() == 2047

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_round_trip_exhaustive(self, n):
        for flat in range(family_size(n)):
            assert encode_address(decode_address(n, flat)) == flat

    @pytest.mark.parametrize("n", [5, 6])
    def test_round_trip_random(self, n):
        rnd = random.Random(n)
        size = family_size(n)
        for _ in range(100_000):
            flat = rnd.randrange(size)
            assert encode_address(decode_address(n, flat)) == flat

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            decode_address(3, 16)
        with pytest.raises(IndexOutOfRange):
            decode_address(3, -1)

    def test_level_cap(self):
        with pytest.raises(LevelTooLargeForFlatIndex):
            decode_address(7, 0)
        addr7 = PartitionAddress(
            level=7, i=decode_address(6, 0), j=decode_address(6, 0), k=0
        )
        with pytest.raises(LevelTooLargeForFlatIndex):
            encode_address(addr7)

    def test_address_validation(self):
        with pytest.raises(IndexOutOfRange):
            PartitionAddress(level=2, base=2)
        with pytest.raises(ShiftOutOfRange):
            PartitionAddress(
                level=3, i=decode_address(2, 0), j=decode_address(2, 0), k=4
            )
        with pytest.raises(IndexOutOfRange):
            PartitionAddress(
                level=4, i=decode_address(2, 0), j=decode_address(3, 0), k=0
            )


class TestMatrixByAddress:
    def test_base_addresses(self):
        a, b = base_partition()
        assert matrix_by_address(decode_address(2, 0)) == a
        assert matrix_by_address(decode_address(2, 1)) == b

    def test_level3_flat0_structure(self):
        a = base_partition()[0]
        out = matrix_by_address(decode_address(3, 0))
        assert str(out.row(0)) == "++++++++"
        for r in range(4):
            assert str(out.row(r)) == str(a.row(r)) + str(a.row(r))
            assert str(out.row(4 + r)) == str(a.row(r)) + str(-a.row(r))

    def test_level3_all_orthogonal(self):
        for flat in range(16):
            assert gram_is_orthogonal(matrix_by_address(decode_address(3, flat)))

    def test_deterministic(self):
        addr = decode_address(5, 12_345_678)
        assert matrix_by_address(addr) == matrix_by_address(addr)

    def test_level7_hierarchical_build(self):
        # beyond the flat cap, structured addresses still work
        base = decode_address(6, 0)
        addr = PartitionAddress(level=7, i=base, j=base, k=5)
        matrix = matrix_by_address(addr)
        assert matrix.dim.m == 128
        assert all(v.bits & 1 == 0 for v in matrix.rows)


class TestIterPartition:
    def test_n2(self):
        assert [rows_of(m) for m in iter_partition(2)] == [A_ROWS, B_ROWS]

    def test_n3_matches_addressing(self):
        fam = list(iter_partition(3))
        assert len(fam) == 16
        assert sum(m.dim.m for m in fam) == 128
        for flat, matrix in enumerate(fam):
            assert matrix == matrix_by_address(decode_address(3, flat))

    def test_n4_matches_addressing_sampled(self):
        fam = list(iter_partition(4))
        assert len(fam) == 2048
        rnd = random.Random(4)
        for flat in rnd.sample(range(2048), 64):
            assert fam[flat] == matrix_by_address(decode_address(4, flat))

    def test_cap(self):
        with pytest.raises(LevelTooLargeForFullIteration):
            next(iter_partition(6))

    def test_tiny_levels(self):
        assert [rows_of(m) for m in iter_partition(0)] == [("+",)]
        assert [rows_of(m) for m in iter_partition(1)] == [("++", "+-")]

    def test_uncached_fallback_matches(self, monkeypatch):
        # forcing the cache budget to zero must not change the stream
        import hadpart.construction as cons

        expected = list(iter_partition(3))
        monkeypatch.setattr(cons, "_FAMILY_CACHE_BYTES", 0)
        assert list(iter_partition(3)) == expected

    @slow
    def test_n5_stream_count(self):
        count = sum(1 for _ in iter_partition(5))
        assert count == 1 << 26


class TestStructuralRecursion:
    @pytest.mark.parametrize("n", [3, 4])
    def test_halves_reproduce_parents(self, n):
        size = family_size(n)
        rnd = random.Random(n)
        flats = range(size) if n == 3 else rnd.sample(range(size), 48)
        half_m = 1 << (n - 1)
        for flat in flats:
            addr = decode_address(n, flat)
            matrix = matrix_by_address(addr)
            left_i = matrix_by_address(addr.i)
            right_j = shift_matrix(matrix_by_address(addr.j), addr.k)
            for r in range(half_m):
                top_l, top_r = split_halves(matrix.row(r))
                bot_l, bot_r = split_halves(matrix.row(half_m + r))
                assert top_l == left_i.row(r)
                assert top_r == right_j.row(r)
                assert bot_l == left_i.row(r)
                assert bot_r == -right_j.row(r)

    def test_level5_spot_checks(self):
        rnd = random.Random(5)
        for flat in [rnd.randrange(family_size(5)) for _ in range(16)]:
            addr = decode_address(5, flat)
            matrix = matrix_by_address(addr)
            left_i = matrix_by_address(addr.i)
            u, w = split_halves(matrix.row(3))
            assert u == left_i.row(3)
            assert w == shift_matrix(matrix_by_address(addr.j), addr.k).row(3)
