import pytest

from convdist.gf2core import (
    POLY_ONE,
    POLY_ZERO,
    BitMatrix,
    BitVec,
    Poly2,
    PolyMatrix,
    hstack,
    k_minors,
    poly_gcd,
    rank,
    vec_mat_mul,
    vstack,
    weight,
)


class TestBitVec:
    def test_string_round_trip(self):
        v = BitVec.from_string("10110")
        assert v.n == 5
        assert v.to_string() == "10110"
        assert [v[i] for i in range(5)] == [1, 0, 1, 1, 0]

    def test_weight_and_xor(self):
        a = BitVec.from_string("1101")
        b = BitVec.from_string("0111")
        assert weight(a) == 3
        assert (a ^ b).to_string() == "1010"
        assert (a & b).to_string() == "0101"

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            BitVec.from_string("11") ^ BitVec.from_string("111")

    def test_rejects_out_of_range_bits(self):
        with pytest.raises(ValueError):
            BitVec(2, 0b100)


class TestBitMatrix:
    def test_round_trip_and_entries(self):
        m = BitMatrix.from_strings(["101", "011"])
        assert m.rows == 2 and m.cols == 3
        assert m.row_strings() == ["101", "011"]
        assert m.entry(0, 0) == 1 and m.entry(1, 0) == 0
        assert m.column(2).to_string() == "11"

    def test_permute_columns(self):
        m = BitMatrix.from_strings(["101", "011"])
        p = m.permute_columns([2, 0, 1])
        assert p.row_strings() == ["110", "101"]
        with pytest.raises(ValueError):
            m.permute_columns([0, 0, 1])

    def test_vec_mat_mul(self):
        m = BitMatrix.from_strings(["1100", "0110", "0011"])
        u = BitVec.from_string("101")
        assert vec_mat_mul(u, m).to_string() == "1111"

    def test_rank(self):
        assert rank(BitMatrix.from_strings(["110", "011", "101"])) == 2
        assert rank(BitMatrix.from_strings(["100", "010", "001"])) == 3
        assert rank(BitMatrix.zeros(3, 4)) == 0

    def test_stacking(self):
        a = BitMatrix.from_strings(["11", "00"])
        b = BitMatrix.from_strings(["01", "10"])
        assert hstack([a, b]).row_strings() == ["1101", "0010"]
        assert vstack([a, b]).row_strings() == ["11", "00", "01", "10"]
        with pytest.raises(ValueError):
            hstack([a, BitMatrix.from_strings(["1"])])


class TestPoly2:
    def test_degree(self):
        assert POLY_ZERO.degree is None
        assert POLY_ONE.degree == 0
        assert Poly2(0b110).degree == 2

    def test_mul(self):
        # (1+z)(1+z) = 1+z^2 over GF(2)
        a = Poly2(0b11)
        assert (a * a).bits == 0b101
        assert (a * POLY_ZERO).bits == 0

    def test_divmod(self):
        q, r = divmod(Poly2(0b101), Poly2(0b11))
        assert q.bits == 0b11 and r.bits == 0
        with pytest.raises(ZeroDivisionError):
            divmod(POLY_ONE, POLY_ZERO)

    def test_gcd(self):
        # gcd(1+z^2, 1+z) = 1+z
        assert poly_gcd(Poly2(0b101), Poly2(0b11)).bits == 0b11
        # coprime pair
        assert poly_gcd(Poly2(0b111), Poly2(0b11)).bits == 1
        with pytest.raises(ValueError):
            poly_gcd(POLY_ZERO, POLY_ZERO)


class TestPolyMatrix:
    def test_coeff_round_trip(self):
        coeffs = [
            BitMatrix.from_strings(["11", "01"]),
            BitMatrix.from_strings(["10", "00"]),
            BitMatrix.from_strings(["01", "10"]),
        ]
        g = PolyMatrix.from_coeffs(coeffs)
        assert g.max_degree() == 2
        back = g.to_coeffs()
        assert [m.row_strings() for m in back] == [m.row_strings() for m in coeffs]

    def test_k_minors(self):
        # rows (1, z), (z, 1): single 2x2 minor is 1 + z^2
        g = PolyMatrix(2, 2, ((Poly2(1), Poly2(2)), (Poly2(2), Poly2(1))))
        (m,) = k_minors(g)
        assert m.bits == 0b101

    def test_k_minors_column_subsets(self):
        # 1 x 3 matrix: minors are just the entries, in column order
        g = PolyMatrix(1, 3, ((Poly2(1), Poly2(0b10), Poly2(0b11)),))
        assert [m.bits for m in k_minors(g)] == [1, 0b10, 0b11]
        with pytest.raises(ValueError):
            k_minors(PolyMatrix(2, 1, ((Poly2(1),), (Poly2(1),))))
