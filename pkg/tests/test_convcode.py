import pytest

from convdist.convcode import (
    ConvCode,
    DistanceProfile,
    L_value,
    column_bound,
    column_distances_exhaustive,
    column_distances_trellis,
    distance_profile,
    external_degree,
    free_distance,
    has_generic_row_degrees,
    internal_degree,
    is_delay_free,
    is_mdp,
    is_noncatastrophic,
    is_row_reduced,
    row_weight_bounds,
    row_degrees,
    singleton_bound,
    sliding_matrix,
)
from convdist.gf2core import BitMatrix


def code_from_rows(rows, k=1, delta=None):
    n = len(rows[0])
    coeffs = tuple(
        BitMatrix.from_strings(rows[i : i + k]) for i in range(0, len(rows), k)
    )
    if delta is None:
        delta = len(coeffs) - 1
    return ConvCode(n, k, coeffs, delta)


REP_211 = code_from_rows(["11", "10"])  # (2,1,1), profile (2,3,3,...)
REP_412 = code_from_rows(["1111", "1010", "1100"])  # (4,1,2)
CATASTROPHIC = code_from_rows(["11", "11"])  # G(z) = ((1+z, 1+z))


class TestConvCode:
    def test_validation(self):
        with pytest.raises(ValueError):
            code_from_rows(["11", "00"])  # trailing zero G_mu
        with pytest.raises(ValueError):
            ConvCode(2, 1, (BitMatrix.from_strings(["111"]),), 0)

    def test_coeff_zero_padding(self):
        assert REP_211.mu == 1
        assert REP_211.coeff(5).is_zero()

    def test_permute_columns(self):
        p = REP_211.permute_columns([1, 0])
        assert [g.row_strings() for g in p.coeffs] == [["11"], ["01"]]


class TestSlidingMatrix:
    def test_block_layout(self):
        m = sliding_matrix(REP_211, 2)
        # row blocks carry G_0 on the diagonal and G_1 one block right
        assert m.row_strings() == ["111000", "001110", "000011"]

    def test_k2_layout(self):
        c = code_from_rows(["10", "01", "11", "10"], k=2)
        m = sliding_matrix(c, 1)
        assert m.row_strings() == ["1011", "0110", "0010", "0001"]


class TestDistances:
    def test_known_profiles(self):
        assert column_distances_exhaustive(REP_211, 4) == [2, 3, 3, 3, 3]
        assert column_distances_trellis(REP_211, 4) == [2, 3, 3, 3, 3]
        assert column_distances_exhaustive(REP_412, 5) == [4, 6, 8, 8, 8, 8]

    def test_methods_agree(self):
        for code in (REP_211, REP_412, CATASTROPHIC):
            jmax = code.delta + 4
            assert column_distances_exhaustive(code, jmax) == column_distances_trellis(
                code, jmax
            )

    def test_free_distance(self):
        assert free_distance(REP_211) == 3
        assert free_distance(REP_412) == 8

    def test_free_distance_rejects_catastrophic(self):
        with pytest.raises(ValueError):
            free_distance(CATASTROPHIC)

    def test_distance_profile_auto(self):
        prof = distance_profile(REP_412, 4, with_free=True)
        assert prof.values == (4, 6, 8, 8, 8)
        assert prof.free_distance == 8
        assert prof.method == "trellis"

    def test_delta_zero(self):
        c = code_from_rows(["111"])
        assert distance_profile(c, 3).values == (3, 3, 3, 3)
        assert free_distance(c) == 3

    def test_requires_delay_free(self):
        c = ConvCode(
            2, 1, (BitMatrix.zeros(1, 2), BitMatrix.from_strings(["11"])), 1
        )
        with pytest.raises(ValueError):
            column_distances_exhaustive(c, 2)
        with pytest.raises(ValueError):
            column_distances_trellis(c, 2)

    def test_exhaustion_guard(self):
        with pytest.raises(ValueError):
            column_distances_exhaustive(REP_211, 30)

    def test_profile_validation(self):
        with pytest.raises(ValueError):
            DistanceProfile((3, 2))
        with pytest.raises(ValueError):
            DistanceProfile((2, 3), free_distance=2)


class TestStructure:
    def test_row_degrees_k2(self):
        c = code_from_rows(["10", "01", "11", "00"], k=2, delta=1)
        assert row_degrees(c) == [1, 0]
        assert external_degree(c) == 1

    def test_internal_degree(self):
        assert internal_degree(REP_412) == 2
        # rows (1, z), (0, 1): determinant 1, so internal degree 0 < external 1
        c = code_from_rows(["10", "01", "01", "00"], k=2, delta=1)
        assert internal_degree(c) == 0
        assert not is_row_reduced(c)
        assert is_noncatastrophic(c)

    def test_row_reduced(self):
        assert is_row_reduced(REP_412)
        assert is_row_reduced(REP_211)

    def test_delay_free(self):
        assert is_delay_free(REP_211)
        assert not is_delay_free(
            ConvCode(2, 1, (BitMatrix.zeros(1, 2), BitMatrix.from_strings(["10"])), 1)
        )

    def test_noncatastrophic(self):
        assert is_noncatastrophic(REP_211)
        assert not is_noncatastrophic(CATASTROPHIC)

    def test_rank_deficient_raises(self):
        c = code_from_rows(["11", "11", "11", "11"], k=2, delta=1)
        with pytest.raises(ValueError):
            is_noncatastrophic(c)

    def test_generic_row_degrees(self):
        assert has_generic_row_degrees(REP_412)
        c = code_from_rows(["10", "01", "11", "00"], k=2, delta=1)
        assert has_generic_row_degrees(c)
        c2 = code_from_rows(["10", "01", "00", "00", "11", "00"], k=2, delta=2)
        assert not has_generic_row_degrees(c2)  # degrees (2, 0), generic is (1, 1)


class TestBounds:
    def test_closed_forms(self):
        assert singleton_bound(4, 1, 2) == 12
        assert column_bound(4, 1, 2) == 10
        assert L_value(4, 1, 2) == 2
        with pytest.raises(ValueError):
            L_value(2, 2, 1)

    def test_not_mdp_over_gf2(self):
        assert not is_mdp(REP_211)
        assert not is_mdp(REP_412)

    def test_row_weight_bounds_tight_on_exact_code(self):
        rep = row_weight_bounds(REP_412, 5)
        prof = distance_profile(REP_412, 5).values
        assert rep.lower == prof == rep.upper  # tight on this construction
        assert all(u <= c for u, c in zip(rep.upper, rep.cap))
        assert rep.singleton == 12
        assert rep.L == 2

    def test_row_weight_bounds_bracket_distances(self):
        c = code_from_rows(["110", "011", "101"])
        rep = row_weight_bounds(c, 4)
        prof = distance_profile(c, 4).values
        for lo, d, up, cap in zip(rep.lower, prof, rep.upper, rep.cap):
            assert lo <= d <= up <= cap
