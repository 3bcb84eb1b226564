"""Parsing, validation, balance scanning, and uniformity measures."""

import io

import numpy as np
import pytest

import oametrics as om
from oametrics.errors import ParseError, ValidationError


class TestParsing:
    def test_whitespace_rows(self):
        oa = om.parse_oa("0 0\n0 1\n1 0\n1 1\n")
        assert oa.runs == 4
        assert oa.levels == (2, 2)

    def test_comma_separated(self):
        oa = om.parse_oa("0,0\n0,1\n1,0\n1,1\n")
        assert oa.levels == (2, 2)

    def test_comments_and_blank_lines(self):
        text = "# a comment\n\n0 0\n# another\n0 1\n1 0\n1 1\n"
        oa = om.parse_oa(text)
        assert oa.runs == 4

    def test_levels_header(self):
        oa = om.parse_oa("# levels: 2 4\n0 0\n0 1\n1 2\n1 3\n")
        assert oa.levels == (2, 4)

    def test_levels_header_widens_inferred(self):
        # without the header the second column would be inferred as 2 levels
        oa = om.parse_oa("# levels: 2 3\n0 0\n0 1\n1 0\n1 1\n")
        assert oa.levels == (2, 3)

    def test_override_beats_header(self):
        oa = om.parse_oa("# levels: 2 2\n0 0\n0 1\n1 0\n1 1\n",
                         level_override=(3, 3))
        assert oa.levels == (3, 3)

    def test_file_like_source(self):
        oa = om.parse_oa(io.StringIO("0 0\n1 1\n"))
        assert oa.runs == 2

    def test_iterable_source(self):
        oa = om.parse_oa(["0 0", "1 1"])
        assert oa.runs == 2

    def test_ragged_rows_rejected(self):
        with pytest.raises(ParseError, match="line 2"):
            om.parse_oa("0 0\n0 1 1\n")

    def test_non_integer_token(self):
        with pytest.raises(ParseError, match=r"line 1, token 2"):
            om.parse_oa("0 x\n1 0\n")

    def test_value_above_declared_levels(self):
        # physical line numbers include the header line
        with pytest.raises(ParseError, match="line 3"):
            om.parse_oa("# levels: 2 2\n0 0\n0 2\n")

    def test_negative_value(self):
        with pytest.raises(ParseError):
            om.parse_oa("0 0\n0 -1\n")

    def test_empty_input(self):
        with pytest.raises(ParseError):
            om.parse_oa("# nothing here\n")


class TestConstruction:
    def test_from_rows_infers_levels(self):
        oa = om.OrthogonalArray.from_rows([[0, 0], [1, 1], [1, 2]])
        assert oa.levels == (2, 3)

    def test_from_rows_requires_dense_codes_when_inferring(self):
        with pytest.raises(ValidationError):
            om.OrthogonalArray.from_rows([[0, 0], [2, 1]])

    def test_explicit_levels_allow_missing_codes(self):
        oa = om.OrthogonalArray.from_rows([[0, 0], [2, 1]], levels=(3, 2))
        assert oa.levels == (3, 2)

    def test_single_run_rejected(self):
        with pytest.raises(ValidationError):
            om.OrthogonalArray.from_rows([[0, 0]])

    def test_cells_are_immutable(self, oa9):
        with pytest.raises(ValueError):
            oa9.cells[0, 0] = 1

    def test_take_columns(self, oa18):
        sub = oa18.take_columns((2, 0))
        assert sub.levels == (3, 2)
        assert np.array_equal(sub.cells[:, 1], oa18.cells[:, 0])

    def test_permute_rows_preserves_metrics(self, oa18):
        perm = np.random.default_rng(5).permutation(oa18.runs)
        shuffled = oa18.permute_rows(perm)
        assert om.strength(shuffled) == om.strength(oa18)
        a = om.projection_a(oa18, (0, 1, 2)).value
        b = om.projection_a(shuffled, (0, 1, 2)).value
        assert abs(a - b) < 1e-12

    def test_relabel_levels(self, oa9):
        swapped = oa9.relabel_levels(0, (2, 1, 0))
        assert om.strength(swapped) == 2
        assert set(np.unique(swapped.cells[:, 0])) == {0, 1, 2}


class TestStrength:
    def test_full_factorial(self):
        rows = [(a, b) for a in range(2) for b in range(3)]
        oa = om.OrthogonalArray.from_rows(rows)
        assert om.strength(oa) == 2

    def test_benchmarks(self, oa9, oa18, oa8, l18, pb12, fused18, sat32):
        for oa in (oa9, oa18, oa8, l18, pb12, fused18, sat32):
            assert om.strength(oa) == 2

    def test_strength_zero(self):
        oa = om.OrthogonalArray.from_rows([[0, 0], [0, 1], [1, 0]])
        assert om.strength(oa) == 0

    def test_max_t_cap(self, oa9):
        assert om.strength(oa9, max_t=1) == 1

    def test_projection_counts(self, oa9):
        table = om.projection_counts(oa9, (0, 1))
        assert table.grid_size == 9
        assert all(v == 1 for v in table.counts.values())


class TestBalance:
    def test_weak_strength_three_fused(self, fused18):
        assert om.strength(fused18) == 2
        assert om.weak_strength(fused18, 3)

    def test_max_balance_witness_order(self):
        # first failing subset in lexicographic order is reported
        rows = [(a, b, a) for a in range(2) for b in range(2)] * 2
        oa = om.OrthogonalArray.from_rows(rows)
        report = om.max_t_balance(oa, 2)
        assert not report.is_strength_t
        assert report.witness == (0, 2)

    def test_strength_t_report(self, oa9):
        report = om.max_t_balance(oa9, 2)
        assert report.is_strength_t
        assert report.has_max_t_balance
        assert report.witness is None

    def test_q_r_split(self, fused18):
        report = om.max_t_balance(fused18, 3)
        assert (report.q, report.r) == (0, 18)


class TestUniformity:
    def test_v_uniformity_nine_run(self, oa9):
        # distinct runs: V = (27*9 - 81) / 27^2 = 2/9
        assert abs(om.v_uniformity(oa9) - 2 / 9) < 1e-15

    def test_v_matches_scaled_top_frequency(self, oa8):
        v = om.v_uniformity(oa8)
        n_bar = oa8.runs / 16
        a3 = om.projection_a(oa8, (0, 1, 2)).value
        assert abs(v - n_bar**2 * a3) < 1e-12

    def test_coincidence_distribution_saturated(self, sat32):
        dist = om.coincidence_distribution(sat32)
        assert dist == {1: 48, 2: 448}

    def test_coincidence_total_pairs(self, l18):
        dist = om.coincidence_distribution(l18)
        assert sum(dist.values()) == 18 * 17 // 2
