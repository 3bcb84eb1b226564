"""Canonical correlations and per-contrast R-squared decompositions."""

import numpy as np
import pytest

import oametrics as om
from oametrics.coding import contrasts, full_model_matrix, main_effect_matrix
from oametrics.errors import CodingError


class TestCanonicalCorrelations:
    def test_nine_run_complete_confounding(self, oa9):
        y = main_effect_matrix(oa9, 2)
        x = om.interaction_matrix(oa9, (0, 1))
        result = om.canonical_correlations(y, x)
        assert np.allclose(result.correlations, (1.0, 1.0))
        assert result.correlations[0] == 1.0  # snapped exactly

    def test_oa18_two_level_factor(self, oa18):
        y = main_effect_matrix(oa18, 0)
        x = om.interaction_matrix(oa18, (1, 2))
        result = om.canonical_correlations(y, x)
        assert len(result.correlations) == 1
        assert abs(result.largest - 2 / 3) < 1e-8

    def test_oa18_three_level_factor(self, oa18):
        y = main_effect_matrix(oa18, 1)
        x = om.interaction_matrix(oa18, (0, 2))
        result = om.canonical_correlations(y, x)
        assert np.allclose(result.correlations, (2 / 3, 0.0), atol=1e-8)

    def test_coding_invariance_including_dummy(self, oa18):
        for factor, rest in [(0, (1, 2)), (1, (0, 2)), (2, (0, 1))]:
            base = None
            for scheme in ("polynomial", "helmert", "dummy"):
                y = main_effect_matrix(oa18, factor, scheme)
                x = full_model_matrix(oa18, rest, scheme)
                ccs = om.canonical_correlations(y, x).correlations
                if base is None:
                    base = ccs
                else:
                    assert np.allclose(ccs, base, atol=1e-8), scheme

    def test_interaction_equals_full_model_at_strength(self, l18):
        # main effects are orthogonal to lower-order terms, so adding them
        # to the explanatory block changes nothing
        y = main_effect_matrix(l18, 1)
        a = om.canonical_correlations(y, om.interaction_matrix(l18, (2, 5)))
        b = om.canonical_correlations(y, full_model_matrix(l18, (2, 5)))
        assert np.allclose(a.correlations, b.correlations, atol=1e-8)

    def test_sum_of_squares_equals_projection(self, oa18):
        y = main_effect_matrix(oa18, 1)
        x = om.interaction_matrix(oa18, (0, 2))
        result = om.canonical_correlations(y, x)
        a3 = om.projection_a(oa18, (0, 1, 2)).value
        assert abs(result.sum_of_squares - a3) < 1e-8

    def test_count_is_min_dimension(self, oa8):
        y = main_effect_matrix(oa8, 2)  # 3 contrasts
        x = om.interaction_matrix(oa8, (0, 1))  # 1 column
        result = om.canonical_correlations(y, x)
        assert len(result.correlations) == 1
        assert result.y_dim == 3 and result.x_dim == 1

    def test_values_sorted_and_clamped(self, l18):
        y = main_effect_matrix(l18, 3)
        x = full_model_matrix(l18, (1, 2, 4, 5))
        result = om.canonical_correlations(y, x)
        ccs = np.asarray(result.correlations)
        assert np.all(ccs[:-1] >= ccs[1:] - 1e-15)
        assert np.all((ccs >= 0.0) & (ccs <= 1.0))

    def test_raw_matrices_accepted(self):
        rng = np.random.default_rng(11)
        y = rng.normal(size=(20, 2))
        x = rng.normal(size=(20, 3))
        result = om.canonical_correlations(y, x)
        assert len(result.correlations) == 2
        assert all(0.0 <= c <= 1.0 for c in result.correlations)


class TestR2Sum:
    def test_oa18_polynomial_split(self, oa18):
        y = main_effect_matrix(oa18, 1)
        x = full_model_matrix(oa18, (0, 2))
        result = om.r2_sum(y, x)
        assert np.allclose(result.per_column, (1 / 9, 3 / 9), atol=1e-8)
        assert abs(result.total - 4 / 9) < 1e-8

    def test_helmert_total_matches(self, oa18):
        y = main_effect_matrix(oa18, 1, "helmert")
        x = full_model_matrix(oa18, (0, 2), "helmert")
        result = om.r2_sum(y, x)
        assert abs(result.total - 4 / 9) < 1e-8

    def test_split_depends_on_coding(self, catalog_designs):
        d1 = catalog_designs[0]
        x = full_model_matrix(d1, (1, 2))
        poly = om.r2_sum(main_effect_matrix(d1, 0), x)
        helm = om.r2_sum(main_effect_matrix(d1, 0, "helmert"), x)
        assert np.allclose(poly.per_column, (0.8, 0.0, 0.2), atol=1e-8)
        assert np.allclose(helm.per_column, (0.0, 2 / 3, 1 / 3), atol=1e-8)
        assert abs(poly.total - helm.total) < 1e-8

    def test_dummy_coding_rejected_by_default(self, oa18):
        y = main_effect_matrix(oa18, 1, "dummy")
        x = full_model_matrix(oa18, (0, 2), "dummy")
        with pytest.raises(CodingError):
            om.r2_sum(y, x)

    def test_dummy_unchecked_value(self, oa18):
        y = main_effect_matrix(oa18, 1, "dummy")
        x = full_model_matrix(oa18, (0, 2), "dummy")
        result = om.r2_sum(y, x, check_orthogonality=False)
        assert np.allclose(result.per_column, (1 / 3, 1 / 3), atol=1e-8)
        assert abs(result.total - 2 / 3) < 1e-8

    def test_oa8_four_level_split(self, oa8):
        y = main_effect_matrix(oa8, 2)
        x = full_model_matrix(oa8, (0, 1))
        result = om.r2_sum(y, x)
        assert np.allclose(sorted(result.per_column), (0.0, 0.2, 0.8),
                           atol=1e-8)
        assert abs(result.total - 1.0) < 1e-8

    def test_constant_column_rejected(self, oa18):
        y = np.ones((18, 1))
        x = full_model_matrix(oa18, (0, 2))
        with pytest.raises(CodingError):
            om.r2_sum(y, x)
