"""End-to-end acceptance checks against the frozen benchmark values.

Each test prints exactly one PASS/FAIL line (visible with ``pytest -s`` or
in the captured output of a failing run) and asserts the same condition.
"""

import itertools

import numpy as np

import oametrics as om
from oametrics.coding import contrasts, full_model_matrix, main_effect_matrix
from oametrics.errors import CodingError
from oametrics.oracle import verify_array

from conftest import FIXTURES, load_fixture, random_balanced_array
from test_properties import (
    STRENGTH1_CASES,
    STRENGTH2_CASES,
    enumerate_margin_tensors,
    pair_law_masks,
    random_coding_map,
)

SQ = np.sqrt


class Criterion:
    """Collects named checks and reports a single PASS/FAIL verdict."""

    def __init__(self, number: int, label: str):
        self.number = number
        self.label = label
        self.failures = []

    def expect(self, name: str, ok) -> None:
        if not ok:
            self.failures.append(name)

    def close(self, v, want, tol, name: str) -> None:
        self.expect(f"{name} ({v!r} vs {want!r})", abs(v - want) <= tol)

    def conclude(self) -> None:
        status = "PASS" if not self.failures else "FAIL"
        print(f"ACCEPTANCE {self.number}: {status} - {self.label}")
        assert not self.failures, (
            f"criterion {self.number} failed: {self.failures}")


def test_criterion_1_nine_run_reproduction(oa9):
    c = Criterion(1, "9-run array: top frequency and interaction column sums")
    c.close(om.projection_a(oa9, (0, 1, 2)).value, 2.0, 1e-9, "a_3")
    m = om.interaction_matrix(oa9, (0, 1, 2))
    sums = sorted((m.values.sum(axis=0) ** 2).tolist())
    want = [81 / 8] * 4 + [243 / 8] * 4
    c.expect("squared column sums",
             np.allclose(sums, want, atol=1e-9))
    c.conclude()


def test_criterion_2_18_run_mixed_level(oa18):
    c = Criterion(2, "18-run mixed-level array: a_3, correlations, "
                     "coding-dependence flag")
    c.close(om.projection_a(oa18, (0, 1, 2)).value, 4 / 9, 1e-9, "a_3")
    cc_a = om.canonical_correlations(
        main_effect_matrix(oa18, 0), om.interaction_matrix(oa18, (1, 2)))
    c.expect("first factor correlation count", len(cc_a.correlations) == 1)
    c.close(cc_a.correlations[0], 2 / 3, 1e-8, "first factor cc")
    cc_b = om.canonical_correlations(
        main_effect_matrix(oa18, 1), om.interaction_matrix(oa18, (0, 2)))
    c.expect("second factor ccs",
             np.allclose(cc_b.correlations, (2 / 3, 0.0), atol=1e-8))
    y_d = main_effect_matrix(oa18, 1, "dummy")
    x_d = full_model_matrix(oa18, (0, 2), "dummy")
    try:
        om.r2_sum(y_d, x_d)
        c.expect("dummy coding rejected", False)
    except CodingError:
        pass
    unchecked = om.r2_sum(y_d, x_d, check_orthogonality=False)
    c.close(unchecked.total, 2 / 3, 1e-8, "dummy unchecked total")
    c.conclude()


def test_criterion_3_8_run_mixed_level(oa8):
    c = Criterion(3, "8-run array: a_3, gr, gr_tot, per-contrast split")
    c.close(om.projection_a(oa8, (0, 1, 2)).value, 1.0, 1e-9, "a_3")
    c.close(om.gr(oa8), 3.0, 1e-9, "gr")
    c.close(om.gr_tot(oa8), 4 - SQ(7 / 9), 1e-9, "gr_tot")
    split = om.r2_sum(main_effect_matrix(oa8, 2),
                      full_model_matrix(oa8, (0, 1))).per_column
    c.expect("four-level split",
             np.allclose(sorted(split), (0.0, 0.2, 0.8), atol=1e-8))
    c.conclude()


def test_criterion_4_l18_triples(l18):
    c = Criterion(4, "18-run standard array triples: frequencies, gr, "
                     "individual-df resolution")
    cases = {(2, 3, 4): (0.5, 3.5), (1, 2, 5): (1.0, 4 - SQ(0.5)),
             (1, 3, 4): (2.0, 3.0)}
    for cols, (want_a, want_gr) in cases.items():
        sub = l18.take_columns(cols)
        c.close(om.projection_a(l18, cols).value, want_a, 1e-9, f"a_3{cols}")
        c.close(om.gr(sub), want_gr, 1e-9, f"gr{cols}")
    d2 = l18.take_columns((1, 2, 5))
    c.close(om.gr_ind(d2), 3.0, 1e-8, "gr_ind of middle triple")
    largest = []
    for i in range(3):
        rest = tuple(j for j in range(3) if j != i)
        largest.append(om.canonical_correlations(
            main_effect_matrix(d2, i),
            om.interaction_matrix(d2, rest)).largest)
    c.expect("largest ccs", np.allclose(
        largest, (1.0, SQ(0.5), SQ(0.5)), atol=1e-8))
    c.conclude()


ROW_A = ((1.0, 0.0, 0.0), (0.8, 0.0, 0.2), (0.0, 2 / 3, 1 / 3))
ROW_B = ((0.75, 0.25, 0.0), (0.65, 0.0, 0.35), (1 / 8, 13 / 24, 1 / 3))
ROW_C = ((0.5, 0.5, 0.0), (0.5, 0.0, 0.5), (1 / 4, 5 / 12, 1 / 3))
ROW_D = ((0.5, 0.25, 0.25), (0.45, 0.25, 0.3), (1 / 4, 5 / 12, 1 / 3))
ROW_E = ((0.375, 0.375, 0.25), (0.375, 0.25, 0.375), (5 / 16, 17 / 48, 1 / 3))
DESIGN_FIRST_ROW = (ROW_A, ROW_B, ROW_C, ROW_D, ROW_D,
                    ROW_C, ROW_D, ROW_C, ROW_E, ROW_C)
DESIGN_GR_IND = (3.0, 3.134, 3.0, 3.134, 3.209,
                 3.293, 3.293, 3.293, 3.388, 3.293)


def test_criterion_5_catalog_signatures(catalog_designs):
    c = Criterion(5, "32-run catalog: signature rows and individual-df "
                     "resolutions for all ten designs")
    tol = 5e-4
    for number, oa in enumerate(catalog_designs, start=1):
        cc2_want, poly_want, helm_want = DESIGN_FIRST_ROW[number - 1]
        c.close(om.projection_a(oa, (0, 1, 2)).value, 1.0, 1e-9,
                f"d{number} a_3")
        c.close(om.gr(oa), 4 - SQ(1 / 3), tol, f"d{number} gr")
        x = full_model_matrix(oa, (1, 2))
        ccs = om.canonical_correlations(main_effect_matrix(oa, 0), x)
        c.expect(f"d{number} cc^2", np.allclose(
            np.square(ccs.correlations), cc2_want, atol=tol))
        poly = om.r2_sum(main_effect_matrix(oa, 0), x).per_column
        c.expect(f"d{number} polynomial split",
                 np.allclose(poly, poly_want, atol=tol))
        helm = om.r2_sum(main_effect_matrix(oa, 0, "helmert"), x).per_column
        c.expect(f"d{number} helmert split",
                 np.allclose(helm, helm_want, atol=tol))
        c.close(om.gr_ind(oa), DESIGN_GR_IND[number - 1], tol,
                f"d{number} gr_ind")
    counts = {}
    for v in DESIGN_GR_IND:
        counts[v] = counts.get(v, 0) + 1
    c.expect("gr_ind multiset", counts == {3.0: 2, 3.134: 2, 3.209: 1,
                                           3.293: 4, 3.388: 1})
    c.conclude()


def test_criterion_6_bounds():
    c = Criterion(6, "closed-form bounds for symmetric arrays")
    b18 = om.gr_upper_bound(18, 3, 3)
    c.expect("18-run bound exact", b18.value == 3.5)
    for s in (2, 3, 4, 5):
        c.close(om.gr_upper_bound(s * s, s, 3).value, 3.0, 1e-12,
                f"square run size s={s}")
    c.expect("32-run lower bound", om.a_r_lower_bound(32, (4, 4, 4)) == 1.0)
    c.close(om.gr_upper_bound(32, 4, 3).value, 4 - SQ(1 / 3), 1e-12,
            "saturated four-level value")
    c.conclude()


def test_criterion_7_l18_factorwise(l18):
    c = Criterion(7, "18-run standard array: factor-wise values and "
                     "7-column sub-designs")

    def rendered(values):
        return [f"{v:.2f}" for v in values]

    per = om.gr_factorwise(l18)
    want = ["3.18", "3.00", "3.29", "3.00", "3.00", "3.29", "3.29", "3.29"]
    c.expect("factor-wise gr_tot", rendered(f.gr_tot for f in per) == want)
    c.expect("factor-wise gr_ind", rendered(f.gr_ind for f in per) == want)

    drop2 = l18.take_columns((0, 2, 3, 4, 5, 6, 7))
    c.expect("drop-2 gr", f"{om.gr(drop2):.2f}" == "3.18")
    c.expect("drop-2 gr_ind", f"{om.gr_ind(drop2):.2f}" == "3.18")
    per2 = om.gr_factorwise(drop2)
    c.expect("drop-2 three-level factors",
             rendered(f.gr_tot for f in per2[1:]) == ["3.42"] * 6)
    c.expect("drop-2 ind equals tot",
             all(abs(f.gr_ind - f.gr_tot) < 1e-8 for f in per2))

    drop4 = l18.take_columns((0, 1, 2, 4, 5, 6, 7))
    c.expect("drop-4 gr", f"{om.gr(drop4):.2f}" == "3.18")
    c.expect("drop-4 gr_ind", f"{om.gr_ind(drop4):.2f}" == "3.00")
    per4 = om.gr_factorwise(drop4)
    want4 = ["3.18", "3.29", "3.29", "3.42", "3.29", "3.29", "3.29"]
    c.expect("drop-4 gr_tot", rendered(f.gr_tot for f in per4) == want4)
    ind4 = rendered(f.gr_ind for f in per4)
    want4_ind = list(want4)
    want4_ind[1] = "3.00"
    c.expect("drop-4 gr_ind per factor", ind4 == want4_ind)
    c.conclude()


def test_criterion_8_property_laws():
    c = Criterion(8, "randomized and exhaustive invariant laws")
    rng = np.random.default_rng(20240814)
    level_pool = (2, 3, 4)
    for case in range(200):
        n = int(rng.integers(2, 5))
        levels = tuple(int(rng.choice(level_pool)) for _ in range(n))
        oa = random_balanced_array(rng, 12, levels)
        i, j = sorted(rng.choice(n, size=2, replace=False).tolist())
        a2 = om.projection_a(oa, (i, j)).value
        helm = om.projection_a(oa, (i, j), coding="helmert").value
        rand = om.projection_a(
            oa, (i, j), coding=random_coding_map(rng, oa, (i, j))).value
        c.expect(f"case {case} coding invariance",
                 abs(a2 - helm) < 1e-8 and abs(a2 - rand) < 1e-8)
        r2 = om.r2_sum(main_effect_matrix(oa, i), main_effect_matrix(oa, j))
        c.expect(f"case {case} r2 sum identity", abs(r2.total - a2) < 1e-8)
        ccs = om.canonical_correlations(main_effect_matrix(oa, i),
                                        main_effect_matrix(oa, j))
        c.expect(f"case {case} cc^2 sum identity",
                 abs(ccs.sum_of_squares - a2) < 1e-8)
        c.expect(f"case {case} pair bound",
                 a2 >= om.a_r_lower_bound(12, (levels[i], levels[j])) - 1e-9)
        if om.strength(oa) < n:
            per = om.gr_factorwise(oa)
            c.expect(f"case {case} gr_ind <= gr",
                     om.gr_ind(oa) <= om.gr(oa) + 1e-9)
            c.expect(f"case {case} min identities",
                     abs(om.gr(oa) - min(f.gr_tot for f in per)) < 1e-9
                     and abs(om.gr_ind(oa) - min(f.gr_ind for f in per)) < 1e-9)
        two = om.OrthogonalArray.from_rows(
            rng.integers(0, 2, size=(int(rng.integers(4, 16)), 3)),
            levels=(2, 2, 2))
        jchar = om.j_characteristics(two, (0, 1, 2))
        c.expect(f"case {case} j identity",
                 abs(om.projection_a(two, (0, 1, 2)).value
                     - (jchar / two.runs) ** 2) < 1e-9)
    for shape, total in STRENGTH1_CASES:
        tensors = enumerate_margin_tensors(shape, total)
        for a, b in itertools.combinations(range(3), 2):
            equal, balanced = pair_law_masks(tensors, shape, total, a, b)
            c.expect(f"exhaustive pair law {shape} N={total} ({a},{b})",
                     bool(np.array_equal(equal, balanced)))
    for shape, total in STRENGTH2_CASES:
        tensors = enumerate_margin_tensors(shape, total, pair_margins=True)
        cs = [contrasts(s).coefficients for s in shape]
        contracted = np.einsum("mabc,ai,bj,ck->mijk", tensors, *cs)
        a3 = (contracted**2).sum(axis=(1, 2, 3)) / total**2
        q = total // int(np.prod(shape))
        balanced = ((tensors == q) | (tensors == q + 1)).all(axis=(1, 2, 3))
        equal = np.abs(a3 - om.a_r_lower_bound(total, shape)) < 1e-9
        c.expect(f"exhaustive triple law {shape} N={total}",
                 bool(np.array_equal(equal, balanced)))
    c.conclude()


def test_criterion_9_oracle_agreement():
    c = Criterion(9, "oracle agreement on every fixture")
    for path in sorted(FIXTURES.glob("*.oa")):
        oa = load_fixture(path.name)
        reports = verify_array(oa)
        c.expect(f"{path.name} produced checks", len(reports) > 0)
        worst = max(r.diff for r in reports)
        c.expect(f"{path.name} max diff {worst:.2e}", worst < 1e-8)
    c.conclude()
