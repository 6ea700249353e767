import math
from fractions import Fraction

import numpy as np
import pytest

from qwabsorb.verify import (
    VERDICT_TOL,
    Verdict,
    analyze_r13_poles,
    antiderivative_reference,
    audit_F_antiderivative,
    check_lambda_identities,
    component_mapping,
    conjecture_rows,
    conjecture_verdict,
    decide,
    demonstrate_konno_flaw,
    lemma_checks,
    pole_angles,
    r13_product_integrand,
    recursion_monotone_bounded,
    sample_annulus,
)


def test_sampling_is_seeded_and_avoids_singular_points():
    a = sample_annulus(200, 7, n_values=(3,))
    b = sample_annulus(200, 7, n_values=(3,))
    assert np.array_equal(a, b)
    assert np.all((np.abs(a) >= 0.5) & (np.abs(a) <= 1.5))
    assert np.min(np.abs(a**4 + 1)) > 1e-4


def test_lambda_report():
    rep = check_lambda_identities(200)
    assert rep["passed"] is True
    assert rep["max_product_residual"] < 1e-12


def test_konno_flaw_report():
    rep = demonstrate_konno_flaw(20)
    assert rep["max_abs_C_z_N3"] < 1e-13
    assert rep["max_abs_konno_r13"] == 0
    assert abs(rep["abs_solve_r13_at_i"] - 1 / 3) < 1e-15
    assert rep["bracket_zero_count_N3"] == 20
    for row in rep["konno_N_ge_4"]:
        assert row["delta_vs_recursion"] < 1e-10


def test_lemma_report():
    rep = lemma_checks(samples=30, residual_samples=3)
    assert rep["max_bc_residual"] < 1e-12
    assert rep["lemma_vs_rational_at_i"] < 1e-12
    assert rep["max_recursion_residual"] > 1e-6


def test_poles():
    rep = analyze_r13_poles()
    assert rep["max_modulus_deviation"] < 1e-12
    assert rep["quadrature"]["status"] == "Diverged"
    assert rep["integrand_at_half_pi"] == pytest.approx(1 / 49, abs=1e-15)
    # z^2 = (3 +- i sqrt7)/4 gives 2t = +-atan2(sqrt7, 3) mod pi
    t0 = 0.5 * math.atan2(math.sqrt(7), 3)
    assert np.allclose(pole_angles(), sorted([t0, math.pi - t0, math.pi + t0, 2 * math.pi - t0]), atol=1e-12)


def test_reference_antiderivative_is_valid():
    theta = np.array([0.1, 1.0, 1.6, 2.0, 3.2, 4.5, 5.5])
    h = 1e-6
    fd = (antiderivative_reference(theta + h) - antiderivative_reference(theta - h)) / (2 * h)
    assert np.max(np.abs(fd - r13_product_integrand(theta))) < 1e-7


def test_F_audit_fields():
    rep = audit_F_antiderivative(1024)
    assert rep["reference_max_derivative_residual"] < 1e-5
    assert rep["branch_crossings"] > 0
    assert abs(rep["F_2pi_minus_F_0"]) < 1e-12
    # the claimed F is not an antiderivative of the integrand away from the poles
    assert rep["max_derivative_residual"] > 1.0
    assert rep["local_antiderivative_ok"] is False


def test_component_mapping_agrees():
    rep = component_mapping(n_values=(3, 4))
    for row in rep["rows"]:
        assert row["delta_c1"] < 1e-10 and row["delta_c2"] < 1e-10
        assert row["parseval_delta"] < 1e-10
        assert row["series_vs_solve_r"] < 1e-12


def _row(n, sim, solve, rec, conv=True):
    return {
        "N": n, "simulator": sim, "simulator_converged": conv,
        "delta_sim_solve": None if solve is None else abs(sim - solve),
        "delta_sim_recursion": abs(sim - rec),
    }


def test_decide_rules():
    good = [_row(3, 2 / 3, 2 / 3, 2 / 3)]
    assert decide(good)[0] is Verdict.MATCHES_RECURSION
    half = [_row(3, 0.5, 0.5, 2 / 3)]
    assert decide(half)[0] is Verdict.MATCHES_CLOSED_FORM
    # tier 0 and tier 1 disagree: never decided
    split = [_row(3, 2 / 3, 0.5, 2 / 3)]
    assert decide(split)[0] is Verdict.INCONCLUSIVE
    assert decide([_row(3, 2 / 3, None, 2 / 3)])[0] is Verdict.INCONCLUSIVE
    assert decide([_row(3, 2 / 3, 2 / 3, 2 / 3, conv=False)])[0] is Verdict.INCONCLUSIVE
    assert decide([_row(3, 0.6, 0.6, 2 / 3)])[0] is Verdict.INCONCLUSIVE


def test_table_rows_exact():
    rows = conjecture_rows([2, 3, 4])
    assert [r["recursion"] for r in rows] == [Fraction(1, 2), Fraction(2, 3), Fraction(7, 10)]
    assert all(r["delta_sim_recursion"] < VERDICT_TOL for r in rows)


def test_verdict_small_range():
    rep = conjecture_verdict([3], lambda_samples=50, flaw_samples=10)
    assert rep.verdict is Verdict.MATCHES_RECURSION
    ids = {c["id"]: c for c in rep.published_claims}
    assert ids["recursion_N3"]["matches_simulator"] is True
    assert ids["closed_form_N3"]["matches_simulator"] is False


def test_monotone_bounded():
    assert recursion_monotone_bounded(100)
