import functools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qwabsorb.absorption import (
    BASE_GRID,
    DivergedInput,
    QuadStatus,
    absorption_from_c123,
    below_inverse_sqrt2,
    circle_quadrature,
    compute_c123,
    conjecture_sequence,
    corollary_p1N,
    gf_on_circle,
    semi_infinite_closed_form,
)
from qwabsorb.core import L_STATE, R_STATE, QubitState, TolerancePolicy, WalkConfig
from qwabsorb.genfunc import r13_rational_arrays
from qwabsorb.simulator import run_finite_absorption

from conftest import random_qubits


def test_constant_and_trig_polynomials():
    rep = circle_quadrature(lambda t: np.ones_like(t))
    assert rep.converged and abs(rep.value - 2 * math.pi) < 1e-14
    rep = circle_quadrature(lambda t: 1 + np.cos(3 * t) + 2j * np.sin(7 * t))
    assert rep.converged and abs(rep.value - 2 * math.pi) < 1e-13


def test_smooth_periodic_integrand():
    # (1/2pi) int 1/(5 + 4 cos t) = 1/3
    rep = circle_quadrature(lambda t: 1 / (5 + 4 * np.cos(t)))
    assert rep.converged
    assert abs(rep.value / (2 * math.pi) - 1 / 3) < 1e-12


def test_on_contour_poles_diverge():
    rep = circle_quadrature(lambda t: np.abs(r13_rational_arrays(np.exp(1j * t))) ** 2)
    assert rep.status is QuadStatus.DIVERGED
    assert rep.value is None
    assert rep.reason


def test_budget_exhaustion_is_diverged():
    rep = circle_quadrature(lambda t: 1 / (1.0001 - np.cos(t)), TolerancePolicy(max_grid_doublings=2))
    assert rep.status is QuadStatus.DIVERGED
    assert "budget" in rep.reason


def test_degenerate_node_triggers_offset():
    first = 2 * math.pi * 0.5 / BASE_GRID

    def f(t):
        return np.where(np.abs(t - first) < 1e-15, np.nan, 1.0)

    rep = circle_quadrature(f)
    assert rep.converged and rep.offset != 0.0
    assert abs(rep.value - 2 * math.pi) < 1e-14


def test_degenerate_everywhere():
    rep = circle_quadrature(lambda t: np.full_like(t, np.nan))
    assert rep.status is QuadStatus.DEGENERATE_NODES


def test_c123_three_sites():
    co = compute_c123(3, 1, "solve")
    assert co.converged
    assert abs(co.c1 - 2 / 3) < 1e-10
    assert abs(co.c2 - 2 / 3) < 1e-10
    assert abs(co.c3 - 1 / 3) < 1e-10


@functools.lru_cache(maxsize=None)
def coeffs(n, k):
    return compute_c123(n, k, "solve")


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 6), st.data())
def test_quadratic_form_matches_simulator(n, data):
    k = data.draw(st.integers(1, n - 1))
    q = random_qubits(1, data.draw(st.integers(0, 2**16)))[0]
    sim = run_finite_absorption(WalkConfig.finite(n, k, q)).outcome.p_left
    assert abs(absorption_from_c123(coeffs(n, k), q) - sim) < 1e-8


def test_diverged_coefficients_refuse_probability():
    co = compute_c123(3, 1, "lemma")
    assert not co.converged
    with pytest.raises(DivergedInput):
        absorption_from_c123(co, R_STATE)


def test_corollary_values():
    assert corollary_p1N(2, "solve")[0] == pytest.approx(0.5, abs=1e-15)
    val, rep = corollary_p1N(3, "solve")
    assert rep.converged and abs(val - 2 / 3) < 1e-10
    # the N = 3 closed form has r_1 = 0, hence 1/2
    val, rep = corollary_p1N(3, "konno")
    assert abs(val - 0.5) < 1e-15
    val, rep = corollary_p1N(3, "lemma")
    assert val is None and rep.status is QuadStatus.DIVERGED


def test_konno_two_sites_uses_boundary_values():
    p, r = gf_on_circle("konno", 2, 1)(np.array([0.3]))
    assert p[0] == np.exp(0.3j) and r[0] == 0


def test_semi_infinite_closed_form():
    s = 1 / math.sqrt(2)
    assert semi_infinite_closed_form(R_STATE) == 2 / math.pi
    assert semi_infinite_closed_form(L_STATE) == 2 / math.pi
    assert semi_infinite_closed_form(QubitState(s, s)) == pytest.approx(1.0, abs=1e-15)
    assert semi_infinite_closed_form(QubitState(s, -s)) == pytest.approx(4 / math.pi - 1, abs=1e-15)


def test_conjecture_sequence_exact():
    seq = conjecture_sequence(6)
    assert seq == [Fraction(0), Fraction(1, 2), Fraction(2, 3), Fraction(7, 10), Fraction(12, 17), Fraction(41, 58)]
    with pytest.raises(ValueError):
        conjecture_sequence(0)


def test_recursion_increases_below_limit():
    seq = conjecture_sequence(60)
    assert all(a < b for a, b in zip(seq, seq[1:]))
    assert all(below_inverse_sqrt2(x) for x in seq)
    # the fixed point of x -> (1 + 2x) / (2 + 2x) is 1/sqrt2
    assert abs(float(seq[-1]) - 1 / math.sqrt(2)) < 1e-12


@given(st.fractions(min_value=0, max_value=1, max_denominator=10**6))
def test_below_inverse_sqrt2(x):
    assert below_inverse_sqrt2(x) == (float(x) < 1 / math.sqrt(2))
