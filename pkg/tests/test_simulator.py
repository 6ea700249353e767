import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qwabsorb.core import HADAMARD, L_STATE, R_STATE, QubitState, TolerancePolicy, WalkConfig
from qwabsorb.simulator import (
    CapacityError,
    Site,
    WaveState,
    richardson_semi_infinite,
    run_finite_absorption,
    run_semi_infinite_absorption,
    step_walk,
)

from conftest import random_qubits


def lyapunov_oracle(n, k, vec):
    """Absorption at 0 from the dense one-step operator: X = psi psi^H + A X A^H."""
    dim = 2 * (n + 1)
    shift = np.zeros((dim, dim), dtype=complex)
    u = HADAMARD.matrix
    for x in range(n + 1):
        for c in range(2):
            for c2 in range(2):
                # row c of the coin moves left for c = 0, right for c = 1
                y = x - 1 if c == 0 else x + 1
                if 0 <= y <= n:
                    shift[2 * y + c, 2 * x + c2] += u[c, c2]
    keep = np.eye(dim)
    for x in (0, n):
        keep[2 * x, 2 * x] = keep[2 * x + 1, 2 * x + 1] = 0
    a = keep @ shift
    psi = np.zeros(dim, dtype=complex)
    psi[2 * k: 2 * k + 2] = vec
    rhs = np.outer(psi, psi.conj()).reshape(-1)
    x = np.linalg.solve(np.eye(dim * dim) - np.kron(a, a.conj()), rhs).reshape(dim, dim)
    out = shift @ x @ shift.conj().T
    return out[0, 0].real + out[1, 1].real, out[2 * n, 2 * n].real + out[2 * n + 1, 2 * n + 1].real


def test_two_sites_split_evenly():
    out = run_finite_absorption(WalkConfig.finite(2, 1, R_STATE)).outcome
    assert abs(out.p_left - 0.5) < 1e-15
    assert abs(out.p_right - 0.5) < 1e-15
    assert out.steps_used == 1 and out.converged


@pytest.mark.parametrize("n, value", [(3, Fraction(2, 3)), (4, Fraction(7, 10)), (5, Fraction(12, 17))])
def test_small_n_values(n, value):
    out = run_finite_absorption(WalkConfig.finite(n, 1, R_STATE)).outcome
    assert abs(out.p_left - float(value)) < 1e-10


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 6), st.data())
def test_matches_lyapunov_oracle(n, data):
    k = data.draw(st.integers(1, n - 1))
    seed = data.draw(st.integers(0, 2**16))
    q = random_qubits(1, seed)[0]
    out = run_finite_absorption(WalkConfig.finite(n, k, q)).outcome
    pl, pr = lyapunov_oracle(n, k, q.vector)
    assert abs(out.p_left - pl) < 1e-10
    assert abs(out.p_right - pr) < 1e-10


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 9), st.data())
def test_probability_is_conserved(n, data):
    k = data.draw(st.integers(1, n - 1))
    q = random_qubits(1, data.draw(st.integers(0, 2**16)))[0]
    tol = TolerancePolicy(max_steps=data.draw(st.integers(1, 200)))
    out = run_finite_absorption(WalkConfig.finite(n, k, q), tol).outcome
    assert abs(out.p_left + out.p_right + out.survival - 1) < 1e-12


def test_step_is_norm_preserving_away_from_edges():
    state = WaveState.localized(41, 20, R_STATE.vector)
    for _ in range(15):
        state = step_walk(state, HADAMARD)
    assert abs(state.norm2() - 1) < 1e-13
    assert state.time == 15


def test_hits_respect_parity_and_sum():
    run = run_finite_absorption(WalkConfig.finite(5, 2, L_STATE), TolerancePolicy(survival_tol=1e-30))
    # from site 2 the left edge is only reached at even times
    assert np.all(run.left.times % 2 == 0)
    assert np.all(np.diff(run.left.times) > 0)
    assert abs(run.left.total_prob() - run.outcome.p_left) < 1e-13
    recs = list(run.records())
    assert [r.time for r in recs] == sorted(r.time for r in recs)
    assert {r.site for r in recs} == {Site.LEFT, Site.RIGHT}
    # the amplitude arriving at 0 moves left, so only the L component is set
    assert np.all(run.left.amplitudes[:, 1] == 0)


def test_not_converged_is_reported():
    out = run_finite_absorption(WalkConfig.finite(50, 1), TolerancePolicy(max_steps=10)).outcome
    assert not out.converged and out.steps_used == 10


def test_semi_infinite_short_horizon():
    # t = 1 absorbs the L part of H|R>, i.e. 1/2
    out = run_semi_infinite_absorption(WalkConfig.semi_infinite(1), 1)
    assert out.p_left == pytest.approx(0.5, abs=1e-15)
    out = run_semi_infinite_absorption(WalkConfig.semi_infinite(1), 2000)
    assert abs(out.p_left - 2 / math.pi) < 5e-3


def test_semi_infinite_agrees_with_long_finite_lattice():
    # before anything reaches site N the finite and semi-infinite walks coincide
    t = 40
    semi = run_semi_infinite_absorption(WalkConfig.semi_infinite(3), t)
    fin = run_finite_absorption(WalkConfig.finite(3 + t + 2, 3), TolerancePolicy(max_steps=t)).outcome
    assert abs(semi.p_left - fin.p_left) < 1e-14


def test_richardson_moves_toward_limit():
    out, extra = richardson_semi_infinite(WalkConfig.semi_infinite(1), 1000)
    assert abs(extra - 2 / math.pi) < 0.1 * abs(out.p_left - 2 / math.pi)
    # the tail decays like t**-2, so a first-order correction overshoots
    _, first = richardson_semi_infinite(WalkConfig.semi_infinite(1), 1000, order=1.0)
    assert first > 2 / math.pi


def test_capacity_bound():
    with pytest.raises(CapacityError):
        run_semi_infinite_absorption(WalkConfig.semi_infinite(1), 100, max_sites=50)
