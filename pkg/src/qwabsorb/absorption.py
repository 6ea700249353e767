"""Absorption probabilities from generating functions on the unit circle."""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .core import DEFAULT_TOL, HADAMARD, QubitState, QWError, TolerancePolicy
from .genfunc import Method, konno_arrays, lemma_arrays, solve_arrays

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
BASE_GRID = 64
# fraction of a node spacing used when the midpoint grid must be shifted
GRID_OFFSET = 0.5 * (math.sqrt(5.0) - 1.0) - 0.5
DEGENERATE_FRACTION = 0.01
GROWTH_FACTOR = 10.0
CHUNK = 1 << 16


class QuadStatus(str, enum.Enum):
    CONVERGED = "Converged"
    DIVERGED = "Diverged"
    DEGENERATE_NODES = "DegenerateNodes"


class DivergedInput(QWError, ValueError):
    pass


@dataclass
class QuadratureReport:
    value: complex | None
    grid_size: int
    error_estimate: float
    status: QuadStatus
    reason: str = ""
    degenerate_nodes: int = 0
    offset: float = 0.0
    history: list = field(default_factory=list)  # (grid size, value) per grid

    @property
    def converged(self) -> bool:
        return self.status is QuadStatus.CONVERGED

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "grid_size": self.grid_size,
            "error_estimate": self.error_estimate,
            "status": self.status.value,
            "reason": self.reason,
            "degenerate_nodes": self.degenerate_nodes,
            "offset": self.offset,
            "history": [[m, v] for m, v in self.history],
        }


def _grid_sum(integrand: Callable, m: int, offset: float) -> tuple[complex, int]:
    """Midpoint-rule sum over ``m`` nodes; returns (integral, number of non-finite nodes)."""
    total = 0j
    bad = 0
    for start in range(0, m, CHUNK):
        j = np.arange(start, min(start + CHUNK, m), dtype=float)
        theta = TWO_PI * (j + 0.5 + offset) / m
        vals = np.asarray(integrand(theta), dtype=complex)
        ok = np.isfinite(vals)
        bad += int(np.count_nonzero(~ok))
        total += complex(np.sum(np.where(ok, vals, 0.0)))
    return total * (TWO_PI / m), bad


def circle_quadrature(integrand: Callable, tol: TolerancePolicy = DEFAULT_TOL) -> QuadratureReport:
    """Integrate a 2*pi-periodic function over [0, 2*pi] with grid doubling.

    ``integrand`` maps an array of angles to an array of values; non-finite values
    mark degenerate nodes.  The rule is the periodic midpoint rule, whose nodes avoid
    theta = 0 and simple rational angles.  The grid starts at 64 nodes and doubles
    up to ``64 * 2**tol.max_grid_doublings``.

    Status:
      * Converged - two successive grids agree to within ``tol.quad_tol``;
      * Diverged  - the error estimate exceeded 10x its running minimum on two
        consecutive doublings, or the doubling budget ran out;
      * DegenerateNodes - more than 1% of nodes were degenerate after one offset retry.
    """
    offset = 0.0
    history = []
    prev = None
    best_err = math.inf
    strikes = 0
    err = math.inf
    bad_total = 0
    for j in range(tol.max_grid_doublings + 1):
        m = BASE_GRID << j
        val, bad = _grid_sum(integrand, m, offset)
        if bad and offset == 0.0:
            log.debug("%d degenerate nodes at M=%d, shifting grid", bad, m)
            offset = GRID_OFFSET
            val, bad = _grid_sum(integrand, m, offset)
        if bad > DEGENERATE_FRACTION * m:
            return QuadratureReport(
                None, m, math.inf, QuadStatus.DEGENERATE_NODES,
                f"{bad} of {m} nodes degenerate after grid offset", bad, offset, history,
            )
        bad_total = bad
        history.append((m, val))
        if prev is not None:
            err = abs(val - prev)
            if err < tol.quad_tol:
                return QuadratureReport(val, m, err, QuadStatus.CONVERGED, "", bad, offset, history)
            if err > GROWTH_FACTOR * best_err:
                strikes += 1
                if strikes >= 2:
                    return QuadratureReport(
                        None, m, err, QuadStatus.DIVERGED,
                        f"error estimate {err:.3e} exceeded {GROWTH_FACTOR:g}x its minimum "
                        f"{best_err:.3e} on two consecutive doublings",
                        bad, offset, history,
                    )
            else:
                strikes = 0
            best_err = min(best_err, err)
        prev = val
    return QuadratureReport(
        None, BASE_GRID << tol.max_grid_doublings, err, QuadStatus.DIVERGED,
        "doubling budget exhausted without convergence", bad_total, offset, history,
    )


# --------------------------------------------------------------------------- p, r on the circle

def gf_on_circle(method: Method | str, n: int, k: int) -> Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]:
    """Return ``theta -> (p_k(e^{i theta}), r_k(e^{i theta}))`` for a method."""
    method = Method(method)
    if not 1 <= k <= n - 1:
        raise ValueError(f"k={k} outside 1..{n - 1}")

    def evaluate(theta):
        z = np.exp(1j * np.asarray(theta, dtype=float))
        if n == 2 and method is Method.KONNO:
            # formulas need N >= 3; r_1^2 = r_{N-1}^2 = 0, p_1 = z by the boundary conditions
            return z, np.zeros_like(z)
        if method is Method.SOLVE:
            p, r, _ = solve_arrays(z, n, HADAMARD)
            return p[:, k - 1], r[:, k - 1]
        if method is Method.LEMMA:
            return lemma_arrays(z, n, k)
        if method is Method.KONNO:
            return konno_arrays(z, n, k)
        raise ValueError(f"no circle evaluator for {method.value!r}")

    return evaluate


@dataclass
class IntegralCoefficients:
    c1: float | None
    c2: float | None
    c3: complex | None
    reports: tuple
    method: Method
    n: int
    k: int
    imag_residue: tuple = (0.0, 0.0)  # |Im| dropped from c1, c2

    @property
    def converged(self) -> bool:
        return all(r.converged for r in self.reports)

    def as_dict(self) -> dict:
        return {
            "c1": self.c1,
            "c2": self.c2,
            "c3": self.c3,
            "method": self.method.value,
            "N": self.n,
            "k": self.k,
            "imag_residue": list(self.imag_residue),
            "converged": self.converged,
            "reports": [r.as_dict() for r in self.reports],
        }


def compute_c123(n: int, k: int, method: Method | str, tol: TolerancePolicy = DEFAULT_TOL) -> IntegralCoefficients:
    """Coefficients of the quadratic form P(phi) = c1|a|^2 + c2|b|^2 + 2 Re(c3 conj(a) b).

    The weights are the Hadamard entries: u = (p + r)/sqrt2 is the hitting series
    for |L>, v = (p - r)/sqrt2 for |R>.
    """
    if n < 2:
        raise ValueError(f"N must be >= 2, got {n}")
    method = Method(method)
    pr = gf_on_circle(method, n, k)
    s = 1.0 / math.sqrt(2.0)

    def u_v(theta):
        p, r = pr(theta)
        return s * (p + r), s * (p - r)

    def f1(theta):
        u, _ = u_v(theta)
        return np.abs(u) ** 2

    def f2(theta):
        _, v = u_v(theta)
        return np.abs(v) ** 2

    def f3(theta):
        u, v = u_v(theta)
        return u * np.conj(v)

    reports = tuple(circle_quadrature(f, tol) for f in (f1, f2, f3))
    vals = [None if not rep.converged else rep.value / TWO_PI for rep in reports]
    c1 = c2 = None
    residue = [0.0, 0.0]
    if vals[0] is not None:
        c1, residue[0] = vals[0].real, abs(vals[0].imag)
    if vals[1] is not None:
        c2, residue[1] = vals[1].real, abs(vals[1].imag)
    if max(residue) > 1e-10:
        log.warning("c1/c2 imaginary residue %.3e (N=%d, k=%d, %s)", max(residue), n, k, method.value)
    return IntegralCoefficients(c1, c2, vals[2], reports, method, n, k, tuple(residue))


def absorption_from_c123(coeffs: IntegralCoefficients, qubit: QubitState) -> float:
    if not coeffs.converged:
        bad = [r.status.value for r in coeffs.reports if not r.converged]
        raise DivergedInput(f"coefficient integrals did not converge: {bad}")
    a, b = qubit.alpha, qubit.beta
    val = coeffs.c1 * abs(a) ** 2 + coeffs.c2 * abs(b) ** 2 + 2.0 * (coeffs.c3 * a.conjugate() * b).real
    if not -1e-8 <= val <= 1.0 + 1e-8:
        log.warning("probability %.12g outside [0, 1] for method %s", val, coeffs.method.value)
    return float(val)


def corollary_p1N(n: int, method: Method | str, tol: TolerancePolicy = DEFAULT_TOL) -> tuple[float | None, QuadratureReport]:
    """P_1^N(|R>) = (1 + (1/2pi) int |r_1^N|^2) / 2; value is None unless the integral converged."""
    if n < 2:
        raise ValueError(f"N must be >= 2, got {n}")
    pr = gf_on_circle(method, n, 1)
    rep = circle_quadrature(lambda th: np.abs(pr(th)[1]) ** 2, tol)
    if not rep.converged:
        return None, rep
    return 0.5 * (1.0 + rep.value.real / TWO_PI), rep


def semi_infinite_closed_form(qubit: QubitState) -> float:
    return 2.0 / math.pi + 2.0 * (1.0 - 2.0 / math.pi) * qubit.overlap().real


def conjecture_sequence(n_max: int) -> list[Fraction]:
    """Exact values of P^{N+1} = (1 + 2 P^N) / (2 + 2 P^N), P^1 = 0, for N = 1..n_max."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    seq = [Fraction(0)]
    while len(seq) < n_max:
        x = seq[-1]
        seq.append((1 + 2 * x) / (2 + 2 * x))
    return seq


def below_inverse_sqrt2(x: Fraction) -> bool:
    """Exact test x < 1/sqrt(2)."""
    return x < 0 or 2 * x * x < 1
