"""Exact time-domain evolution of the coined walk with absorbing boundaries.

Step rule: ``psi'(x) = P psi(x+1) + Q psi(x-1)`` where ``P = [[a, b], [0, 0]]``
keeps the top row of the coin (left movers) and ``Q = [[0, 0], [c, d]]`` the
bottom row (right movers).  After every step the amplitude sitting on an
absorbing site is measured out and removed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .core import (
    DEFAULT_TOL,
    CoinOperator,
    Finite,
    QWError,
    SemiInfinite,
    TolerancePolicy,
    WalkConfig,
)

# complex128 sites (two components each); 10**7 sites is ~320 MB of state.
MAX_SITES = 10**7


class CapacityError(QWError, MemoryError):
    pass


class Site(str, enum.Enum):
    LEFT = "LeftBoundary"
    RIGHT = "RightBoundary"


@dataclass(frozen=True)
class WaveState:
    amplitudes: np.ndarray  # shape (X_max + 1, 2); column 0 = L, column 1 = R
    time: int = 0

    def norm2(self) -> float:
        a = self.amplitudes
        return float(np.vdot(a[:, 0], a[:, 0]).real + np.vdot(a[:, 1], a[:, 1]).real)

    @classmethod
    def localized(cls, n_sites: int, site: int, vector) -> "WaveState":
        amp = np.zeros((n_sites, 2), dtype=complex)
        amp[site] = vector
        return cls(amp, 0)


@dataclass(frozen=True)
class HittingRecord:
    time: int
    site: Site
    amplitude: np.ndarray

    @property
    def prob(self) -> float:
        return float(np.vdot(self.amplitude, self.amplitude).real)


@dataclass
class HittingSeries:
    """Column-stored hitting stream for one boundary.

    ``times`` is strictly increasing; ``amplitudes[i]`` is the 2-vector removed
    at ``times[i]``.  ``residual_norm2`` bounds the squared norm of every hit that
    could still occur after ``last_time`` (it is the survival at the end of the run).
    """

    site: Site
    times: np.ndarray
    amplitudes: np.ndarray
    last_time: int
    residual_norm2: float

    def __len__(self) -> int:
        return len(self.times)

    def __iter__(self) -> Iterator[HittingRecord]:
        for t, a in zip(self.times, self.amplitudes):
            yield HittingRecord(int(t), self.site, a.copy())

    def total_prob(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass(frozen=True)
class AbsorptionOutcome:
    p_left: float
    p_right: float
    survival: float
    steps_used: int
    converged: bool

    def as_dict(self) -> dict:
        return {
            "p_left": self.p_left,
            "p_right": self.p_right,
            "survival": self.survival,
            "steps_used": self.steps_used,
            "converged": self.converged,
        }


@dataclass
class FiniteRun:
    outcome: AbsorptionOutcome
    left: HittingSeries
    right: HittingSeries = field(repr=False)

    def records(self) -> Iterator[HittingRecord]:
        """All hits in time order, left before right within a step."""
        li = ri = 0
        lt, rt = self.left.times, self.right.times
        while li < len(lt) or ri < len(rt):
            if ri >= len(rt) or (li < len(lt) and lt[li] <= rt[ri]):
                yield HittingRecord(int(lt[li]), Site.LEFT, self.left.amplitudes[li].copy())
                li += 1
            else:
                yield HittingRecord(int(rt[ri]), Site.RIGHT, self.right.amplitudes[ri].copy())
                ri += 1


def step_walk(state: WaveState, coin: CoinOperator) -> WaveState:
    """One unitary step; nothing is absorbed here."""
    mixed = coin.matrix @ state.amplitudes.T
    new = np.zeros_like(state.amplitudes)
    new[:-1, 0] = mixed[0, 1:]
    new[1:, 1] = mixed[1, :-1]
    return WaveState(new, state.time + 1)


class _Kernel:
    """In-place stepping on a (2, n_sites) buffer; same arithmetic as :func:`step_walk`."""

    def __init__(self, n_sites: int, coin: CoinOperator):
        self.u = coin.matrix
        self.psi = np.zeros((2, n_sites), dtype=complex)
        self._mixed = np.zeros((2, n_sites), dtype=complex)

    def step(self, hi: int | None = None) -> None:
        # hi: last site whose new value is needed; sites above it are left stale
        psi = self.psi
        size = psi.shape[1]
        n = size if hi is None else min(hi + 2, size)
        mixed = self._mixed[:, :n]
        np.matmul(self.u, psi[:, :n], out=mixed)
        psi[0, : n - 1] = mixed[0, 1:n]
        if n == size:
            psi[0, n - 1] = 0.0
        psi[1, 1:n] = mixed[1, : n - 1]
        psi[1, 0] = 0.0

    def take(self, x: int) -> tuple[complex, complex]:
        psi = self.psi
        v = (psi[0, x].item(), psi[1, x].item())
        psi[0, x] = 0.0
        psi[1, x] = 0.0
        return v

    def norm2(self) -> float:
        flat = self.psi.ravel()
        return float(np.vdot(flat, flat).real)


def _abs2(v: tuple[complex, complex]) -> float:
    return v[0].real ** 2 + v[0].imag ** 2 + v[1].real ** 2 + v[1].imag ** 2


def _series(site: Site, times: list, amps: list, last_time: int, residual: float) -> HittingSeries:
    return HittingSeries(
        site,
        np.asarray(times, dtype=np.int64),
        np.asarray(amps, dtype=complex).reshape(-1, 2),
        last_time,
        residual,
    )


def run_finite_absorption(
    config: WalkConfig, tol: TolerancePolicy = DEFAULT_TOL, record_hits: bool = True
) -> FiniteRun:
    """Evolve until the surviving norm drops below ``tol.survival_tol``.

    Non-convergence within ``tol.max_steps`` is not an exception; it is reported
    through ``outcome.converged``.
    """
    if not isinstance(config.boundary, Finite):
        raise ValueError("run_finite_absorption needs a Finite boundary")
    n = config.boundary.n
    ker = _Kernel(n + 1, config.coin)
    ker.psi[:, config.start_k] = config.qubit.vector

    p_left = p_right = 0.0
    lt, la, rt, ra = [], [], [], []
    survival = ker.norm2()
    steps = 0
    converged = False
    while steps < tol.max_steps:
        ker.step()
        steps += 1
        hit_l = ker.take(0)
        hit_r = ker.take(n)
        pl = _abs2(hit_l)
        pr = _abs2(hit_r)
        p_left += pl
        p_right += pr
        if record_hits:
            if pl > 0.0:
                lt.append(steps)
                la.append(hit_l)
            if pr > 0.0:
                rt.append(steps)
                ra.append(hit_r)
        survival = ker.norm2()
        if survival < tol.survival_tol:
            converged = True
            break

    outcome = AbsorptionOutcome(p_left, p_right, survival, steps, converged)
    return FiniteRun(
        outcome,
        _series(Site.LEFT, lt, la, steps, survival),
        _series(Site.RIGHT, rt, ra, steps, survival),
    )


def hitting_amplitude_series(config: WalkConfig, tol: TolerancePolicy = DEFAULT_TOL) -> HittingSeries:
    return run_finite_absorption(config, tol).left


@dataclass(frozen=True)
class SemiInfiniteRun:
    outcome: AbsorptionOutcome
    cumulative: np.ndarray  # cumulative[t-1] = absorbed probability up to time t


def _run_semi(config: WalkConfig, t_max: int, survival_tol: float, max_sites: int) -> SemiInfiniteRun:
    if not isinstance(config.boundary, SemiInfinite):
        raise ValueError("semi-infinite run needs a SemiInfinite boundary")
    if t_max < 1:
        raise ValueError(f"t_max must be >= 1, got {t_max}")
    k = config.start_k
    x_max = k + t_max + 1
    if x_max + 1 > max_sites:
        raise CapacityError(f"lattice of {x_max + 1} sites exceeds the bound {max_sites}")
    ker = _Kernel(x_max + 1, config.coin)
    ker.psi[:, k] = config.qubit.vector

    cum = np.empty(t_max)
    p_left = 0.0
    inc = 0.0
    for t in range(1, t_max + 1):
        # amplitude above t_max - t cannot reach site 0 by t_max
        ker.step(hi=min(k + t, t_max - t + 1))
        hit = ker.take(0)
        inc = _abs2(hit)
        p_left += inc
        cum[t - 1] = p_left
    outcome = AbsorptionOutcome(p_left, 0.0, 1.0 - p_left, t_max, inc < survival_tol)
    return SemiInfiniteRun(outcome, cum)


def run_semi_infinite_absorption(
    config: WalkConfig,
    t_max: int,
    tol: TolerancePolicy = DEFAULT_TOL,
    max_sites: int = MAX_SITES,
) -> AbsorptionOutcome:
    return _run_semi(config, t_max, tol.survival_tol, max_sites).outcome


def richardson_semi_infinite(
    config: WalkConfig,
    t_max: int,
    tol: TolerancePolicy = DEFAULT_TOL,
    order: float | None = None,
) -> tuple[AbsorptionOutcome, float]:
    """Outcome at ``t_max`` plus a Richardson estimate assuming error ~ t**-order.

    With ``order=None`` the order is estimated from the absorbed mass at t/4, t/2
    and t (for the Hadamard walk from site 1 it comes out close to 2).
    """
    if t_max < 4:
        raise ValueError("extrapolation needs t_max >= 4")
    run = _run_semi(config, t_max, tol.survival_tol, MAX_SITES)
    p_full = run.cumulative[-1]
    p_half = run.cumulative[t_max // 2 - 1]
    if order is None:
        p_quarter = run.cumulative[t_max // 4 - 1]
        d1, d2 = p_half - p_quarter, p_full - p_half
        if d1 == 0.0 or d2 == 0.0 or d1 / d2 <= 1.0:
            return run.outcome, float(p_full)
        ratio = d1 / d2
    else:
        ratio = (t_max / (t_max // 2)) ** order
    return run.outcome, float(p_full + (p_full - p_half) / (ratio - 1.0))
