"""Shared domain types: qubit states, coin operators, walk geometry, tolerances."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

NORM_TOL = 1e-12
UNITARITY_TOL = 1e-12


class QWError(Exception):
    """Base class for all errors raised by this package."""


class NormViolation(QWError, ValueError):
    def __init__(self, norm: float):
        super().__init__(f"|alpha|^2 + |beta|^2 = {norm!r}, expected 1")
        self.norm = norm


class NonUnitary(QWError, ValueError):
    def __init__(self, residual: float):
        super().__init__(f"coin is not unitary: max |U U^dagger - I| = {residual:.3e}")
        self.residual = residual


class NonFinite(QWError, ValueError):
    pass


class DegeneratePoint(QWError, ArithmeticError):
    """A closed-form evaluation hit a point where it is undefined (branch point, 0/0, ...)."""

    def __init__(self, message: str, z: complex | None = None):
        super().__init__(message)
        self.z = z


def as_complex(x, name: str = "value") -> complex:
    """Coerce to a finite Python complex."""
    c = complex(x)
    if not cmath.isfinite(c):
        raise NonFinite(f"{name} must be finite, got {c!r}")
    return c


@dataclass(frozen=True)
class QubitState:
    """Initial coin state ``alpha|L> + beta|R>``; component 0 is L, component 1 is R."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        a = as_complex(self.alpha, "alpha")
        b = as_complex(self.beta, "beta")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        norm = abs(a) ** 2 + abs(b) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise NormViolation(norm)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)

    def overlap(self) -> complex:
        """conj(alpha) * beta."""
        return self.alpha.conjugate() * self.beta

    def with_phase(self, w: complex) -> "QubitState":
        return QubitState(w * self.alpha, w * self.beta)


def make_qubit(alpha, beta) -> QubitState:
    return QubitState(alpha, beta)


L_STATE = QubitState(1.0, 0.0)
R_STATE = QubitState(0.0, 1.0)


def check_unitarity(a, b=None, c=None, d=None) -> float:
    """Max entrywise residual of ``U U^dagger - I``.

    Accepts either a :class:`CoinOperator`, a 2x2 array, or the four entries.
    """
    if b is None:
        m = a.matrix if isinstance(a, CoinOperator) else np.asarray(a, dtype=complex)
    else:
        m = np.array([[a, b], [c, d]], dtype=complex)
    return float(np.max(np.abs(m @ m.conj().T - np.eye(2))))


@dataclass(frozen=True)
class CoinOperator:
    """Row-major 2x2 unitary ``[[a, b], [c, d]]``."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, as_complex(getattr(self, name), name))
        res = check_unitarity(self.a, self.b, self.c, self.d)
        if res > UNITARITY_TOL:
            raise NonUnitary(res)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def is_real(self) -> bool:
        return all(getattr(self, n).imag == 0.0 for n in "abcd")


def hadamard_coin() -> CoinOperator:
    s = 1.0 / math.sqrt(2.0)
    return CoinOperator(s, s, s, -s)


HADAMARD = hadamard_coin()


@dataclass(frozen=True)
class Finite:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"finite lattice needs N >= 2, got {self.n!r}")


@dataclass(frozen=True)
class SemiInfinite:
    pass


@dataclass(frozen=True)
class WalkConfig:
    boundary: Finite | SemiInfinite
    start_k: int
    qubit: QubitState = R_STATE
    coin: CoinOperator = field(default=HADAMARD)

    def __post_init__(self):
        k = self.start_k
        if int(k) != k:
            raise ValueError(f"start_k must be an integer, got {k!r}")
        if isinstance(self.boundary, Finite):
            if not 1 <= k <= self.boundary.n - 1:
                raise ValueError(f"start_k={k} outside 1..{self.boundary.n - 1}")
        elif isinstance(self.boundary, SemiInfinite):
            if k < 1:
                raise ValueError(f"start_k={k} must be >= 1")
        else:
            raise TypeError(f"unknown boundary {self.boundary!r}")

    @classmethod
    def finite(cls, n: int, k: int = 1, qubit: QubitState = R_STATE, coin: CoinOperator = HADAMARD):
        return cls(Finite(n), k, qubit, coin)

    @classmethod
    def semi_infinite(cls, k: int = 1, qubit: QubitState = R_STATE, coin: CoinOperator = HADAMARD):
        return cls(SemiInfinite(), k, qubit, coin)


@dataclass(frozen=True)
class TolerancePolicy:
    survival_tol: float = 1e-14
    max_steps: int = 10**6
    quad_tol: float = 1e-10
    max_grid_doublings: int = 16
    residual_tol: float = 1e-12

    def __post_init__(self):
        for name in ("survival_tol", "quad_tol", "residual_tol"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")
        if int(self.max_steps) != self.max_steps or self.max_steps < 1:
            raise ValueError(f"max_steps must be >= 1, got {self.max_steps!r}")
        if int(self.max_grid_doublings) != self.max_grid_doublings or self.max_grid_doublings < 1:
            raise ValueError(f"max_grid_doublings must be >= 1, got {self.max_grid_doublings!r}")

    def as_dict(self) -> dict:
        return {
            "survival_tol": self.survival_tol,
            "max_steps": int(self.max_steps),
            "quad_tol": self.quad_tol,
            "max_grid_doublings": int(self.max_grid_doublings),
            "residual_tol": self.residual_tol,
        }


DEFAULT_TOL = TolerancePolicy()
