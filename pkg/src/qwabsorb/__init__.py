"""Absorption probabilities of the Hadamard walk with absorbing boundaries, computed three ways."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    DEFAULT_TOL,
    HADAMARD,
    L_STATE,
    R_STATE,
    CoinOperator,
    DegeneratePoint,
    Finite,
    NormViolation,
    QubitState,
    SemiInfinite,
    TolerancePolicy,
    WalkConfig,
    check_unitarity,
    hadamard_coin,
    make_qubit,
)
