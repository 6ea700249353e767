"""Generating functions ``p_k^N(z)``, ``r_k^N(z)`` of the left-boundary hitting amplitudes.

``p_k`` and ``r_k`` collect the coefficients of the two first-hit operator
components when the walk starts at site ``k``; they obey

    p_k = a z p_{k-1} + c z r_{k-1},     r_k = b z p_{k+1} + d z r_{k+1}

with ``p_1 = z`` and ``r_{N-1} = 0``.  Four evaluators live here:

* ``lemma``  - the two-exponential closed form with coefficients A_z, B_z,
* ``konno``  - the C_z / E_z closed form, evaluated exactly as stated,
* ``solve``  - a dense numeric solve of the recursion (trusted),
* ``series`` - the simulator's hitting streams summed as power series.

Scalar entry points raise :class:`DegeneratePoint`; the ``*_arrays`` variants are
vectorized over ``z`` and return ``nan`` at degenerate nodes instead.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_TOL,
    HADAMARD,
    CoinOperator,
    DegeneratePoint,
    QWError,
    TolerancePolicy,
    as_complex,
)

SQRT2 = math.sqrt(2.0)
DEGENERATE_TOL = 1e-12
MAX_CONDITION = 1e12
POLE_TOL = 1e-14


class Method(str, enum.Enum):
    LEMMA = "lemma"
    KONNO = "konno"
    SOLVE = "solve"
    SERIES = "series"


class SingularSystem(QWError, ArithmeticError):
    def __init__(self, message: str, condition: float = math.inf):
        super().__init__(message)
        self.condition = condition


class PoleHit(QWError, ArithmeticError):
    pass


class ConvergenceError(QWError, ArithmeticError):
    pass


class NoConvergence(QWError, ArithmeticError):
    pass


@dataclass(frozen=True)
class LambdaPair:
    lambda_plus: complex
    lambda_minus: complex


@dataclass(frozen=True)
class GFValue:
    p: complex
    r: complex
    z: complex
    n: int
    k: int
    method: Method

    def as_dict(self) -> dict:
        return {"p": self.p, "r": self.r, "z": self.z, "N": self.n, "k": self.k, "method": self.method.value}


@dataclass(frozen=True)
class LemmaCoefficients:
    A_z: complex
    B_z: complex


@dataclass(frozen=True)
class KonnoCoefficients:
    """C_z and E_z exactly as stated.

    ``bracket`` is the common braced denominator.  When the prefactor
    ``lambda_+^{N-3} - lambda_-^{N-3}`` vanishes identically (N = 3) the braced
    term is dropped, which is how the formula is read to conclude ``r_1^3 = 0``;
    ``indeterminate`` records that the bracket itself was zero too, i.e. the
    stated expression is literally 0/0 there.
    """

    C_z: complex
    E_z: complex
    bracket: complex
    indeterminate: bool = False


@dataclass
class ResidualReport:
    method: Method
    n: int
    max_p_residual: float
    max_r_residual: float
    bc_p1_residual: float
    bc_rN1_residual: float
    sample_points: list = field(default_factory=list)
    p_residuals: list = field(default_factory=list)  # per k = 2..N-1
    r_residuals: list = field(default_factory=list)  # per k = 1..N-2

    def as_dict(self) -> dict:
        return {
            "method": self.method.value,
            "N": self.n,
            "max_p_residual": self.max_p_residual,
            "max_r_residual": self.max_r_residual,
            "bc_p1_residual": self.bc_p1_residual,
            "bc_rN1_residual": self.bc_rN1_residual,
            "sample_points": list(self.sample_points),
            "p_residuals": list(self.p_residuals),
            "r_residuals": list(self.r_residuals),
        }


# --------------------------------------------------------------------------- lambda

def lambda_arrays(z, branch: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized lambda_+, lambda_- with the principal root times ``branch`` (+1 or -1)."""
    z = np.asarray(z, dtype=complex)
    disc = z**4 + 1.0
    root = branch * np.sqrt(disc)
    with np.errstate(divide="ignore", invalid="ignore"):
        denom = SQRT2 * z
        lp = (z * z - 1.0 + root) / denom
        lm = (z * z - 1.0 - root) / denom
    # the discriminant, not its root: a rounded branch point leaves sqrt ~ 1e-8
    bad = (z == 0) | (np.abs(disc) < DEGENERATE_TOL)
    if np.any(bad):
        lp = np.where(bad, np.nan, lp)
        lm = np.where(bad, np.nan, lm)
    return lp, lm


def lambda_pm(z, branch: int = 1) -> LambdaPair:
    z = as_complex(z, "z")
    if z == 0:
        raise DegeneratePoint("lambda is undefined at z = 0", z)
    disc = z**4 + 1.0
    root = branch * cmath.sqrt(disc)
    if abs(disc) < DEGENERATE_TOL:
        raise DegeneratePoint("branch point z^4 = -1 (lambda_+ = lambda_-)", z)
    lp = (z * z - 1.0 + root) / (SQRT2 * z)
    lm = (z * z - 1.0 - root) / (SQRT2 * z)
    return LambdaPair(lp, lm)


# --------------------------------------------------------------------------- lemma

def lemma_coefficients(z, n: int, branch: int = 1) -> LemmaCoefficients:
    if n < 2:
        raise ValueError(f"N must be >= 2, got {n}")
    lam = lambda_pm(z, branch)
    z = complex(z)
    lpn = lam.lambda_plus**n
    lmn = lam.lambda_minus**n
    if abs(lpn - lmn) < DEGENERATE_TOL:
        raise DegeneratePoint(f"lambda_+^N = lambda_-^N at z = {z} (N = {n})", z)
    return LemmaCoefficients(z * lmn / (lmn - lpn), z * lpn / (lpn - lmn))


def lemma_gf(z, n: int, k: int, branch: int = 1) -> GFValue:
    _check_k(n, k)
    co = lemma_coefficients(z, n, branch)
    lam = lambda_pm(z, branch)
    lp, lm = lam.lambda_plus, lam.lambda_minus
    p = co.A_z * lp ** (k - 1) + co.B_z * lm ** (k - 1)
    r = co.A_z * lp ** (k + 1) + co.B_z * lm ** (k + 1)
    return GFValue(p, r, complex(z), n, k, Method.LEMMA)


def lemma_arrays(z, n: int, k: int, branch: int = 1) -> tuple[np.ndarray, np.ndarray]:
    _check_k(n, k)
    z = np.asarray(z, dtype=complex)
    lp, lm = lambda_arrays(z, branch)
    lpn, lmn = lp**n, lm**n
    gap = lmn - lpn
    bad = ~(np.abs(gap) >= DEGENERATE_TOL)
    with np.errstate(divide="ignore", invalid="ignore"):
        A = z * lmn / gap
        B = z * lpn / (-gap)
        p = A * lp ** (k - 1) + B * lm ** (k - 1)
        r = A * lp ** (k + 1) + B * lm ** (k + 1)
    return np.where(bad, np.nan, p), np.where(bad, np.nan, r)


# --------------------------------------------------------------------------- konno

def _konno_parts(lp, lm, z, n):
    """Shared arithmetic for C_z, E_z.  Works on scalars and arrays alike."""
    d2 = lp ** (n - 2) - lm ** (n - 2)
    d3 = lp ** (n - 3) - lm ** (n - 3)
    s2 = lp ** (n - 2) + lm ** (n - 2)
    diff = lp - lm
    sign2 = (-1.0) ** (n - 2)
    sign3 = (-1.0) ** (n - 3)
    bracket = d2 * d2 - (z / SQRT2) * d2 * d3 - sign3 * diff * diff
    return d2, d3, s2, diff, sign2, sign3, bracket


def konno_coefficients(z, n: int, branch: int = 1) -> KonnoCoefficients:
    if n < 3:
        raise ValueError(f"the C_z/E_z formulas need N >= 3, got {n}")
    lam = lambda_pm(z, branch)
    z = complex(z)
    lp, lm = lam.lambda_plus, lam.lambda_minus
    d2, d3, s2, diff, sign2, sign3, bracket = _konno_parts(lp, lm, z, n)
    if abs(d2) < DEGENERATE_TOL:
        raise DegeneratePoint(f"lambda_+^(N-2) = lambda_-^(N-2) at z = {z}", z)
    if n == 3:
        # prefactor lambda_+^0 - lambda_-^0 is identically zero; the braced
        # factor is dropped with it (the bracket is identically zero as well)
        return KonnoCoefficients(
            0j, z / (2.0 * d2) * s2, bracket, indeterminate=abs(bracket) < DEGENERATE_TOL
        )
    if abs(bracket) < DEGENERATE_TOL:
        raise DegeneratePoint(f"braced denominator vanishes at z = {z} (N = {n})", z)
    C = (z * z / SQRT2) * sign2 * d3 / bracket
    E = z / (2.0 * d2) * (2.0 * sign3 * diff * d3 / bracket + s2)
    return KonnoCoefficients(C, E, bracket)


def konno_gf(z, n: int, k: int, branch: int = 1) -> GFValue:
    _check_k(n, k)
    co = konno_coefficients(z, n, branch)
    lam = lambda_pm(z, branch)
    lp, lm = lam.lambda_plus, lam.lambda_minus
    zc = complex(z)
    p = (zc / 2 + co.E_z) * lp ** (k - 1) + (zc / 2 - co.E_z) * lm ** (k - 1)
    r = co.C_z * (lp ** (k - n + 1) - lm ** (k - n + 1))
    return GFValue(p, r, zc, n, k, Method.KONNO)


def konno_arrays(z, n: int, k: int, branch: int = 1) -> tuple[np.ndarray, np.ndarray]:
    if n < 3:
        raise ValueError(f"the C_z/E_z formulas need N >= 3, got {n}")
    _check_k(n, k)
    z = np.asarray(z, dtype=complex)
    lp, lm = lambda_arrays(z, branch)
    d2, d3, s2, diff, sign2, sign3, bracket = _konno_parts(lp, lm, z, n)
    with np.errstate(divide="ignore", invalid="ignore"):
        if n == 3:
            C = np.zeros_like(z)
            E = z / (2.0 * d2) * s2
            bad = ~(np.abs(d2) >= DEGENERATE_TOL)
        else:
            C = (z * z / SQRT2) * sign2 * d3 / bracket
            E = z / (2.0 * d2) * (2.0 * sign3 * diff * d3 / bracket + s2)
            bad = ~((np.abs(d2) >= DEGENERATE_TOL) & (np.abs(bracket) >= DEGENERATE_TOL))
        p = (z / 2 + E) * lp ** (k - 1) + (z / 2 - E) * lm ** (k - 1)
        r = C * (lp ** (k - n + 1) - lm ** (k - n + 1))
    return np.where(bad, np.nan, p), np.where(bad, np.nan, r)


# --------------------------------------------------------------------------- solve

def _solve_system(z: np.ndarray, n: int, coin: CoinOperator):
    """Matrix and right-hand side for a batch of z.

    Unknown layout: x[0 .. n-3] = p_2 .. p_{n-1}, x[n-2 .. 2n-5] = r_1 .. r_{n-2}.
    """
    m = n - 2
    size = 2 * m
    batch = z.shape[0]
    A = np.zeros((batch, size, size), dtype=complex)
    rhs = np.zeros((batch, size), dtype=complex)
    ip = lambda k: k - 2  # noqa: E731
    ir = lambda k: m + k - 1  # noqa: E731
    for k in range(2, n):
        row = ip(k)
        A[:, row, ip(k)] = 1.0
        if k - 1 >= 2:
            A[:, row, ip(k - 1)] = -coin.a * z
        else:
            rhs[:, row] += coin.a * z * z  # p_1 = z
        A[:, row, ir(k - 1)] = -coin.c * z
    for k in range(1, n - 1):
        row = ir(k)
        A[:, row, ir(k)] = 1.0
        A[:, row, ip(k + 1)] = -coin.b * z
        if k + 1 <= n - 2:
            A[:, row, ir(k + 1)] = -coin.d * z
        # r_{n-1} = 0 contributes nothing
    return A, rhs


def _batch_solve(A: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.solve(A, rhs[..., None])[..., 0]
    except np.linalg.LinAlgError:
        pass
    # at least one exactly singular system: solve row by row, nan where singular
    x = np.full(rhs.shape, np.nan, dtype=complex)
    for i in range(A.shape[0]):
        try:
            x[i] = np.linalg.solve(A[i], rhs[i])
        except np.linalg.LinAlgError:
            pass
    return x


def solve_arrays(
    z, n: int, coin: CoinOperator = HADAMARD, check: bool = True, chunk: int = 4096
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Solve the recursion for every z in a batch.

    Returns ``(p, r, cond)`` with ``p[:, k-1]``, ``r[:, k-1]`` for k = 1..N-1 and the
    2-norm condition number of each system (1 for N = 2).  Rows whose condition
    exceeds ``MAX_CONDITION`` are ``nan`` when ``check`` is true.
    """
    if n < 2:
        raise ValueError(f"N must be >= 2, got {n}")
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    batch = z.shape[0]
    p = np.zeros((batch, n - 1), dtype=complex)
    r = np.zeros((batch, n - 1), dtype=complex)
    p[:, 0] = z
    cond = np.ones(batch)
    if n == 2:
        return p, r, cond
    m = n - 2
    for start in range(0, batch, chunk):
        sl = slice(start, start + chunk)
        A, rhs = _solve_system(z[sl], n, coin)
        if check:
            cond[sl] = np.linalg.cond(A)
        x = _batch_solve(A, rhs)
        if check:
            cond[sl] = np.where(np.isfinite(x).all(axis=1), cond[sl], np.inf)
        p[sl, 1:] = x[:, :m]
        r[sl, : n - 2] = x[:, m:]
    if check:
        bad = ~(cond <= MAX_CONDITION)
        if np.any(bad):
            p[bad] = np.nan
            r[bad] = np.nan
    return p, r, cond


def solve_gf(
    z, n: int, coin: CoinOperator = HADAMARD, tol: TolerancePolicy = DEFAULT_TOL
) -> list[GFValue]:
    z = as_complex(z, "z")
    if z == 0:
        raise DegeneratePoint("solve needs z != 0", z)
    p, r, cond = solve_arrays(np.array([z]), n, coin, check=True)
    if not cond[0] <= MAX_CONDITION:
        c = float(cond[0])
        raise SingularSystem(f"condition estimate {c:.3e} exceeds {MAX_CONDITION:.0e} at z = {z}", c)
    values = [GFValue(complex(p[0, k - 1]), complex(r[0, k - 1]), z, n, k, Method.SOLVE) for k in range(1, n)]
    rep = _residuals(values, z, n, coin, Method.SOLVE)
    worst = max(rep.max_p_residual, rep.max_r_residual, rep.bc_p1_residual, rep.bc_rN1_residual)
    if not worst < tol.residual_tol:
        raise SingularSystem(f"post-solve recursion residual {worst:.3e} at z = {z}")
    return values


# --------------------------------------------------------------------------- series

def gf_from_series(hits, z, component_weights=(1.0, 0.0), tol: TolerancePolicy = DEFAULT_TOL) -> complex:
    """``sum_n <w, amp_n> z^n`` over a hitting stream.

    ``hits`` is a :class:`~qwabsorb.simulator.HittingSeries` (which carries the
    bound on the unabsorbed remainder) or a plain sequence of records, in which
    case the stream is taken as complete.  The tail beyond the last simulated
    step is bounded by Cauchy-Schwarz: ``|w| sqrt(S) |z|^(T+1) / sqrt(1 - |z|^2)``.
    """
    z = as_complex(z, "z")
    if not abs(z) < 1.0:
        raise ValueError(f"series evaluation needs |z| < 1, got |z| = {abs(z)}")
    w = np.asarray(component_weights, dtype=complex)
    times = getattr(hits, "times", None)
    if times is None:
        recs = list(hits)
        times = np.array([h.time for h in recs], dtype=np.int64)
        amps = np.array([h.amplitude for h in recs], dtype=complex).reshape(-1, 2)
        residual, last = 0.0, int(times[-1]) if len(times) else 0
    else:
        amps = hits.amplitudes
        residual, last = hits.residual_norm2, hits.last_time
    if len(times) == 0 and residual == 0.0:
        return 0j
    terms = (amps @ w) * z ** times.astype(float) if len(times) else np.zeros(0, dtype=complex)
    tail = float(np.linalg.norm(w)) * math.sqrt(residual) * abs(z) ** (last + 1) / math.sqrt(1.0 - abs(z) ** 2)
    if tail > tol.quad_tol:
        raise ConvergenceError(f"series tail bound {tail:.3e} exceeds {tol.quad_tol:.1e}")
    return complex(np.sum(terms))


def gf_from_streams(hits_l, hits_r, z, n: int, k: int, coin: CoinOperator = HADAMARD,
                    tol: TolerancePolicy = DEFAULT_TOL) -> GFValue:
    """(p, r) from the left-boundary streams of the |L> and |R> starts.

    A first hit at 0 after starting in ``phi`` has amplitude
    ``a_n (a alpha + b beta) + c_n (c alpha + d beta)``, so the two streams are
    ``U^T (p, r)`` coefficientwise and ``(p, r) = conj(U) (G_L, G_R)``.
    """
    g_l = gf_from_series(hits_l, z, (1.0, 0.0), tol)
    g_r = gf_from_series(hits_r, z, (1.0, 0.0), tol)
    p, r = coin.matrix.conj() @ np.array([g_l, g_r])
    return GFValue(complex(p), complex(r), complex(z), n, k, Method.SERIES)


# --------------------------------------------------------------------------- residuals

def _check_k(n: int, k: int) -> None:
    if n < 2:
        raise ValueError(f"N must be >= 2, got {n}")
    if not 1 <= k <= n - 1:
        raise ValueError(f"k={k} outside 1..{n - 1}")


def gf_values(method: Method | str, z, n: int, coin: CoinOperator = HADAMARD,
              tol: TolerancePolicy = DEFAULT_TOL) -> list[GFValue]:
    """Values for k = 1..N-1 by one of the closed-form or solve methods."""
    method = Method(method)
    if method is Method.SOLVE:
        return solve_gf(z, n, coin, tol)
    if method is Method.LEMMA:
        return [lemma_gf(z, n, k) for k in range(1, n)]
    if method is Method.KONNO:
        return [konno_gf(z, n, k) for k in range(1, n)]
    raise ValueError(f"method {method.value!r} has no pointwise evaluator")


def _residuals(values: list[GFValue], z: complex, n: int, coin: CoinOperator, method: Method) -> ResidualReport:
    p = {v.k: v.p for v in values}
    r = {v.k: v.r for v in values}
    pres = [abs(p[k] - coin.a * z * p[k - 1] - coin.c * z * r[k - 1]) for k in range(2, n)]
    rres = [abs(r[k] - coin.b * z * p[k + 1] - coin.d * z * r[k + 1]) for k in range(1, n - 1)]
    return ResidualReport(
        method,
        n,
        max(pres, default=0.0),
        max(rres, default=0.0),
        abs(p[1] - z),
        abs(r[n - 1]),
        [z],
        pres,
        rres,
    )


def recursion_residual(method: Method | str, z, n: int, coin: CoinOperator = HADAMARD,
                       tol: TolerancePolicy = DEFAULT_TOL) -> ResidualReport:
    """Plug a method's values into every recursion equation and both boundary conditions."""
    method = Method(method)
    z = as_complex(z, "z")
    return _residuals(gf_values(method, z, n, coin, tol), z, n, coin, method)


# --------------------------------------------------------------------------- rational r_1^3

R13_DENOMINATOR = (2.0, 0.0, -3.0, 0.0, 2.0)  # 2 z^4 - 3 z^2 + 2, highest degree first


def r13_rational(z) -> complex:
    z = as_complex(z, "z")
    den = 2 * z**4 - 3 * z**2 + 2
    if abs(den) < POLE_TOL:
        raise PoleHit(f"z = {z} is a pole of z^3 / (2 z^4 - 3 z^2 + 2)")
    return z**3 / den


def r13_rational_arrays(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    den = 2 * z**4 - 3 * z**2 + 2
    with np.errstate(divide="ignore", invalid="ignore"):
        out = z**3 / den
    return np.where(np.abs(den) < POLE_TOL, np.nan, out)


# --------------------------------------------------------------------------- roots

@dataclass(frozen=True)
class Root:
    root: complex
    modulus: float


def _horner(coeffs, x):
    val = 0j
    der = 0j
    for c in coeffs:
        der = der * x + val
        val = val * x + c
    return val, der


def denominator_roots(coeffs, max_iter: int = 500, tol: float = 1e-15, newton_steps: int = 3) -> list[Root]:
    """All complex roots by Aberth-Ehrlich iteration, then a few Newton polishing steps.

    ``coeffs`` are real, highest degree first.
    """
    c = [float(x) for x in coeffs]
    while c and c[0] == 0.0:
        c.pop(0)
    deg = len(c) - 1
    if deg < 1:
        raise ValueError("need a polynomial of degree >= 1 with nonzero leading coefficient")
    lead = c[0]
    mon = [x / lead for x in c]
    # starting points on a circle of Cauchy-bound radius, rotated off the axes
    radius = 1.0 + max(abs(x) for x in mon[1:])
    z = np.array([radius * 0.5 * cmath.exp(1j * (2 * math.pi * j / deg + 0.4)) for j in range(deg)])
    for _ in range(max_iter):
        moved = 0.0
        for i in range(deg):
            val, der = _horner(mon, z[i])
            if val == 0:
                continue
            ratio = val / der if der != 0 else val
            s = sum(1.0 / (z[i] - z[j]) for j in range(deg) if j != i)
            step = ratio / (1.0 - ratio * s)
            z[i] -= step
            moved = max(moved, abs(step) / max(1.0, abs(z[i])))
        if moved < tol:
            break
    # clustered roots may keep jittering above tol; the residual test below decides
    out = []
    for zi in z:
        zi = complex(zi)
        for _ in range(newton_steps):
            val, der = _horner(c, zi)
            if der == 0 or val == 0:
                break
            nxt = zi - val / der
            if abs(_horner(c, nxt)[0]) > abs(val):
                break
            zi = nxt
        # backward error: absolute near the origin, relative for large roots
        scale = sum(abs(x) * max(1.0, abs(zi)) ** (deg - i) for i, x in enumerate(c))
        if abs(_horner(c, zi)[0]) >= 1e-12 * scale:
            raise NoConvergence(f"root {zi} has residual {abs(_horner(c, zi)[0]):.3e}")
        out.append(Root(zi, abs(zi)))
    out.sort(key=lambda rt: (round(rt.root.real, 12), round(rt.root.imag, 12)))
    return out
