"""Cross-method adjudication of the absorption recursion.

Tier 0 is the time-domain simulator, Tier 1 the numeric solve of the
generating-function recursion followed by quadrature, Tier 2 the closed forms
(lemma, Konno C_z/E_z, the rational r_1^3 and its antiderivative).  Closed forms
are measured against the lower tiers, never the other way round.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .absorption import (
    QuadStatus,
    absorption_from_c123,
    below_inverse_sqrt2,
    circle_quadrature,
    compute_c123,
    conjecture_sequence,
    corollary_p1N,
)
from .core import DEFAULT_TOL, L_STATE, R_STATE, TolerancePolicy, WalkConfig
from .genfunc import (
    R13_DENOMINATOR,
    DegeneratePoint,
    Method,
    denominator_roots,
    gf_from_streams,
    konno_coefficients,
    konno_gf,
    lambda_arrays,
    lambda_pm,
    lemma_arrays,
    lemma_gf,
    r13_rational,
    r13_rational_arrays,
    recursion_residual,
    solve_arrays,
    solve_gf,
)
from .simulator import run_finite_absorption

DEFAULT_SEED = 0x5EED
VERDICT_TOL = 1e-6
ANNULUS = (0.5, 1.5)
EXCLUSION = 1e-3
POLE_EXCLUSION = 0.05
FD_STEP = 1e-6
SQRT7 = math.sqrt(7.0)
BRANCH_POINTS = np.exp(1j * np.pi * (2 * np.arange(4) + 1) / 4)  # z^4 = -1


class Verdict(str, enum.Enum):
    MATCHES_RECURSION = "MatchesRecursion"
    MATCHES_CLOSED_FORM = "MatchesPaperClaim"
    INCONCLUSIVE = "Inconclusive"


# Claims under test, stated as formulas.
CLAIMS = {
    "recursion": {
        "statement": "P_1^{N+1}(|R>) = (1 + 2 P_1^N(|R>)) / (2 + 2 P_1^N(|R>)), P_1^1 = 0",
        "source": "Ambainis, Bach, Nayak, Vishwanath, Watrous, STOC 2001, Conjecture 11",
    },
    "recursion_N3": {
        "statement": "P_1^3(|R>) = 2/3 (the recursion evaluated at N = 3)",
        "value": "2/3",
    },
    "closed_form_N3": {
        "statement": "P_1^3(|R>) = (1 + 0)/2 = 1/2, from int_0^{2pi} r_1^3(e^{it}) r_1^3(e^{-it}) dt = 0",
        "value": "1/2",
    },
    "semi_infinite": {
        "statement": "P_1^inf(phi) = 2/pi + 2(1 - 2/pi) Re(conj(alpha) beta)",
    },
    "limit": {
        "statement": "P_1^N(|R>) -> 1/sqrt(2) as N -> infinity",
    },
    "lambda_identities": {
        "statement": "lambda_+ lambda_- = -1, lambda_+ + lambda_- = sqrt(2)(z - 1/z)",
    },
    "konno_r13": {
        "statement": "C_z/E_z closed form (Konno-Namiki-Soshi-Sudbury 2003, Theorem 2) with N = 3 gives r_1^3(z) = 0",
    },
    "boundary_conditions": {
        "statement": "p_1^N(z) = z, r_{N-1}^N(z) = 0",
    },
    "lemma_form": {
        "statement": "p_k = A_z l+^{k-1} + B_z l-^{k-1}, r_k = A_z l+^{k+1} + B_z l-^{k+1}, "
                     "A_z = z l-^N/(l-^N - l+^N), B_z = z l+^N/(l+^N - l-^N)",
    },
    "r13_rational": {
        "statement": "r_1^3(z) = z^3 / (2 z^4 - 3 z^2 + 2)",
    },
    "r13_antiderivative": {
        "statement": "F(t) = -(-4 + 3w)/(14(-3w + 2w^2 + 2)) + 3 log(-4iw - 3i + sqrt7)/(14 sqrt7) "
                     "- 3 log(4iw - 3i + sqrt7)/(14 sqrt7), w = e^{2it}; F(2pi) - F(0) = 0",
    },
    "theorem_c123": {
        "statement": "P_k^N(phi) = c1 |alpha|^2 + c2 |beta|^2 + 2 Re(c3 conj(alpha) beta) for every k",
    },
}


def _cite(*keys: str) -> list[dict]:
    return [{"id": k, **CLAIMS[k]} for k in keys]


# --------------------------------------------------------------------------- sampling

def sample_annulus(count: int, seed: int = DEFAULT_SEED, n_values=(), r_min: float = ANNULUS[0],
                   r_max: float = ANNULUS[1]) -> np.ndarray:
    """Seeded points in r_min <= |z| <= r_max away from branch points.

    Points within EXCLUSION of a branch point (z^4 = -1), or where
    |lambda_+^N - lambda_-^N| < EXCLUSION for any N in ``n_values``, are rejected.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        batch = max(16, 2 * (count - len(out)))
        rad = rng.uniform(r_min, r_max, batch)
        ang = rng.uniform(0.0, 2 * math.pi, batch)
        z = rad * np.exp(1j * ang)
        ok = np.min(np.abs(z[:, None] - BRANCH_POINTS[None, :]), axis=1) > EXCLUSION
        lp, lm = lambda_arrays(z)
        for n in n_values:
            ok &= np.abs(lp**n - lm**n) > EXCLUSION
        out.extend(complex(v) for v in z[ok])
    return np.array(out[:count])


# --------------------------------------------------------------------------- fragments

def check_lambda_identities(samples: int = 1000, seed: int = DEFAULT_SEED) -> dict:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    z = sample_annulus(samples, seed)
    prod = sumr = 0.0
    for zi in z:
        lam = lambda_pm(zi)
        prod = max(prod, abs(lam.lambda_plus * lam.lambda_minus + 1.0))
        sumr = max(sumr, abs(lam.lambda_plus + lam.lambda_minus - math.sqrt(2.0) * (complex(zi) - 1.0 / complex(zi))))
    return {
        "samples": samples,
        "seed": seed,
        "max_product_residual": prod,
        "max_sum_residual": sumr,
        "passed": bool(max(prod, sumr) < 1e-12),
        "claims": _cite("lambda_identities"),
    }


def demonstrate_konno_flaw(samples: int = 50, seed: int = DEFAULT_SEED, tol: TolerancePolicy = DEFAULT_TOL) -> dict:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    z = sample_annulus(samples, seed, n_values=(1,))
    max_c = max_r = max_bracket = 0.0
    indeterminate = 0
    min_solve_r = math.inf
    for zi in z:
        co = konno_coefficients(zi, 3)
        max_c = max(max_c, abs(co.C_z))
        max_bracket = max(max_bracket, abs(co.bracket))
        indeterminate += co.indeterminate
        max_r = max(max_r, abs(konno_gf(zi, 3, 1).r))
        min_solve_r = min(min_solve_r, abs(solve_gf(zi, 3, tol=tol)[0].r))
    r_i = solve_gf(1j, 3, tol=tol)[0].r
    # the same closed form for N >= 4, pushed through the quadrature
    higher = []
    rec = conjecture_sequence(6)
    for n in (4, 5, 6):
        val, rep = corollary_p1N(n, Method.KONNO, tol)
        higher.append({
            "N": n,
            "konno_corollary": val,
            "status": rep.status.value,
            "recursion": rec[n - 1],
            "delta_vs_recursion": None if val is None else abs(val - float(rec[n - 1])),
        })
    return {
        "samples": samples,
        "seed": seed,
        "max_abs_C_z_N3": max_c,
        "max_abs_konno_r13": max_r,
        "max_abs_bracket_N3": max_bracket,
        "bracket_zero_count_N3": int(indeterminate),
        "solve_r13_at_i": r_i,
        "abs_solve_r13_at_i": abs(r_i),
        "min_abs_solve_r13_over_samples": min_solve_r,
        "solve_r12_zero": abs(solve_gf(0.7, 2, tol=tol)[0].r) == 0.0,
        "konno_N_ge_4": higher,
        "conclusion": (
            f"At N = 3 the C_z prefactor vanishes identically (max |C_z| = {max_c:.3e}), so the closed form "
            f"gives r_1^3 = 0, while the recursion solve gives |r_1^3(i)| = {abs(r_i):.15g}. "
            f"The braced denominator of C_z is also zero at {int(indeterminate)}/{samples} samples "
            f"(max |bracket| = {max_bracket:.3e}): the stated expression is 0/0 at N = 3. "
            "For N = 4..6 the same closed form reproduces the recursion values to the deltas listed."
        ),
        "claims": _cite("konno_r13", "boundary_conditions"),
    }


def lemma_checks(n_values=(3, 4, 5, 8), samples: int = 100, seed: int = DEFAULT_SEED,
                 residual_samples: int = 10) -> dict:
    """Boundary conditions of the lemma form, plus its recursion residuals (reported, not judged)."""
    bc = []
    residuals = []
    for n in n_values:
        z = sample_annulus(samples, seed + n, n_values=(n,))
        p, r = lemma_arrays(z, n, 1)
        _, r_last = lemma_arrays(z, n, n - 1)
        bc.append({
            "N": n,
            "samples": samples,
            "max_bc_p1_residual": float(np.max(np.abs(p - z))),
            "max_bc_rN1_residual": float(np.max(np.abs(r_last))),
        })
        for zi in z[:residual_samples]:
            rep = recursion_residual(Method.LEMMA, zi, n)
            residuals.append({
                "N": n,
                "z": complex(zi),
                "max_p_residual": rep.max_p_residual,
                "max_r_residual": rep.max_r_residual,
            })
    at_i = lemma_gf(1j, 3, 1).r
    return {
        "boundary_conditions": bc,
        "max_bc_residual": max(max(b["max_bc_p1_residual"], b["max_bc_rN1_residual"]) for b in bc),
        "lemma_r13_at_i": at_i,
        "r13_rational_at_i": r13_rational(1j),
        "lemma_vs_rational_at_i": abs(at_i - r13_rational(1j)),
        "recursion_residuals": residuals,
        "max_recursion_residual": max(max(x["max_p_residual"], x["max_r_residual"]) for x in residuals),
        "claims": _cite("lemma_form", "boundary_conditions", "r13_rational"),
    }


def bc_checks(n_values=(3, 4, 5, 8), samples: int = 20, seed: int = DEFAULT_SEED,
              tol: TolerancePolicy = DEFAULT_TOL) -> dict:
    out = {}
    for method in (Method.LEMMA, Method.KONNO, Method.SOLVE):
        rows = []
        for n in n_values:
            z = sample_annulus(samples, seed + 100 + n, n_values=(n, n - 2, max(n - 3, 1)))
            worst = {"max_p_residual": 0.0, "max_r_residual": 0.0, "bc_p1_residual": 0.0, "bc_rN1_residual": 0.0}
            skipped = 0
            for zi in z:
                try:
                    rep = recursion_residual(method, zi, n, tol=tol)
                except DegeneratePoint:
                    skipped += 1
                    continue
                for key in worst:
                    worst[key] = max(worst[key], getattr(rep, key))
            rows.append({"N": n, "samples": samples, "skipped": skipped, **worst})
        out[method.value] = rows
    out["claims"] = _cite("boundary_conditions")
    return out


def pole_angles() -> list[float]:
    return sorted(float(np.angle(r.root) % (2 * math.pi)) for r in denominator_roots(R13_DENOMINATOR))


def analyze_r13_poles(tol: TolerancePolicy = DEFAULT_TOL) -> dict:
    roots = denominator_roots(R13_DENOMINATOR)
    quad = circle_quadrature(lambda t: np.abs(r13_rational_arrays(np.exp(1j * t))) ** 2, tol)
    at_half_pi = abs(r13_rational(1j)) ** 2
    return {
        "roots": [r.root for r in roots],
        "moduli": [r.modulus for r in roots],
        "max_modulus_deviation": max(abs(r.modulus - 1.0) for r in roots),
        "pole_angles": pole_angles(),
        "quadrature": quad.as_dict(),
        "integrand_at_half_pi": at_half_pi,
        "note": (
            f"All {len(roots)} poles of r_1^3 lie on |z| = 1 (max ||z| - 1| = "
            f"{max(abs(r.modulus - 1.0) for r in roots):.3e}), so |r_1^3(e^(it))|^2 has non-integrable "
            f"double poles; quadrature status {quad.status.value}. The integrand is >= 0 and equals "
            f"{at_half_pi:.15g} > 0 at t = pi/2, so a value of 0 for its integral is impossible "
            "under any convergent interpretation."
        ),
        "claims": _cite("r13_rational", "closed_form_N3"),
    }


def antiderivative_claimed(theta):
    w = np.exp(2j * np.asarray(theta, dtype=float))
    return (
        -(-4 + 3 * w) / (14 * (-3 * w + 2 * w * w + 2))
        + 3 * np.log(-4j * w - 3j + SQRT7) / (14 * SQRT7)
        - 3 * np.log(4j * w - 3j + SQRT7) / (14 * SQRT7)
    )


def antiderivative_reference(theta):
    """An antiderivative of ``w^2 / (2w^2 - 3w + 2)^2`` in theta, w = e^{2i theta}, for comparison."""
    w = np.exp(2j * np.asarray(theta, dtype=float))
    return (
        1j * (4 - 3 * w) / (14 * (2 * w * w - 3 * w + 2))
        + 3 * np.log(-4j * w + 3j + SQRT7) / (14 * SQRT7)
        - 3 * np.log(4j * w - 3j + SQRT7) / (14 * SQRT7)
    )


def r13_product_integrand(theta):
    """r_1^3(e^{i theta}) r_1^3(e^{-i theta}) = e^{4i theta} / (2e^{4i theta} - 3e^{2i theta} + 2)^2."""
    z = np.exp(1j * np.asarray(theta, dtype=float))
    return z**4 / (2 * z**4 - 3 * z**2 + 2) ** 2


def _sign_flips(x: np.ndarray) -> int:
    s = np.sign(x)
    # includes the wrap from the last node to the first
    return int(np.count_nonzero(s != np.roll(s, -1)))


def audit_F_antiderivative(grid: int = 4096) -> dict:
    if grid < 64:
        raise ValueError("grid must be >= 64")
    theta = 2 * math.pi * (np.arange(grid) + 0.5) / grid
    poles = np.array(pole_angles())
    dist = np.abs((theta[:, None] - poles[None, :] + math.pi) % (2 * math.pi) - math.pi).min(axis=1)
    far = dist >= POLE_EXCLUSION
    target = r13_product_integrand(theta)

    def fd(F):
        return (F(theta + FD_STEP) - F(theta - FD_STEP)) / (2 * FD_STEP)

    resid = np.abs(fd(antiderivative_claimed) - target)[far]
    ref_resid = np.abs(fd(antiderivative_reference) - target)[far]
    jump = complex(antiderivative_claimed(2 * math.pi) - antiderivative_claimed(0.0))
    w = np.exp(2j * theta)
    args = [-4j * w - 3j + SQRT7, 4j * w - 3j + SQRT7]
    flips = [_sign_flips(a.imag) for a in args]
    worst = float(resid.max())
    return {
        "grid": grid,
        "nodes_checked": int(np.count_nonzero(far)),
        "exclusion_radius": POLE_EXCLUSION,
        "fd_step": FD_STEP,
        "max_derivative_residual": worst,
        "local_antiderivative_ok": worst < 1e-5,
        "reference_max_derivative_residual": float(ref_resid.max()),
        "F_2pi_minus_F_0": jump,
        "branch_crossings": int(sum(flips)),
        "branch_crossings_per_log": flips,
        "max_abs_imag_integrand": float(np.abs(target.imag)[far].max()),
        "note": (
            f"F as stated has max |dF/dt - integrand| = {worst:.3e} at {int(np.count_nonzero(far))} nodes "
            f">= {POLE_EXCLUSION} rad from the poles (reference antiderivative: {float(ref_resid.max()):.3e}). "
            f"F(2pi) - F(0) = {abs(jump):.3e} under principal logs only because F is a function of "
            f"e^(2it); the log arguments change the sign of their imaginary part {sum(flips)} times per "
            "period and the integrand has four poles on the path, so the difference does not evaluate the integral."
        ),
        "claims": _cite("r13_antiderivative"),
    }


def component_mapping(n_values=(3, 4, 5), z_probe: float = 0.9, tol: TolerancePolicy = DEFAULT_TOL) -> dict:
    """Tie p, r to simulator hits: c1, c2 vs P(|L>), P(|R>); series vs solve; Parseval for r_1."""
    fine = TolerancePolicy(survival_tol=1e-30, max_steps=tol.max_steps, quad_tol=tol.quad_tol,
                           max_grid_doublings=tol.max_grid_doublings, residual_tol=tol.residual_tol)
    rows = []
    for n in n_values:
        run_l = run_finite_absorption(WalkConfig.finite(n, 1, L_STATE), fine)
        run_r = run_finite_absorption(WalkConfig.finite(n, 1, R_STATE), fine)
        coeffs = compute_c123(n, 1, Method.SOLVE, tol)
        series = gf_from_streams(run_l.left, run_r.left, z_probe, n, 1, tol=fine)
        solved = solve_gf(z_probe, n, tol=tol)[0]
        # coefficients of r_1 from the two streams; parity puts both on the same times
        assert np.array_equal(run_l.left.times, run_r.left.times)
        r_coef = (run_l.left.amplitudes[:, 0] - run_r.left.amplitudes[:, 0]) / math.sqrt(2.0)
        parseval_series = float(np.sum(np.abs(r_coef) ** 2))
        quad = circle_quadrature(lambda t: np.abs(solve_arrays(np.exp(1j * t), n)[1][:, 0]) ** 2, tol)
        parseval_quad = None if not quad.converged else quad.value.real / (2 * math.pi)
        rows.append({
            "N": n,
            "c1": coeffs.c1,
            "sim_p_left_L": run_l.outcome.p_left,
            "c2": coeffs.c2,
            "sim_p_left_R": run_r.outcome.p_left,
            "delta_c1": abs(coeffs.c1 - run_l.outcome.p_left),
            "delta_c2": abs(coeffs.c2 - run_r.outcome.p_left),
            "series_vs_solve_p": abs(series.p - solved.p),
            "series_vs_solve_r": abs(series.r - solved.r),
            "parseval_series": parseval_series,
            "parseval_quadrature": parseval_quad,
            "parseval_delta": None if parseval_quad is None else abs(parseval_series - parseval_quad),
        })
    return {
        "z_probe": z_probe,
        "mapping": "hit(|L>) = (p + r)/sqrt2, hit(|R>) = (p - r)/sqrt2 on the L component at site 0",
        "rows": rows,
        "claims": _cite("theorem_c123"),
    }


# --------------------------------------------------------------------------- report

@dataclass
class VerifyReport:
    lambda_identity: dict
    bc_checks: dict
    konno_flaw: dict
    lemma_recursion: dict
    r13_poles: dict
    F_audit: dict
    component_mapping: dict
    conjecture_table: list
    published_claims: list
    verdict: Verdict
    supporting_deltas: dict
    params: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "params": self.params,
            "lambda_identity": self.lambda_identity,
            "bc_checks": self.bc_checks,
            "konno_flaw": self.konno_flaw,
            "lemma_recursion": self.lemma_recursion,
            "r13_poles": self.r13_poles,
            "F_audit": self.F_audit,
            "component_mapping": self.component_mapping,
            "conjecture_table": self.conjecture_table,
            "published_claims": self.published_claims,
            "verdict": self.verdict.value,
            "supporting_deltas": self.supporting_deltas,
        }


def conjecture_rows(n_range, tol: TolerancePolicy = DEFAULT_TOL) -> list[dict]:
    n_range = list(n_range)
    if not n_range or min(n_range) < 2:
        raise ValueError("every N must be >= 2")
    rec = conjecture_sequence(max(n_range))
    rows = []
    for n in n_range:
        out = run_finite_absorption(WalkConfig.finite(n, 1, R_STATE), tol, record_hits=False).outcome
        solve_val, rep = corollary_p1N(n, Method.SOLVE, tol)
        exact: Fraction = rec[n - 1]
        rows.append({
            "N": n,
            "recursion": exact,
            "recursion_decimal": float(exact),
            "simulator": out.p_left,
            "simulator_converged": out.converged,
            "simulator_steps": out.steps_used,
            "solve_corollary": solve_val,
            "quadrature_status": rep.status.value,
            "delta_sim_recursion": abs(out.p_left - float(exact)),
            "delta_sim_solve": None if solve_val is None else abs(out.p_left - solve_val),
            "delta_solve_recursion": None if solve_val is None else abs(solve_val - float(exact)),
        })
    return rows


def decide(rows: list[dict]) -> tuple[Verdict, dict]:
    """Apply the verdict rule to a conjecture table."""
    tier_ok = all(r["simulator_converged"] and r["delta_sim_solve"] is not None for r in rows)
    tier = max((r["delta_sim_solve"] for r in rows if r["delta_sim_solve"] is not None), default=math.inf)
    rec = max(r["delta_sim_recursion"] for r in rows)
    n3 = [r for r in rows if r["N"] == 3]
    vs_half = abs(n3[0]["simulator"] - 0.5) if n3 else None
    deltas = {
        "max_tier0_tier1_delta": tier if tier_ok else None,
        "max_sim_recursion_delta": rec,
        "N3_sim_minus_half": vs_half,
        "threshold": VERDICT_TOL,
    }
    if not tier_ok or not tier < VERDICT_TOL:
        return Verdict.INCONCLUSIVE, deltas
    if rec < VERDICT_TOL:
        return Verdict.MATCHES_RECURSION, deltas
    if vs_half is not None and vs_half < VERDICT_TOL:
        return Verdict.MATCHES_CLOSED_FORM, deltas
    return Verdict.INCONCLUSIVE, deltas


def published_claims(rows: list[dict]) -> list[dict]:
    sim = {r["N"]: r["simulator"] for r in rows}
    out = []
    for key, value in (("recursion_N3", Fraction(2, 3)), ("closed_form_N3", Fraction(1, 2))):
        entry = {"id": key, **CLAIMS[key]}
        if 3 in sim:
            entry["delta_vs_simulator"] = abs(sim[3] - float(value))
            entry["matches_simulator"] = entry["delta_vs_simulator"] < VERDICT_TOL
        out.append(entry)
    return out


def conjecture_verdict(n_range=range(2, 11), tol: TolerancePolicy = DEFAULT_TOL, seed: int = DEFAULT_SEED,
                       lambda_samples: int = 1000, flaw_samples: int = 50) -> VerifyReport:
    n_range = [int(n) for n in n_range]
    rows = conjecture_rows(n_range, tol)
    verdict, deltas = decide(rows)
    return VerifyReport(
        lambda_identity=check_lambda_identities(lambda_samples, seed),
        bc_checks=bc_checks(seed=seed, tol=tol),
        konno_flaw=demonstrate_konno_flaw(flaw_samples, seed, tol),
        lemma_recursion=lemma_checks(seed=seed),
        r13_poles=analyze_r13_poles(tol),
        F_audit=audit_F_antiderivative(),
        component_mapping=component_mapping(tol=tol),
        conjecture_table=rows,
        published_claims=published_claims(rows),
        verdict=verdict,
        supporting_deltas=deltas,
        params={"n_range": n_range, "seed": seed, "lambda_samples": lambda_samples, "flaw_samples": flaw_samples},
    )


def recursion_monotone_bounded(n_max: int) -> bool:
    """Exact check: strictly increasing and below 1/sqrt2 for N = 1..n_max."""
    seq = conjecture_sequence(n_max)
    return all(a < b for a, b in zip(seq, seq[1:])) and all(below_inverse_sqrt2(x) for x in seq)


def theorem_cross_check(n: int, ks, qubits, tol: TolerancePolicy = DEFAULT_TOL) -> list[dict]:
    rows = []
    for k in ks:
        coeffs = compute_c123(n, k, Method.SOLVE, tol)
        for q in qubits:
            sim = run_finite_absorption(WalkConfig.finite(n, k, q), tol, record_hits=False).outcome.p_left
            thm = absorption_from_c123(coeffs, q)
            rows.append({"N": n, "k": k, "alpha": q.alpha, "beta": q.beta, "simulator": sim,
                         "theorem": thm, "delta": abs(sim - thm)})
    return rows


__all__ = [
    "CLAIMS",
    "DEFAULT_SEED",
    "QuadStatus",
    "Verdict",
    "VerifyReport",
    "analyze_r13_poles",
    "audit_F_antiderivative",
    "bc_checks",
    "check_lambda_identities",
    "component_mapping",
    "conjecture_rows",
    "conjecture_verdict",
    "decide",
    "demonstrate_konno_flaw",
    "lemma_checks",
    "recursion_monotone_bounded",
    "sample_annulus",
    "theorem_cross_check",
]
