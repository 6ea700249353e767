"""Command-line entry point: ``qwabsorb <command> [options]``.

Exit codes: 0 success, 2 usage error, 3 when a requested computation ends
Diverged / DegenerateNodes / Inconclusive / not converged, or raises a numeric
error (the error is then described in the payload).
"""

from __future__ import annotations

import argparse
import csv
import enum
import io
import json
import logging
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__
from .absorption import (
    absorption_from_c123,
    compute_c123,
    conjecture_sequence,
    corollary_p1N,
    semi_infinite_closed_form,
)
from .core import DEFAULT_TOL, L_STATE, R_STATE, QubitState, QWError, TolerancePolicy, WalkConfig
from .genfunc import Method, gf_values, recursion_residual
from .simulator import richardson_semi_infinite, run_finite_absorption, run_semi_infinite_absorption
from .verify import DEFAULT_SEED, Verdict, analyze_r13_poles, conjecture_verdict

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_USAGE, EXIT_FINDING = 0, 2, 3

log = logging.getLogger("qwabsorb")


class FormatUnsupported(QWError, ValueError):
    pass


@dataclass
class OutputEnvelope:
    command: str
    params: dict
    results: object
    tolerances: TolerancePolicy
    version: str = __version__
    wall_time_ms: int | None = None
    table: list | None = field(default=None, repr=False)  # rows for csv/table output

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "tolerances": self.tolerances.as_dict(),
            "version": self.version,
            "schema_version": SCHEMA_VERSION,
            "wall_time_ms": self.wall_time_ms,
        }


# --------------------------------------------------------------------------- serialization

def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def to_plain(obj):
    """Reduce results to JSON-able primitives (complex -> {re, im}, Fraction -> "p/q")."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        c = complex(obj)
        return {"re": c.real, "im": c.imag}
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_plain(v) for v in obj]
    if hasattr(obj, "as_dict"):
        return to_plain(obj.as_dict())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"NaN"'
    if math.isinf(x):
        return '"Infinity"' if x > 0 else '"-Infinity"'
    text = format(x, ".17g")
    # keep floats recognisable as floats after a round trip
    return text if any(ch in text for ch in ".en") else text + ".0"


def canonical_json(obj, indent: int = 2) -> str:
    """Sorted keys, floats at 17 significant digits, fixed layout."""

    def enc(v, depth):
        pad = " " * (indent * (depth + 1))
        end = " " * (indent * depth)
        if v is None:
            return "null"
        if v is True:
            return "true"
        if v is False:
            return "false"
        if isinstance(v, int):
            return str(v)
        if isinstance(v, float):
            return _fmt_float(v)
        if isinstance(v, str):
            return json.dumps(v, ensure_ascii=False)
        if isinstance(v, dict):
            if not v:
                return "{}"
            items = [f"{pad}{json.dumps(k)}: {enc(v[k], depth + 1)}" for k in sorted(v)]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(v, list):
            if not v:
                return "[]"
            return "[\n" + ",\n".join(pad + enc(x, depth + 1) for x in v) + "\n" + end + "]"
        raise TypeError(f"unexpected {type(v).__name__}")

    return enc(to_plain(obj), 0) + "\n"


def _cell(v) -> str:
    v = to_plain(v)
    if isinstance(v, float):
        return _fmt_float(v).strip('"')
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        return f"{_fmt_float(v['re'])}{'+' if v['im'] >= 0 else '-'}{_fmt_float(abs(v['im']))}j"
    if v is None:
        return ""
    return str(v) if not isinstance(v, (dict, list)) else json.dumps(v, sort_keys=True)


def emit(envelope: OutputEnvelope, fmt: str = "json") -> str:
    if fmt == "json":
        return canonical_json(envelope.as_dict())
    rows = envelope.table
    if fmt == "csv":
        if rows is None:
            raise FormatUnsupported(f"'{envelope.command}' output is not tabular; use --format json")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        cols = list(rows[0]) if rows else []
        writer.writerow(cols)
        for row in rows:
            writer.writerow([_cell(row[c]) for c in cols])
        return buf.getvalue()
    if fmt == "table":
        if rows is None:
            rows = [{"key": k, "value": _cell(v)} for k, v in _flatten(to_plain(envelope.results))]
        cols = list(rows[0]) if rows else []
        cells = [[_cell(r[c]) for c in cols] for r in rows]
        widths = [max([len(c)] + [len(x[i]) for x in cells]) for i, c in enumerate(cols)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
        lines.append("  ".join("-" * w for w in widths))
        lines += ["  ".join(x.ljust(w) for x, w in zip(r, widths)) for r in cells]
        return "\n".join(line.rstrip() for line in lines) + "\n"
    raise FormatUnsupported(f"unknown format {fmt!r}")


def _flatten(obj, prefix=""):
    join = (lambda k: f"{prefix}.{k}") if prefix else str
    if isinstance(obj, dict) and not (set(obj) == {"re", "im"}):
        for k in sorted(obj):
            yield from _flatten(obj[k], join(k))
    elif isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        for i, x in enumerate(obj):
            yield from _flatten(x, join(i))
    else:
        yield prefix, obj


# --------------------------------------------------------------------------- argument parsing

class UsageError(Exception):
    pass


def parse_state(text: str) -> QubitState:
    t = text.strip()
    if t.upper() == "L":
        return L_STATE
    if t.upper() == "R":
        return R_STATE
    parts = t.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("state must be L, R or a_re,a_im,b_re,b_im")
    try:
        a_re, a_im, b_re, b_im = (float(x) for x in parts)
        return QubitState(complex(a_re, a_im), complex(b_re, b_im))
    except (ValueError, QWError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(parts[0].replace("i", "j"))
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError("z must be re,im")


def parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("range must look like 2..10 or 2,3,5") from None
    if not out or min(out) < 2:
        raise argparse.ArgumentTypeError("every N must be >= 2")
    return out


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default=argparse.SUPPRESS)
    common.add_argument("--quad-tol", type=float, default=argparse.SUPPRESS)
    common.add_argument("--grid-doublings", type=_positive_int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="record wall_time_ms in the envelope (output is then not reproducible)")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = _Parser(prog="qwabsorb", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simulate", parents=[common], help="time-domain run on {0..N}")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--state", type=parse_state, default=R_STATE)
    s.add_argument("--max-steps", type=_positive_int, default=DEFAULT_TOL.max_steps)
    s.add_argument("--survival-tol", type=float, default=DEFAULT_TOL.survival_tol)

    s = sub.add_parser("semi", parents=[common], help="semi-infinite run up to t_max")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--state", type=parse_state, default=R_STATE)
    s.add_argument("--tmax", type=_positive_int, default=10_000)
    s.add_argument("--extrapolate", action="store_true")

    s = sub.add_parser("gf", parents=[common], help="generating-function values and recursion residuals")
    s.add_argument("--method", choices=("lemma", "konno", "solve"), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--z", type=parse_complex, required=True)

    s = sub.add_parser("absorb", parents=[common], help="c1, c2, c3 quadrature and P_k^N(phi)")
    s.add_argument("--method", choices=("solve", "lemma", "konno"), default="solve")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--state", type=parse_state, default=R_STATE)

    s = sub.add_parser("corollary", parents=[common], help="P_1^N(|R>) from r_1^N")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--method", choices=("solve", "lemma", "konno"), default="solve")

    s = sub.add_parser("conjecture", parents=[common], help="exact recursion table")
    s.add_argument("--max-n", type=_positive_int, required=True)

    sub.add_parser("poles", parents=[common], help="pole analysis of r_1^3")

    s = sub.add_parser("verify", parents=[common], help="full cross-method report")
    s.add_argument("--n-range", type=parse_range, default=list(range(2, 11)))
    return p


# --------------------------------------------------------------------------- commands

def _state_params(q: QubitState) -> dict:
    return {"alpha": q.alpha, "beta": q.beta}


def cmd_simulate(args, tol):
    tol = TolerancePolicy(args.survival_tol, args.max_steps, tol.quad_tol, tol.max_grid_doublings, tol.residual_tol)
    cfg = WalkConfig.finite(args.n, args.k, args.state)
    out = run_finite_absorption(cfg, tol, record_hits=False).outcome
    params = {"N": args.n, "k": args.k, "state": _state_params(args.state)}
    return params, out.as_dict(), [out.as_dict()], (EXIT_OK if out.converged else EXIT_FINDING), tol


def cmd_semi(args, tol):
    cfg = WalkConfig.semi_infinite(args.k, args.state)
    results = {}
    if args.extrapolate:
        out, extra = richardson_semi_infinite(cfg, args.tmax, tol)
        results["richardson"] = extra
    else:
        out = run_semi_infinite_absorption(cfg, args.tmax, tol)
    results.update(out.as_dict())
    results["closed_form"] = semi_infinite_closed_form(args.state)
    results["delta_closed_form"] = abs(out.p_left - results["closed_form"])
    params = {"k": args.k, "t_max": args.tmax, "state": _state_params(args.state), "extrapolate": args.extrapolate}
    return params, results, [results], EXIT_OK, tol


def cmd_gf(args, tol):
    params = {"method": args.method, "N": args.n, "k": args.k, "z": args.z}
    values = gf_values(args.method, args.z, args.n, tol=tol)
    value = next(v for v in values if v.k == args.k)
    rep = recursion_residual(args.method, args.z, args.n, tol=tol)
    results = {"value": value.as_dict(), "residuals": rep.as_dict()}
    return params, results, None, EXIT_OK, tol


def cmd_absorb(args, tol):
    params = {"method": args.method, "N": args.n, "k": args.k, "state": _state_params(args.state)}
    coeffs = compute_c123(args.n, args.k, args.method, tol)
    results = {"coefficients": coeffs.as_dict(), "probability": None}
    code = EXIT_FINDING
    if coeffs.converged:
        results["probability"] = absorption_from_c123(coeffs, args.state)
        code = EXIT_OK
    return params, results, None, code, tol


def cmd_corollary(args, tol):
    params = {"method": args.method, "N": args.n}
    val, rep = corollary_p1N(args.n, args.method, tol)
    results = {"value": val, "status": rep.status.value, "quadrature": rep.as_dict()}
    row = {"N": args.n, "method": args.method, "value": val, "status": rep.status.value}
    return params, results, [row], (EXIT_OK if rep.converged else EXIT_FINDING), tol


def cmd_conjecture(args, tol):
    rows = [{"N": i + 1, "value": x, "decimal": float(x)} for i, x in enumerate(conjecture_sequence(args.max_n))]
    csv_rows = [{"N": r["N"], "value": r["value"]} for r in rows]
    return {"max_n": args.max_n}, {"rows": rows}, csv_rows, EXIT_OK, tol


def cmd_poles(args, tol):
    results = analyze_r13_poles(tol)
    rows = [{"root": z, "modulus": m, "angle": math.atan2(z.imag, z.real) % (2 * math.pi)}
            for z, m in zip(results["roots"], results["moduli"])]
    code = EXIT_OK if results["quadrature"]["status"] == "Converged" else EXIT_FINDING
    return {}, results, rows, code, tol


def cmd_verify(args, tol):
    seed = getattr(args, "seed", DEFAULT_SEED)
    rep = conjecture_verdict(args.n_range, tol, seed)
    params = {"n_range": args.n_range, "seed": seed}
    code = EXIT_FINDING if rep.verdict is Verdict.INCONCLUSIVE else EXIT_OK
    return params, rep.as_dict(), rep.conjecture_table, code, tol


COMMANDS = {
    "simulate": cmd_simulate,
    "semi": cmd_semi,
    "gf": cmd_gf,
    "absorb": cmd_absorb,
    "corollary": cmd_corollary,
    "conjecture": cmd_conjecture,
    "poles": cmd_poles,
    "verify": cmd_verify,
}


def dispatch(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    logging.basicConfig(level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
                        stream=stderr, format="%(levelname)s %(name)s: %(message)s")
    fmt = getattr(args, "format", "json")
    try:
        tol = TolerancePolicy(
            quad_tol=getattr(args, "quad_tol", DEFAULT_TOL.quad_tol),
            max_grid_doublings=getattr(args, "grid_doublings", DEFAULT_TOL.max_grid_doublings),
        )
    except ValueError as exc:
        print(f"qwabsorb: error: {exc}", file=stderr)
        return EXIT_USAGE

    start = time.perf_counter()
    try:
        params, results, rows, code, used_tol = COMMANDS[args.command](args, tol)
    except QWError as exc:
        params, rows, code, used_tol = {}, None, EXIT_FINDING, tol
        results = {"error": type(exc).__name__, "message": str(exc)}
    except ValueError as exc:
        print(f"qwabsorb {args.command}: error: {exc}", file=stderr)
        return EXIT_USAGE
    elapsed = int(round((time.perf_counter() - start) * 1000))
    log.info("%s finished in %d ms", args.command, elapsed)

    env = OutputEnvelope(args.command, params, results, used_tol,
                         wall_time_ms=elapsed if getattr(args, "timing", False) else None, table=rows)
    try:
        text = emit(env, fmt)
    except FormatUnsupported as exc:
        print(f"qwabsorb {args.command}: error: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(text)
    return code


def main(argv: list[str] | None = None) -> int:
    return dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
