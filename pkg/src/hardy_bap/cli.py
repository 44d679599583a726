"""hardy-bap: certificates, best-approximation solves and inequality suites from the shell.

Function arguments use a small grammar::

    poly:[c0, c1, ...]          coefficients; entries are numbers, "a+bj" strings or [re, im]
    cayley:rho                  1 / (1 - rho z)
    blaschke:n,N,rho            z^n (z^(N-n) - rho) / (1 - rho z^(N-n))
    geometric-image:n,N,rho     rho^n z^n / (1 - rho^N z^N)
    gap-probe:n,N,rho           z^n + (1 - rho) z^N
    path/to/series.json         PowerSeries JSON

Kernels are ``geometric:n,N``, ``monomial:n`` or a KernelSpec JSON file.

Exit status: 0 on completion, 1 on a configuration or parse error, 2 when an
inequality that admissibility says must hold is reported violated.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .approx import APPROX_TOL, DEFAULT_DIRECTIONS, DEFAULT_NEG_DEGREE, best_approx, mixed_approx_l1
from .inequalities import (INEQ_TOL, VIOLATED, WITNESS_RHOS, bohr_weights, check_inequality, gap_probe,
                           mixed_distance_check, weighted_check, landau_admissible,
                           random_polynomial_corpus, sharpness_sweep)
from .kernels import (DEFAULT_ANGLES, DEFAULT_RADII, DEFAULT_TOL, KernelSpec, certify_bap,
                      certify_pair, certify_tail_bound, geometric_image)
from .series import DEFAULT_GRID, HardyExponent, PowerSeries, as_series, polynomial
from .special import ExtremalFamily, cayley_l1_norm_reference

GRID_RANGE = (256, 65536)
DIRECTIONS_RANGE = (8, 512)
TOL_RANGE = (1e-12, 1e-3)


class ConfigError(ValueError):
    """Invalid command-line configuration or unparsable input."""


class FunctionSpecError(ConfigError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.text, self.pos = text, pos


# ---------------------------------------------------------------- parsing

def _numbers(text: str, body: str, offset: int, count: int) -> list:
    parts = body.split(",")
    if len(parts) != count:
        raise FunctionSpecError(text, offset, f"expected {count} comma-separated values")
    out, pos = [], offset
    for p in parts:
        try:
            out.append(float(p))
        except ValueError:
            raise FunctionSpecError(text, pos, f"not a number: {p.strip()!r}") from None
        pos += len(p) + 1
    return out


def _integer(text: str, x: float, pos: int) -> int:
    if x != int(x):
        raise FunctionSpecError(text, pos, f"expected an integer, got {x:g}")
    return int(x)


def _check_rho(text: str, rho: float, pos: int) -> float:
    if not 0.0 <= rho < 1.0:
        raise FunctionSpecError(text, pos, f"rho = {rho:g} outside [0, 1)")
    return rho


def _complex(entry):
    if isinstance(entry, (list, tuple)) and len(entry) == 2:
        return complex(float(entry[0]), float(entry[1]))
    if isinstance(entry, str):
        return complex(entry.replace(" ", ""))
    if isinstance(entry, (int, float)) and not isinstance(entry, bool):
        return complex(entry)
    raise ValueError(f"bad coefficient {entry!r}")


def parse_function_spec(text: str):
    """Parse a function argument into a PowerSeries, ExtremalFamily or ClosedForm."""
    text = text.strip()
    tag, sep, body = text.partition(":")
    if not sep:
        p = Path(text)
        if p.suffix == ".json" or p.exists():
            return _load_series(p)
        raise FunctionSpecError(text, 0, "missing ':' after function tag")
    off = len(tag) + 1
    if tag == "poly":
        try:
            raw = json.loads(body)
        except json.JSONDecodeError as e:
            raise FunctionSpecError(text, off + e.pos, f"invalid coefficient list ({e.msg})") from None
        if not isinstance(raw, list) or not raw:
            raise FunctionSpecError(text, off, "expected a non-empty list")
        try:
            return polynomial([_complex(c) for c in raw])
        except ValueError as e:
            raise FunctionSpecError(text, off, str(e)) from None
    if tag == "cayley":
        (rho,) = _numbers(text, body, off, 1)
        return ExtremalFamily.cayley_rational(_check_rho(text, rho, off))
    if tag in ("blaschke", "geometric-image", "gap-probe"):
        n, N, rho = _numbers(text, body, off, 3)
        n, N = _integer(text, n, off), _integer(text, N, off)
        rho = _check_rho(text, rho, off)
        if tag == "blaschke":
            if not 0 <= n < N:
                raise FunctionSpecError(text, off, "blaschke needs N > n >= 0")
            return ExtremalFamily.blaschke_shift(n, N, rho)
        if tag == "gap-probe":
            if not 0 <= n < N:
                raise FunctionSpecError(text, off, "gap-probe needs N > n >= 0")
            return gap_probe(n, N, rho)
        if n < 0 or N < 1:
            raise FunctionSpecError(text, off, "geometric-image needs n >= 0 and N >= 1")
        return geometric_image(n, N, rho)
    raise FunctionSpecError(text, 0, f"unknown function tag {tag!r}")


def _load_json(path: Path) -> dict:
    try:
        return json.loads(path.read_text())
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def _load_series(path: Path) -> PowerSeries:
    try:
        return PowerSeries.from_json_dict(_load_json(path))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f"{path}: not a PowerSeries: {e}") from None


def parse_kernel_spec(text: str) -> KernelSpec:
    tag, sep, body = text.strip().partition(":")
    if not sep:
        try:
            return KernelSpec.from_json_dict(_load_json(Path(text)))
        except ConfigError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"{text}: not a kernel: {e}") from None
    off = len(tag) + 1
    if tag == "geometric":
        n, N = _numbers(text, body, off, 2)
        n, N = _integer(text, n, off), _integer(text, N, off)
        if n < 0 or N < 1:
            raise FunctionSpecError(text, off, "geometric kernel needs n >= 0 and N >= 1")
        return KernelSpec.geometric(n, N)
    if tag == "monomial":
        (n,) = _numbers(text, body, off, 1)
        n = _integer(text, n, off)
        if n < 0:
            raise FunctionSpecError(text, off, "kernel order must be >= 0")
        return KernelSpec.monomial(n)
    raise FunctionSpecError(text, 0, f"unknown kernel tag {tag!r}")


def function_id(f, text: str | None = None) -> str:
    if text is not None:
        return text
    return getattr(f, "label", None) or getattr(f, "name", None) or "series"


def _float_list(text: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _int_list(text: str) -> list:
    vals = _float_list(text)
    if any(v != int(v) for v in vals):
        raise ConfigError(f"expected integers, got {text!r}")
    return [int(v) for v in vals]


def parse_weights(text: str) -> np.ndarray:
    """``geometric:rho[,upto]`` (psi_i = rho^(i+1)) or an explicit comma-separated list."""
    if text.startswith("geometric:"):
        vals = _float_list(text.partition(":")[2])
        if not 1 <= len(vals) <= 2:
            raise ConfigError("geometric weights take rho and an optional length")
        upto = int(vals[1]) if len(vals) == 2 else 200
        return bohr_weights(vals[0], upto)
    psi = np.array(_float_list(text))
    if psi.size == 0 or np.any(psi < 0):
        raise ConfigError("weights must be a non-empty list of non-negative numbers")
    return psi


def psi_digest(psi: np.ndarray) -> str:
    h = hashlib.sha256(np.ascontiguousarray(psi, dtype=float).tobytes()).hexdigest()[:12]
    return f"sum={float(np.sum(psi)):.12g};len={psi.size};sha256={h}"


# ---------------------------------------------------------------- validation

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def validate(args) -> None:
    grid = getattr(args, "grid", None)
    if grid is not None:
        lo, hi = GRID_RANGE
        if not (lo <= grid <= hi and grid & (grid - 1) == 0):
            raise ConfigError(f"--grid must be a power of two in [{lo}, {hi}], got {grid}")
    d = getattr(args, "directions", None)
    if d is not None and not DIRECTIONS_RANGE[0] <= d <= DIRECTIONS_RANGE[1]:
        raise ConfigError(f"--directions must lie in {list(DIRECTIONS_RANGE)}, got {d}")
    for name in ("tol", "ineq_tol"):
        t = getattr(args, name, None)
        if t is not None and not TOL_RANGE[0] <= t <= TOL_RANGE[1]:
            raise ConfigError(f"--{name.replace('_', '-')} must lie in {list(TOL_RANGE)}, got {t:g}")
    radii = getattr(args, "radii", None)
    if radii is not None:
        r = _float_list(radii)
        if len(r) < 2 or any(not 0 < x < 1 for x in r) or r != sorted(r):
            raise ConfigError("--radii needs at least two increasing values in (0, 1)")
    threads = os.environ.get("HARDY_BAP_THREADS")
    if threads is not None and (not threads.isdigit() or int(threads) < 1):
        raise ConfigError(f"HARDY_BAP_THREADS must be a positive integer, got {threads!r}")


def thread_count() -> int:
    env = os.environ.get("HARDY_BAP_THREADS")
    return int(env) if env else 1


# ---------------------------------------------------------------- output

def _clean(x):
    if isinstance(x, float):
        return x if math.isfinite(x) else None
    if isinstance(x, (np.floating, np.integer)):
        return _clean(x.item())
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, HardyExponent):
        return str(x)
    return x


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("handler", "output", "format")}


def render(args, result, rows: list, columns: list) -> str:
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: "" if v is None else (repr(v) if isinstance(v, float) else v)
                        for k, v in _clean(r).items()})
        return buf.getvalue()
    doc = {"artifact": "hardy_bap", "version": __version__, "command": args.command,
           "config": _config(args), "result": result}
    return json.dumps(_clean(doc), sort_keys=True, indent=2) + "\n"


def emit(args, text: str) -> None:
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)


# ---------------------------------------------------------------- commands

def cmd_certify_kernel(args):
    radii = tuple(_float_list(args.radii)) if args.radii else DEFAULT_RADII
    if args.tail_bound is not None:
        if args.n is None:
            raise ConfigError("--tail-bound needs --n")
        L = as_series(parse_function_spec(args.tail_bound))
        cert, label = certify_tail_bound(L, args.n, args.tol, radii, args.angles), f"tail-bound:{args.n}"
    else:
        if args.kernel is None:
            raise ConfigError("certify-kernel needs a KERNEL argument (or --tail-bound)")
        K = parse_kernel_spec(args.kernel)
        label = K.label
        if args.pair is not None:
            cert = certify_pair(K, as_series(parse_function_spec(args.pair)), args.tol, radii, args.angles)
        else:
            cert = certify_bap(K, args.tol, radii, args.angles)
    d = cert.to_dict()
    row = {"kernel": label, **{k: d[k] for k in ("kind", "verdict", "coefficient_gap_margin",
                                                  "min_real_part", "pair_margin",
                                                  "extrapolated_margin", "tolerance")}}
    result = {"kernel": label, "certificate": d, "tolerances": {"certificate_tol": args.tol}}
    return result, [row], list(row), 0


def reference_value(f, n: int, q: HardyExponent):
    """Known closed-form values of E_n(f)_q for the built-in families, else None."""
    if isinstance(f, ExtremalFamily):
        rho = f.rho
        if f.kind == "cayley_rational":
            if q is HardyExponent.ONE:
                return cayley_l1_norm_reference(n, rho)
            if q is HardyExponent.TWO:
                return rho ** n / math.sqrt(1 - rho * rho)
            if n == 0:
                return 1 / (1 - rho)
            return None
        # inner and divisible by z^n
        if q is not HardyExponent.ONE and n <= f.n:
            return 1.0
    return None


def _approx_row(fid, f, n, q, res):
    ref = reference_value(f, n, q)
    rel = None if ref is None or ref == 0 else abs(res.value - ref) / ref
    return {"function_id": fid, "n": n, "q": str(q), "rho_or_param": getattr(f, "rho", None),
            "value": res.value, "lower_bound": res.lower_bound, "gap": res.gap,
            "reference_value": ref, "rel_err": rel, "grid_size": res.grid_size,
            "directions": res.directions, "grid_bias": res.grid_bias,
            "truncation_bias": res.truncation_bias}


APPROX_COLUMNS = ["function_id", "n", "q", "rho_or_param", "value", "lower_bound", "gap",
                  "reference_value", "rel_err", "grid_size", "directions", "grid_bias",
                  "truncation_bias"]


def cmd_approx(args):
    f = parse_function_spec(args.function)
    q = HardyExponent.parse(args.q)
    ns = _int_list(args.n)
    if any(n < 0 for n in ns):
        raise ConfigError("--n must be non-negative")

    def solve(n):
        return best_approx(f, n, q, grid=args.grid, radius=args.radius, directions=args.directions,
                           tol=args.tol, method=args.method)

    results = _pmap(solve, ns)
    rows = [_approx_row(args.function, f, n, q, r) for n, r in zip(ns, results)]
    out = []
    for row, r in zip(rows, results):
        d = r.to_dict()
        d["reference_value"] = row["reference_value"]
        d["rel_err"] = row["rel_err"]
        d["tolerances"] = {"solver_tol": args.tol, "grid_bias": r.grid_bias,
                           "truncation_bias": r.truncation_bias}
        out.append(d)
    return {"function": args.function, "solves": out}, rows, APPROX_COLUMNS, 0


def cmd_mixed_approx(args):
    f = parse_function_spec(args.function)
    res = mixed_approx_l1(f, args.N, neg_degree=args.neg_degree, grid=args.grid, tol=args.tol,
                          method=args.method)
    coeff_N = abs(as_series(f, max(args.N, 1))[args.N])
    row = {"function_id": args.function, "N": args.N, "neg_degree": args.neg_degree,
           "value": res.value, "lower_bound": res.lower_bound, "gap": res.gap,
           "value_half": res.value_half, "abs_coefficient_N": coeff_N, "grid_size": res.grid_size}
    d = res.to_dict()
    d["abs_coefficient_N"] = coeff_N
    d["tolerances"] = {"solver_tol": args.tol, "truncation_bias": res.truncation_bias,
                       "conjugate_truncation_estimate":
                           None if res.value_half is None else res.value_half - res.value}
    return {"function": args.function, "solve": d}, [row], list(row), 0


INEQ_COLUMNS = ["name", "n", "N", "c_or_psi_digest", "function_id", "lhs", "rhs", "slack", "verdict"]


def _inequality(kind, f, args, psi):
    if kind == "landau":
        rep = check_inequality(f, args.n, args.N, args.c, grid=args.grid, tol=args.ineq_tol)
        return rep, landau_admissible(args.n, args.N, args.c), args.N, f"c={args.c:g}"
    if kind == "mixed-distance":
        rep = mixed_distance_check(f, args.n, args.N, grid=args.grid, neg_degree=args.neg_degree,
                               tol=args.ineq_tol)
        return rep, True, args.N, ""
    rep = weighted_check(f, args.n, psi, grid=args.grid, tol=args.ineq_tol)
    if kind == "bohr":
        rep.name = "bohr"
    return rep, bool(rep.extra["admissible"]), None, psi_digest(psi)


def _resolve_kind(args):
    kind = args.kind
    psi = None
    if kind in ("weighted", "bohr"):
        if kind == "bohr":
            if args.rho is None:
                raise ConfigError("--kind bohr needs --rho")
            psi = bohr_weights(args.rho, 200)
            args.n = 0
        else:
            if args.weights is None:
                raise ConfigError("--kind weighted needs --weights")
            psi = parse_weights(args.weights)
    else:
        if args.N is None:
            raise ConfigError(f"--kind {kind} needs --N")
        if args.N <= args.n:
            raise ConfigError("--N must exceed --n")
        if kind == "mixed-distance" and args.N < 2 * args.n + 1:
            raise ConfigError("mixed-distance needs N >= 2n + 1")
        if kind == "landau" and args.c <= 0:
            raise ConfigError("--c must be positive")
    return kind, psi


def _report_rows(items):
    rows, reports, status = [], [], 0
    for fid, (rep, admissible, N, digest) in items:
        d = rep.to_dict()
        d["function_id"] = fid
        d["admissible"] = admissible
        reports.append(d)
        rows.append({"name": rep.name, "n": rep.parameters.get("n"), "N": N,
                     "c_or_psi_digest": digest, "function_id": fid, "lhs": rep.lhs, "rhs": rep.rhs,
                     "slack": rep.slack, "verdict": rep.verdict})
        if admissible and rep.verdict == VIOLATED:
            status = 2
    return rows, reports, status


def cmd_check_inequality(args):
    kind, psi = _resolve_kind(args)
    f = parse_function_spec(args.function)
    rows, reports, status = _report_rows([(args.function, _inequality(kind, f, args, psi))])
    return {"reports": reports, "tolerances": _ineq_tolerances(args)}, rows, INEQ_COLUMNS, status


def _ineq_tolerances(args):
    return {"inequality_tol": args.ineq_tol, "solver_tol": APPROX_TOL, "certificate_tol": DEFAULT_TOL}


def corpus_functions(args) -> list:
    """(function_id, function) pairs: seeded random polynomials plus the witness families."""
    items = [(f"random:{args.seed}:{i}", f) for i, f in
             enumerate(random_polynomial_corpus(args.count, args.max_degree, args.seed))]
    if args.families:
        N = args.N if args.N is not None else 2 * args.n + 1
        for rho in WITNESS_RHOS:
            fam = ExtremalFamily.blaschke_shift(args.n, max(N, args.n + 1), rho)
            items.append((fam.label, fam))
            cay = ExtremalFamily.cayley_rational(rho)
            items.append((cay.label, cay))
    return items


def cmd_corpus_suite(args):
    kind, psi = _resolve_kind(args)
    items = corpus_functions(args)
    results = _pmap(lambda it: _inequality(kind, it[1], args, psi), items)
    rows, reports, status = _report_rows(zip([fid for fid, _ in items], results))
    counts = {}
    for r in rows:
        counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
    summary = {"functions": len(rows), "verdicts": dict(sorted(counts.items())),
               "worst_slack": min((r["slack"] for r in rows), default=None)}
    return ({"summary": summary, "reports": reports, "tolerances": _ineq_tolerances(args)},
            rows, INEQ_COLUMNS, status)


def cmd_sharpness_sweep(args):
    rhos = _float_list(args.rho)
    if any(not 0 <= r < 1 for r in rhos):
        raise ConfigError("--rho values must lie in [0, 1)")
    if args.N < 2 * args.n + 1:
        raise ConfigError("sharpness sweep needs N >= 2n + 1")
    sw = sharpness_sweep(args.n, args.N, rhos, grid=args.grid)
    rows = [{"n": args.n, "N": args.N, "rho": r, "ratio": x, "analytic_floor": fl, "sharp_column": s}
            for r, x, fl, s in zip(sw.rho_values, sw.ratios, sw.analytic_floor, sw.sharp_column)]
    d = sw.to_dict()
    d["within_bounds"] = sw.within_bounds()
    return d, rows, ["n", "N", "rho", "ratio", "analytic_floor", "sharp_column"], 0


def _pmap(fn, items):
    items = list(items)
    k = min(thread_count(), max(len(items), 1))
    if k <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=k) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------- argparse

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hardy-bap", description="Best approximation in Hardy spaces: kernels, "
                "solvers and coefficient inequalities.")
    p.add_argument("--version", action="version", version=f"hardy-bap {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, grid=True):
        sp.add_argument("--output", "-o", help="output file (default: stdout)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        if grid:
            sp.add_argument("--grid", type=int, default=DEFAULT_GRID,
                            help="boundary samples, power of two in [256, 65536]")

    sp = sub.add_parser("certify-kernel", help="certify a convolution kernel")
    sp.add_argument("kernel", nargs="?", help="geometric:n,N | monomial:n | kernel JSON file")
    sp.add_argument("--pair", metavar="FUNC", help="certify the pair (K, L) with L given as a function")
    sp.add_argument("--tail-bound", metavar="FUNC", help="certify |L| <= |z|^(2n+1)/2 for L")
    sp.add_argument("--n", type=int, help="order for --tail-bound")
    sp.add_argument("--radii", help="comma-separated sweep radii")
    sp.add_argument("--angles", type=int, default=DEFAULT_ANGLES)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common(sp, grid=False)
    sp.set_defaults(handler=cmd_certify_kernel)

    sp = sub.add_parser("approx", help="best approximation E_n(f)_q")
    sp.add_argument("function")
    sp.add_argument("--n", required=True, help="degree bound, or a comma-separated list")
    sp.add_argument("--q", default="inf", help="1, 2 or inf")
    sp.add_argument("--directions", type=int, default=DEFAULT_DIRECTIONS)
    sp.add_argument("--radius", type=float, default=1.0)
    sp.add_argument("--method", choices=("auto", "irls", "lp"), default="auto")
    sp.add_argument("--tol", type=float, default=APPROX_TOL)
    common(sp)
    sp.set_defaults(handler=cmd_approx)

    sp = sub.add_parser("mixed-approx", help="L1 distance to P_{N-1} + conjugate-analytic functions")
    sp.add_argument("function")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--neg-degree", type=int, default=DEFAULT_NEG_DEGREE)
    sp.add_argument("--method", choices=("auto", "irls", "lp"), default="auto")
    sp.add_argument("--tol", type=float, default=APPROX_TOL)
    common(sp)
    sp.set_defaults(handler=cmd_mixed_approx)

    def ineq_opts(sp):
        sp.add_argument("--kind", choices=("landau", "mixed-distance", "weighted", "bohr"), default="landau")
        sp.add_argument("--n", type=int, default=0)
        sp.add_argument("--N", type=int)
        sp.add_argument("--c", type=float, default=0.5)
        sp.add_argument("--weights", help="weighted-sum weights from k = 2n+1: list or geometric:rho[,len]")
        sp.add_argument("--rho", type=float, help="bohr weights rho^k")
        sp.add_argument("--neg-degree", type=int, default=DEFAULT_NEG_DEGREE)
        sp.add_argument("--ineq-tol", type=float, default=INEQ_TOL)
        common(sp)

    sp = sub.add_parser("check-inequality", help="evaluate one coefficient inequality")
    sp.add_argument("function")
    ineq_opts(sp)
    sp.set_defaults(handler=cmd_check_inequality)

    sp = sub.add_parser("corpus-suite", help="run an inequality over a seeded random corpus")
    ineq_opts(sp)
    sp.add_argument("--count", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-degree", type=int, default=40)
    sp.add_argument("--families", action="store_true", help="append the witness families")
    sp.set_defaults(handler=cmd_corpus_suite)

    sp = sub.add_parser("sharpness-sweep", help="ratios along the extremal family")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--rho", default="0,0.5,0.9,0.99")
    common(sp)
    sp.set_defaults(handler=cmd_sharpness_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        validate(args)
        result, rows, columns, status = args.handler(args)
        emit(args, render(args, result, rows, columns))
    except (ConfigError, ValueError) as e:
        print(f"hardy-bap: error: {e}", file=sys.stderr)
        return 1
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
