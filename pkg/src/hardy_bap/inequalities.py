"""Coefficient lower bounds for E_n(f)_inf and the families that make them sharp.

Every check compares a coefficient functional (lhs) with a solver value
(rhs = value of the discrete best approximation) and reports
``slack = rhs - lhs``.  Verdicts:

* ``holds``            slack >= -tol
* ``violated``         slack < -tol - uncertainty
* ``within_tolerance`` in between

where ``uncertainty`` collects the solver gap and the grid bias estimate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .approx import DEFAULT_NEG_DEGREE, best_approx, mixed_approx_l1
from .kernels import (DEFAULT_TOL, KernelSpec, boundary_extrapolation, certify_tail_bound,
                      min_real_part)
from .series import (DEFAULT_GRID, DEFAULT_TRUNCATION, EXACT, TRUNCATED, ClosedForm,
                     HardyExponent, PowerSeries, as_series, geometric_rational, monomial)
from .special import ExtremalFamily, bohr_threshold, weight_series

INEQ_TOL = 1e-5
WITNESS_RHOS = (0.5, 0.9, 0.99)

HOLDS, VIOLATED, WITHIN = "holds", "violated", "within_tolerance"


@dataclass
class InequalityReport:
    name: str
    parameters: dict
    lhs: float
    rhs: float
    rhs_lower: float
    verdict: str
    tol: float
    witness: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def violated(self) -> bool:
        return self.verdict == VIOLATED

    def to_dict(self) -> dict:
        return {"name": self.name, "parameters": self.parameters, "lhs": self.lhs,
                "rhs": self.rhs, "rhs_lower": self.rhs_lower, "slack": self.slack,
                "verdict": self.verdict, "tol": self.tol, "witness": self.witness,
                "extra": self.extra}


def _verdict(lhs: float, rhs: float, tol: float, uncertainty: float = 0.0) -> str:
    slack = rhs - lhs
    if slack >= -tol:
        return HOLDS
    if slack < -tol - uncertainty:
        return VIOLATED
    return WITHIN


def _uncertainty(res) -> float:
    return res.gap + (res.grid_bias or 0.0)


def _coeffs(f, upto: int) -> PowerSeries:
    s = as_series(f, max(upto, DEFAULT_TRUNCATION))
    if s.tail_kind == EXACT and s.truncation < upto:
        s = s.resized(upto)
    return s


def _label(f) -> str | None:
    return getattr(f, "label", None) or getattr(f, "name", None)


def landau_admissible(n: int, N: int, c: float, tol: float = DEFAULT_TOL) -> bool:
    """Whether |f_n| + c|f_N| <= E_n(f)_inf for every bounded f: N >= 2n+1 and c <= 1/2.

    The certificate for L(z) = c z^N is computed as well, and a disagreement
    outside its marginal band raises ``RuntimeError``.
    """
    if not (n >= 0 and N > n and c > 0):
        raise ValueError(f"need n >= 0, N > n, c > 0; got {(n, N, c)}")
    analytic = N >= 2 * n + 1 and c <= 0.5
    cert = certify_tail_bound(monomial(N, c), n, tol)
    if cert.passed != analytic and cert.verdict != "marginal":
        raise RuntimeError(f"certificate {cert.verdict} disagrees with the analytic criterion "
                           f"for (n, N, c) = {(n, N, c)}")
    return analytic


def check_inequality(f, n: int, N: int, c: float = 0.5, *, grid: int = DEFAULT_GRID,
                     tol: float = INEQ_TOL) -> InequalityReport:
    """|f_n| + c |f_N| against E_n(f)_inf."""
    s = _coeffs(f, N)
    lhs = abs(s[n]) + c * abs(s[N])
    res = best_approx(f, n, HardyExponent.INF, grid=grid)
    return InequalityReport("landau", {"n": n, "N": N, "c": c}, lhs, res.value, res.lower_bound,
                            _verdict(lhs, res.value, tol, _uncertainty(res)), tol, _label(f),
                            {"solver_gap": res.gap, "grid_bias": res.grid_bias,
                             "truncation_bias": res.truncation_bias})


def gap_probe(n: int, N: int, rho: float) -> PowerSeries:
    """z^n + (1 - rho) z^N.

    When n < N <= 2n, subtracting (1 - rho) z^(2n-N) leaves modulus
    sqrt(1 + 4 (1 - rho)^2 sin^2) on the circle, so E_n grows only
    quadratically in 1 - rho while the Landau functional grows linearly.
    """
    return monomial(n) + monomial(N, 1 - rho)


def witness_candidates(n: int, N: int, rho_values: Iterable[float] = WITNESS_RHOS):
    for rho in rho_values:
        yield ExtremalFamily.blaschke_shift(n, N, rho)
        if N <= 2 * n:
            yield gap_probe(n, N, rho)


def find_landau_violation(n: int, N: int, c: float, rho_values: Iterable[float] = WITNESS_RHOS, *,
                          grid: int = DEFAULT_GRID, tol: float = INEQ_TOL) -> list:
    """Reports for the witness families; the ones with verdict ``violated`` are witnesses."""
    reports = []
    for f in witness_candidates(n, N, rho_values):
        rep = check_inequality(f, n, N, c, grid=grid, tol=tol)
        if rep.witness is None:
            rep.witness = f"gap-probe:{n},{N},{1 - abs(as_series(f)[N]):g}"
        reports.append(rep)
    return reports


@dataclass
class SharpnessSweep:
    n: int
    N: int
    rho_values: list
    ratios: list
    analytic_floor: list
    sharp_column: list
    tol: float

    def within_bounds(self) -> bool:
        return all(fl - self.tol <= r <= 1 + self.tol
                   for r, fl in zip(self.ratios, self.analytic_floor))

    def to_dict(self) -> dict:
        return {"n": self.n, "N": self.N, "rho_values": self.rho_values, "ratios": self.ratios,
                "analytic_floor": self.analytic_floor, "sharp_column": self.sharp_column,
                "tol": self.tol}


def sharpness_sweep(n: int, N: int, rho_values: Sequence[float], *, grid: int = DEFAULT_GRID,
                    tol: float = 1e-4) -> SharpnessSweep:
    """(|f_n| + |f_N|/2) / E_n(f)_inf along the inner family f_rho.

    ``sharp_column`` is |f_N| / (1 - |f_n|) = 1 + rho, which tends to 2.
    """
    if N < 2 * n + 1:
        raise ValueError("sharpness sweep needs N >= 2n + 1")
    ratios, floor, sharp = [], [], []
    for rho in rho_values:
        fam = ExtremalFamily.blaschke_shift(n, N, rho)
        s = fam.coefficients(max(N, DEFAULT_TRUNCATION))
        a, b = abs(s[n]), abs(s[N])
        res = best_approx(fam, n, HardyExponent.INF, grid=grid)
        ratios.append((a + 0.5 * b) / res.value)
        floor.append(rho + 0.5 * (1 - rho * rho))
        sharp.append(b / (1 - a))
    return SharpnessSweep(n, N, [float(r) for r in rho_values], ratios, floor, sharp, tol)


def mixed_distance_check(f, n: int, N: int, *, grid: int = DEFAULT_GRID,
                     neg_degree: int = DEFAULT_NEG_DEGREE, tol: float = INEQ_TOL) -> InequalityReport:
    """|f_n| + (1/2) dist_L1(f, P_{N-1} + conj(H^1_0)) against E_n(f)_inf."""
    if N < 2 * n + 1:
        raise ValueError("mixed_distance_check needs N >= 2n + 1")
    s = _coeffs(f, N)
    mixed = mixed_approx_l1(f, N, neg_degree=neg_degree, grid=grid)
    lhs = abs(s[n]) + 0.5 * mixed.value
    res = best_approx(f, n, HardyExponent.INF, grid=grid)
    trunc = None if mixed.value_half is None else mixed.value_half - mixed.value
    # the mixed solver gap and the truncation estimate widen the band only
    unc = _uncertainty(res) + 0.5 * (mixed.gap + abs(trunc or 0.0))
    verdict = _verdict(lhs, res.value, tol, unc)
    return InequalityReport("mixed-distance", {"n": n, "N": N, "neg_degree": neg_degree}, lhs,
                            res.value, res.lower_bound, verdict, tol, _label(f),
                            {"mixed_value": mixed.value, "mixed_lower": mixed.lower_bound,
                             "conjugate_truncation_estimate": trunc, "solver_gap": res.gap,
                             "grid_bias": res.grid_bias})


def weighted_check(f, n: int, psi: Sequence[float], *, grid: int = DEFAULT_GRID,
                     tol: float = INEQ_TOL) -> InequalityReport:
    """|f_n| + sum_k psi_k |f_k| against E_n(f)_inf; ``psi[i]`` weights k = 2n + 1 + i."""
    psi = np.asarray(psi, dtype=float)
    if np.any(psi < 0):
        raise ValueError("weights must be non-negative")
    start = 2 * n + 1
    top = start + psi.size - 1
    s = _coeffs(f, top)
    fk = np.abs(s.coeffs[start:top + 1])
    lhs = abs(s[n]) + float(np.sum(fk * psi[:fk.size]))
    res = best_approx(f, n, HardyExponent.INF, grid=grid)
    total = float(psi.sum())
    return InequalityReport("weighted", {"n": n, "weights": psi.size, "weight_sum": total}, lhs,
                            res.value, res.lower_bound,
                            _verdict(lhs, res.value, tol, _uncertainty(res)), tol, _label(f),
                            {"admissible": total <= 0.5, "solver_gap": res.gap,
                             "grid_bias": res.grid_bias})


def weighted_witness(n: int, psi: Sequence[float], *, grid: int = DEFAULT_GRID,
                       tol: float = INEQ_TOL) -> InequalityReport:
    """Evaluate the weighted bound on f_rho0 with N = 2n+1.

    rho0 solves sum_i psi[i] rho0^(2n+1+i) = 1/2, so it exists only when the
    weights sum to more than 1/2 (``ValueError`` otherwise).  If f_rho0 does
    not violate the bound, the fixed witness radii are tried and the report
    with the smallest slack is returned.
    """
    rho0 = bohr_threshold(weight_series(psi, 2 * n + 1))
    reports = []
    for rho in (rho0, *WITNESS_RHOS):
        fam = ExtremalFamily.blaschke_shift(n, 2 * n + 1, rho)
        rep = weighted_check(fam, n, psi, grid=grid, tol=tol)
        rep.extra["rho0"] = rho0
        rep.extra["rho"] = rho
        if rep.violated:
            return rep
        reports.append(rep)
    return min(reports, key=lambda r: r.slack)


def bohr_weights(rho: float, upto: int = 200) -> np.ndarray:
    """psi_k = rho^k for k = 1..upto (the n = 0 weights)."""
    return rho ** np.arange(1, upto + 1, dtype=float)


def r_class_membership(f, N: int, tol: float = DEFAULT_TOL) -> bool:
    """Re (1/f_N) sum_k f_(k+N) z^k >= 1/2 on the disc (within ``tol``)."""
    s = as_series(f)
    lead = s[N]
    if abs(lead) == 0:
        raise ValueError(f"coefficient {N} vanishes")
    g = s.shifted(N) * (1 / lead)
    sweep = min_real_part(KernelSpec.from_coefficients(0, g))
    margins = [v - 0.5 for v in sweep.minima]
    deciding = min(min(margins), boundary_extrapolation(sweep.radii, margins))
    return deciding >= -tol


@dataclass
class CharacterizationResult:
    predicted_equality: bool
    observed_equality: bool
    coefficient: float
    best_approximation: float

    @property
    def agrees(self) -> bool:
        return self.predicted_equality == self.observed_equality

    def __bool__(self) -> bool:
        return self.predicted_equality


def equality_characterization_check(f, n: int, q, *, grid: int = DEFAULT_GRID,
                                    tol: float = 1e-4) -> CharacterizationResult:
    """Predict whether |f_n| = E_n(f)_q and compare with the solver.

    Equality is predicted iff f is a polynomial of degree <= n (q > 1), or a
    polynomial of degree <= 2n with Re sum_{k<=n} (f_(n+k)/f_n) z^k >= 1/2 on
    the disc (q = 1).
    """
    q = HardyExponent.parse(q)
    s = as_series(f)
    lead = s[n]
    if abs(lead) == 0:
        raise ValueError(f"coefficient {n} vanishes")
    deg_limit = 2 * n if q is HardyExponent.ONE else n
    predicted = s.tail_kind == EXACT and s.degree() <= deg_limit
    if predicted and q is HardyExponent.ONE:
        predicted = r_class_membership(s, n)
    res = best_approx(f, n, q, grid=grid)
    observed = abs(res.value - abs(lead)) <= max(tol, 2 * res.gap)
    return CharacterizationResult(predicted, observed, abs(lead), res.value)


def random_polynomial_corpus(count: int, max_degree: int = 40, seed: int = 0) -> list:
    """Seeded random polynomials with complex Gaussian coefficients and random decay."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        d = int(rng.integers(1, max_degree + 1))
        decay = rng.uniform(0.5, 1.0) ** np.arange(d + 1)
        c = (rng.standard_normal(d + 1) + 1j * rng.standard_normal(d + 1)) * decay
        out.append(PowerSeries(c / np.abs(c).sum(), EXACT))
    return out


def r_class_member(N: int, a: complex, w: complex) -> ClosedForm:
    """a z^N / (1 - w z) with |w| < 1; its normalized tail 1/(1 - w z) has real part > 1/(1 + |w|)."""
    if abs(w) >= 1:
        raise ValueError("|w| must be < 1")
    base = geometric_rational(w)

    def series(m):
        if m < N:
            return PowerSeries(np.zeros(m + 1), TRUNCATED, abs(a) / (1 - abs(w)))
        s = base.series(m - N)
        tb = None if s.tail_bound is None else abs(a) * s.tail_bound
        kind = EXACT if s.tail_kind == EXACT else TRUNCATED
        return PowerSeries(np.concatenate([np.zeros(N), a * s.coeffs]), kind, tb)

    poles = () if w == 0 else (1 / w,)
    return ClosedForm(f"rclass:{N},{complex(a):g},{complex(w):g}",
                      lambda z: a * z ** N / (1 - w * z), series, poles)


def random_r_class_members(count: int, seed: int = 0, max_rho: float = 0.7, max_N: int = 4) -> list:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        N = int(rng.integers(1, max_N + 1))
        a = rng.uniform(0.2, 2.0) * np.exp(2j * np.pi * rng.uniform())
        w = rng.uniform(0, max_rho) * np.exp(2j * np.pi * rng.uniform())
        out.append(r_class_member(N, a, w))
    return out
