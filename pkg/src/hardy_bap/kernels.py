"""Hadamard convolution kernels and their best-approximation-preserving certificates.

A kernel K of order n acts as f -> K * f.  It preserves best approximation
in H^inf exactly when its coefficients vanish on n+1..2n and
Re K(z)/z^n >= 1/2 on the disc.  The infimum over the open disc is
estimated on a sweep of circles; because Re K(z)/z^n is harmonic the
per-circle minima decrease towards the boundary, and the last two radii are
linearly extrapolated to r = 1 to decide threshold cases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .series import (EXACT, TRUNCATED, ClosedForm, PowerSeries, SingularityError, evaluate,
                     grid_points, hadamard)

DEFAULT_RADII = (0.5, 0.9, 0.99, 1 - 1e-3, 1 - 1e-4)
DEFAULT_ANGLES = 8192
DEFAULT_TOL = 1e-6

PASS, FAIL, MARGINAL = "pass", "fail", "marginal"


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finitely many atoms t_j on the unit circle with weights w_j >= 0 summing to 1."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        t = np.array(self.points, dtype=complex).ravel()
        w = np.array(self.weights, dtype=float).ravel()
        if t.size != w.size or t.size == 0:
            raise ValueError("measure needs the same positive number of points and weights")
        if np.any(w < 0):
            raise ValueError("negative weight in measure")
        if abs(w.sum() - 1) > 1e-12:
            raise ValueError(f"measure mass is {w.sum()!r}, expected 1")
        if np.any(np.abs(np.abs(t) - 1) > 1e-12):
            raise ValueError("measure atom off the unit circle")
        t.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "points", t)
        object.__setattr__(self, "weights", w)

    @classmethod
    def roots_of_unity(cls, N: int, phase: float = 0.0) -> "DiscreteMeasure":
        t = np.exp(1j * (phase + 2 * np.pi * np.arange(N) / N))
        return cls(t, np.full(N, 1.0 / N))

    def moment(self, k: int) -> complex:
        return complex(np.sum(self.weights * self.points ** k))


@dataclass(frozen=True)
class KernelSpec:
    n: int
    form: str
    N: int | None = None
    series: PowerSeries | None = None
    measure: DiscreteMeasure | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("kernel order must be >= 0")
        if self.form == "geometric":
            if self.N is None or self.N < 1:
                raise ValueError("geometric kernel needs N >= 1")
        elif self.form == "coefficients":
            if self.series is None:
                raise ValueError("coefficient kernel needs a series")
        elif self.form == "measure":
            if self.measure is None:
                raise ValueError("measure kernel needs a measure")
        elif self.form != "monomial":
            raise ValueError(f"unknown kernel form {self.form!r}")

    @classmethod
    def geometric(cls, n: int, N: int) -> "KernelSpec":
        return cls(int(n), "geometric", N=int(N))

    @classmethod
    def monomial(cls, n: int) -> "KernelSpec":
        return cls(int(n), "monomial")

    @classmethod
    def from_coefficients(cls, n: int, series: PowerSeries) -> "KernelSpec":
        return cls(int(n), "coefficients", series=series)

    @property
    def label(self) -> str:
        if self.form == "geometric":
            return f"geometric:{self.n},{self.N}"
        if self.form == "monomial":
            return f"monomial:{self.n}"
        return f"{self.form}:{self.n}"

    def coefficient(self, k: int) -> complex:
        n = self.n
        if self.form == "monomial":
            return 1.0 + 0j if k == n else 0j
        if self.form == "geometric":
            return 1.0 + 0j if k >= n and (k - n) % self.N == 0 else 0j
        if self.form == "measure":
            return self.measure.moment(-(k - n)) if k >= n else 0j
        return self.series[k]

    def coefficient_bound(self) -> float | None:
        """sup_k |K_k| beyond any truncation, when known."""
        if self.form == "coefficients":
            return 0.0 if self.series.tail_kind == EXACT else None
        return 1.0

    def reduced(self, z: np.ndarray) -> np.ndarray:
        """K(z)/z^n, with the removable singularity at 0 handled by index shifting."""
        z = np.asarray(z, dtype=complex)
        if self.form == "monomial":
            return np.ones_like(z)
        if self.form == "geometric":
            return 1.0 / (1.0 - z ** self.N)
        if self.form == "measure":
            mu = self.measure
            return np.sum(mu.weights[:, None] / (1.0 - np.conj(mu.points)[:, None] * z.ravel()[None, :]),
                          axis=0).reshape(z.shape)
        return evaluate(self.series.shifted(self.n), z)

    def to_json_dict(self) -> dict:
        if self.form == "geometric":
            form = {"geometric": {"N": self.N}}
        elif self.form == "monomial":
            form = {"monomial": {}}
        elif self.form == "coefficients":
            form = {"coefficients": self.series.to_json_dict()}
        else:
            mu = self.measure
            form = {"measure": {"atoms": [[float(t.real), float(t.imag), float(w)]
                                          for t, w in zip(mu.points, mu.weights)]}}
        return {"n": self.n, "form": form}

    @classmethod
    def from_json_dict(cls, d: dict) -> "KernelSpec":
        n = int(d["n"])
        form = d["form"]
        if not isinstance(form, dict) or len(form) != 1:
            raise ValueError("kernel 'form' must be an object with exactly one key")
        (kind, body), = form.items()
        if kind == "geometric":
            return cls.geometric(n, int(body["N"]))
        if kind == "monomial":
            return cls.monomial(n)
        if kind == "coefficients":
            return cls.from_coefficients(n, PowerSeries.from_json_dict(body))
        if kind == "measure":
            atoms = np.asarray(body["atoms"], dtype=float).reshape(-1, 3)
            return cls(n, "measure", measure=DiscreteMeasure(atoms[:, 0] + 1j * atoms[:, 1], atoms[:, 2]))
        raise ValueError(f"unknown kernel form {kind!r}")

    def poles(self) -> np.ndarray:
        if self.form == "geometric":
            return np.exp(2j * np.pi * np.arange(self.N) / self.N)
        if self.form == "measure":
            return self.measure.points
        return np.zeros(0, dtype=complex)


def kernel_coefficients(K: KernelSpec, upto: int) -> PowerSeries:
    """Coefficients 0..upto of the kernel.

    The measure form uses 1/(1 - conj(t) z) = sum_m conj(t)^m z^m, so the
    coefficient at n + m is sum_j w_j conj(t_j)^m.
    """
    if upto < K.n:
        raise ValueError(f"upto must be at least the order n = {K.n}")
    if K.form == "coefficients":
        s = K.series
        if upto <= s.truncation or s.tail_kind == EXACT:
            return s.resized(upto)
        return s
    if K.form == "monomial":
        c = np.zeros(upto + 1, dtype=complex)
        c[K.n] = 1
        return PowerSeries(c, EXACT)
    c = np.zeros(upto + 1, dtype=complex)
    if K.form == "geometric":
        c[K.n::K.N] = 1
    else:
        m = np.arange(upto - K.n + 1)
        mu = K.measure
        c[K.n:] = np.sum(mu.weights[:, None] * np.conj(mu.points)[:, None] ** m[None, :], axis=0)
    return PowerSeries(c, TRUNCATED)


def kernel_from_measure(n: int, mu: DiscreteMeasure) -> KernelSpec:
    """K(z) = z^n sum_j w_j / (1 - conj(t_j) z).  Moment conditions are not checked here."""
    if not isinstance(mu, DiscreteMeasure):
        raise TypeError("expected a DiscreteMeasure")
    return KernelSpec(int(n), "measure", measure=mu)


def moment_check(mu: DiscreteMeasure, n: int) -> float:
    """max_{1<=k<=n} |int t^k dmu|; negative k follow by conjugation."""
    if n <= 0:
        return 0.0
    return max(abs(mu.moment(k)) for k in range(1, n + 1))


class RealPartSweep(NamedTuple):
    value: float
    argmin: complex
    radii: tuple
    minima: tuple


def _sweep(fn, radii: Sequence[float], m: int, poles: np.ndarray, pole_tol: float = 1e-12,
           reduce=np.argmin):
    per_radius = []
    best_val, best_z = None, None
    for r in radii:
        if not 0 < r <= 1:
            raise ValueError(f"radius {r} outside (0, 1]")
        pts = grid_points(r, m)
        if poles.size and np.min(np.abs(pts[:, None] - poles[None, :])) < pole_tol:
            raise SingularityError(f"kernel pole within {pole_tol} of the circle r={r}")
        vals = fn(pts)
        j = int(reduce(vals))
        per_radius.append(float(vals[j]))
        if best_val is None or (reduce is np.argmin and vals[j] < best_val) or (
                reduce is np.argmax and vals[j] > best_val):
            best_val, best_z = float(vals[j]), complex(pts[j])
    return best_val, best_z, tuple(per_radius)


def min_real_part(K: KernelSpec, radii: Sequence[float] = DEFAULT_RADII,
                  m: int = DEFAULT_ANGLES) -> RealPartSweep:
    """Minimum of Re K(z)/z^n over ``m`` angles on each circle of the sweep."""
    lead = K.coefficient(K.n)
    if abs(lead - 1) > 1e-9:
        raise ValueError(f"kernel coefficient at n={K.n} is {lead}, expected 1")
    val, arg, minima = _sweep(lambda z: K.reduced(z).real, radii, m, K.poles())
    return RealPartSweep(val, arg, tuple(float(r) for r in radii), minima)


def boundary_extrapolation(radii: Sequence[float], values: Sequence[float]) -> float:
    """Linear extrapolation in 1 - r from the two outermost circles to r = 1."""
    if len(radii) < 2:
        return float(values[-1])
    d1, d2 = 1 - radii[-2], 1 - radii[-1]
    v1, v2 = values[-2], values[-1]
    if d1 == d2:
        return float(v2)
    return float(v2 - (v1 - v2) * d2 / (d1 - d2))


@dataclass
class Certificate:
    verdict: str
    kind: str
    coefficient_gap_margin: float
    min_real_part: float | None
    pair_margin: float | None
    sweep_radii: list
    sweep_values: list
    extrapolated_margin: float | None
    tolerance: float
    reasons: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict in (PASS, MARGINAL)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "kind": self.kind,
            "coefficient_gap_margin": self.coefficient_gap_margin,
            "min_real_part": self.min_real_part,
            "pair_margin": self.pair_margin,
            "sweep_radii": list(self.sweep_radii),
            "sweep_values": list(self.sweep_values),
            "extrapolated_margin": self.extrapolated_margin,
            "tolerance": self.tolerance,
            "reasons": list(self.reasons),
        }


def _decide(gap: float, margins: Sequence[float], radii, tol: float, reasons: list):
    """Verdict from a coefficient gap and a per-radius margin (>= 0 is good)."""
    sweep_margin = min(margins)
    extrap = boundary_extrapolation(radii, margins)
    deciding = min(sweep_margin, extrap)
    if gap > tol:
        reasons.append(f"coefficient gap {gap:.3g} exceeds tolerance")
        return FAIL, extrap
    if deciding < -tol:
        reasons.append(f"margin {deciding:.3g} below threshold")
        return FAIL, extrap
    if deciding <= tol:
        return MARGINAL, extrap
    return PASS, extrap


def _check_order(K: KernelSpec, tol: float) -> None:
    lead = K.coefficient(K.n)
    if abs(lead - 1) > tol:
        raise ValueError(f"kernel coefficient at n={K.n} is {lead}, expected 1")
    low = max((abs(K.coefficient(k)) for k in range(K.n)), default=0.0)
    if low > tol:
        raise ValueError(f"kernel has coefficients below index n={K.n}")


def _gap_margin(coeff, lo: int, hi: int) -> float:
    return max((abs(coeff(k)) for k in range(lo, hi + 1)), default=0.0)


def certify_bap(K: KernelSpec, tol: float = DEFAULT_TOL, radii: Sequence[float] = DEFAULT_RADII,
                m: int = DEFAULT_ANGLES) -> Certificate:
    """Check coefficients n+1..2n vanish and Re K/z^n >= 1/2 on the sweep."""
    _check_order(K, tol)
    gap = _gap_margin(K.coefficient, K.n + 1, 2 * K.n)
    sweep = min_real_part(K, radii, m)
    margins = [v - 0.5 for v in sweep.minima]
    reasons: list = []
    verdict, extrap = _decide(gap, margins, sweep.radii, tol, reasons)
    return Certificate(verdict, "bap", gap, sweep.value, None, list(sweep.radii),
                       list(sweep.minima), extrap, tol, reasons)


def certify_pair(K: KernelSpec, L: PowerSeries, tol: float = DEFAULT_TOL,
                 radii: Sequence[float] = DEFAULT_RADII, m: int = DEFAULT_ANGLES) -> Certificate:
    """Check the kernel pair condition Re K/z^n - 1/2 >= |L/z^n| with L = O(z^(2n+1))."""
    _check_order(K, tol)
    n = K.n
    if L.truncation < 2 * n + 1 and L.tail_kind != EXACT:
        raise ValueError(f"L must be known up to index {2 * n + 1}")
    gap = max(_gap_margin(K.coefficient, n + 1, 2 * n), _gap_margin(L.__getitem__, 0, 2 * n))
    Ls = L.shifted(n)
    pair_fn = lambda z: K.reduced(z).real - 0.5 - np.abs(evaluate(Ls, z))
    _, _, pair_minima = _sweep(pair_fn, radii, m, K.poles())
    sweep = min_real_part(K, radii, m)
    reasons: list = []
    verdict, extrap = _decide(gap, pair_minima, radii, tol, reasons)
    return Certificate(verdict, "pair", gap, sweep.value, min(min(pair_minima), extrap),
                       [float(r) for r in radii], list(pair_minima), extrap, tol, reasons)


def certify_tail_bound(L: PowerSeries, n: int, tol: float = DEFAULT_TOL,
                     radii: Sequence[float] = DEFAULT_RADII, m: int = DEFAULT_ANGLES) -> Certificate:
    """Check |L(z)| <= |z|^(2n+1) / 2 on the disc.

    The ratio |L(z)| / |z|^(2n+1) is evaluated through the series shifted by
    2n+1, so it is continuous at 0.  ``pair_margin`` is 1/2 minus the ratio.
    """
    s = 2 * n + 1
    if L.truncation < s and L.tail_kind != EXACT:
        raise ValueError(f"L must be known up to index {s}")
    gap = _gap_margin(L.__getitem__, 0, s - 1)
    Ls = L.shifted(s)
    ratio_fn = lambda z: 0.5 - np.abs(evaluate(Ls, z))
    _, _, margins = _sweep(ratio_fn, radii, m, np.zeros(0))
    reasons: list = []
    verdict, extrap = _decide(gap, margins, radii, tol, reasons)
    return Certificate(verdict, "tail_bound", gap, None, min(min(margins), extrap),
                       [float(r) for r in radii], [0.5 - v for v in margins], extrap, tol, reasons)


def apply_operator(K: KernelSpec, f: PowerSeries) -> PowerSeries:
    """Hadamard product K * f at the truncation of ``f``."""
    kc = kernel_coefficients(K, max(f.truncation, K.n))
    out = hadamard(kc, f)
    if out.tail_kind != EXACT and f.tail_bound is not None:
        bound = K.coefficient_bound()
        if bound is not None:
            return PowerSeries(out.coeffs, TRUNCATED, bound * f.tail_bound)
    return out


def measure_operator_direct(mu: DiscreteMeasure, n: int, f, z) -> np.ndarray:
    """sum_j w_j f(conj(t_j) z) t_j^n, the measure form of the convolution."""
    z = np.asarray(z, dtype=complex)
    vals = [w * f(np.conj(t) * z) * t ** n for t, w in zip(mu.points, mu.weights)]
    return np.sum(vals, axis=0)


def geometric_image(n: int, N: int, rho: float) -> ClosedForm:
    """The geometric kernel of order n and step N applied to 1/(1 - rho z).

    Closed form rho^n z^n / (1 - rho^N z^N); coefficients rho^k at k = n + jN.
    """
    if not 0.0 <= rho < 1.0:
        raise ValueError(f"rho must lie in [0, 1), got {rho}")
    K = KernelSpec.geometric(n, N)
    a = rho ** N

    def series(m):
        k = np.arange(m + 1)
        c = np.where((k >= n) & ((k - n) % N == 0), float(rho) ** k, 0.0)
        if rho == 0:
            return PowerSeries(c, EXACT)
        # omitted coefficients are rho^(n + jN) for n + jN > m
        j0 = (m - n) // N + 1 if m >= n else 0
        return PowerSeries(c, TRUNCATED, rho ** (n + j0 * N) / (1 - a))

    poles = () if rho == 0 else tuple(K.poles() / rho)
    return ClosedForm(f"geometric-image:{n},{N},{rho:g}",
                      lambda z: rho ** n * z ** n / (1.0 - a * z ** N), series, poles)
