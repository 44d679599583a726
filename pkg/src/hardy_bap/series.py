"""Analytic functions on the unit disc: Taylor coefficients, boundary samples, H^q norms.

A function is held either as a truncated coefficient vector (:class:`PowerSeries`),
as a vectorised closed form (:class:`ClosedForm`), or as samples on a circle
(:class:`BoundaryGrid`).  The conversions between them go through the FFT.
"""

from __future__ import annotations

import enum
import json
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

DEFAULT_TRUNCATION = 256
DEFAULT_GRID = 4096

EXACT = "exact_polynomial"
TRUNCATED = "truncated_analytic"


class DomainError(ValueError):
    """Argument outside the closed unit disc (or otherwise outside the domain)."""


class SingularityError(ValueError):
    """A sample point lies too close to a pole of a closed-form function."""


class ConditioningWarning(RuntimeWarning):
    pass


class HardyExponent(enum.Enum):
    ONE = "1"
    TWO = "2"
    INF = "inf"

    @classmethod
    def parse(cls, q: "HardyExponent | str | float | int") -> "HardyExponent":
        if isinstance(q, cls):
            return q
        text = str(q).strip().lower()
        aliases = {"1": cls.ONE, "1.0": cls.ONE, "one": cls.ONE,
                   "2": cls.TWO, "2.0": cls.TWO, "two": cls.TWO,
                   "inf": cls.INF, "infinity": cls.INF, "oo": cls.INF}
        if text in aliases:
            return aliases[text]
        raise ValueError(f"unsupported Hardy exponent {q!r}; expected 1, 2 or inf")

    def __str__(self) -> str:
        return self.value


def _is_power_of_two(m: int) -> bool:
    return m >= 2 and (m & (m - 1)) == 0


@dataclass(frozen=True)
class PowerSeries:
    """Taylor coefficients f_0..f_M of a function holomorphic in the disc.

    ``tail_kind`` is ``"exact_polynomial"`` when the coefficients are the whole
    function and ``"truncated_analytic"`` otherwise.  ``tail_bound``, when
    known, bounds the l1 norm of the omitted coefficients, hence also the
    sup norm of the omitted tail on the closed disc.
    """

    coeffs: np.ndarray
    tail_kind: str = EXACT
    tail_bound: float | None = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        if self.tail_kind not in (EXACT, TRUNCATED):
            raise ValueError(f"unknown tail_kind {self.tail_kind!r}")
        if self.tail_kind == EXACT:
            object.__setattr__(self, "tail_bound", 0.0)

    @property
    def truncation(self) -> int:
        return self.coeffs.size - 1

    @property
    def boundary_regular(self) -> bool:
        return self.tail_kind == EXACT or self.tail_bound is not None

    def __getitem__(self, k: int) -> complex:
        if 0 <= k <= self.truncation:
            return complex(self.coeffs[k])
        if k < 0 or self.tail_kind == EXACT:
            return 0j
        raise IndexError(f"coefficient {k} is beyond truncation {self.truncation}")

    def __mul__(self, c: complex) -> "PowerSeries":
        tb = None if self.tail_bound is None else abs(c) * self.tail_bound
        return PowerSeries(self.coeffs * c, self.tail_kind, tb)

    __rmul__ = __mul__

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        m = max(self.truncation, other.truncation)
        a, b = self.resized(m), other.resized(m)
        kind = EXACT if a.tail_kind == EXACT and b.tail_kind == EXACT else TRUNCATED
        tb = None
        if a.tail_bound is not None and b.tail_bound is not None:
            tb = a.tail_bound + b.tail_bound
        return PowerSeries(a.coeffs + b.coeffs, kind, tb)

    def resized(self, m: int) -> "PowerSeries":
        """Coefficients 0..m; zero-padding is only legal for exact polynomials."""
        if m == self.truncation:
            return self
        if m < self.truncation:
            dropped = self.coeffs[m + 1:]
            extra = float(np.abs(dropped).sum())
            if self.tail_kind == EXACT and extra == 0.0:
                return PowerSeries(self.coeffs[:m + 1], EXACT)
            tb = None if self.tail_bound is None else self.tail_bound + extra
            return PowerSeries(self.coeffs[:m + 1], TRUNCATED, tb)
        if self.tail_kind != EXACT:
            raise ValueError("cannot extend a truncated series beyond its truncation")
        return PowerSeries(np.concatenate([self.coeffs, np.zeros(m - self.truncation)]), EXACT)

    def shifted(self, s: int) -> "PowerSeries":
        """The series of (f(z) - sum_{k<s} f_k z^k) / z^s."""
        if s > self.truncation:
            return PowerSeries([0.0], self.tail_kind, self.tail_bound)
        return PowerSeries(self.coeffs[s:], self.tail_kind, self.tail_bound)

    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    def to_json_dict(self) -> dict:
        d = {"coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
             "truncation": self.truncation,
             "tail_kind": self.tail_kind}
        if self.tail_kind == TRUNCATED and self.tail_bound is not None:
            d["tail_bound"] = float(self.tail_bound)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict) -> "PowerSeries":
        raw = d["coeffs"]
        coeffs = [complex(c[0], c[1]) if isinstance(c, (list, tuple)) else complex(c) for c in raw]
        if "truncation" in d and int(d["truncation"]) != len(coeffs) - 1:
            raise ValueError(f"truncation {d['truncation']} does not match {len(coeffs)} coefficients")
        return cls(coeffs, d.get("tail_kind", EXACT), d.get("tail_bound"))

    @classmethod
    def from_json(cls, text: str) -> "PowerSeries":
        return cls.from_json_dict(json.loads(text))


def monomial(n: int, c: complex = 1.0) -> PowerSeries:
    """The exact polynomial c z^n (so ``monomial(n)`` is e_n)."""
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[n] = c
    return PowerSeries(coeffs, EXACT)


def polynomial(coeffs: Sequence[complex]) -> PowerSeries:
    return PowerSeries(coeffs, EXACT)


@dataclass(frozen=True)
class ClosedForm:
    """A vectorised holomorphic function with known poles and Taylor expansion.

    ``series(M)`` must return the exact coefficients 0..M together with a
    bound on the l1 norm of the remaining ones.
    """

    name: str
    func: Callable[[np.ndarray], np.ndarray]
    series_fn: Callable[[int], PowerSeries]
    poles: tuple = ()

    def __call__(self, z):
        return self.func(np.asarray(z, dtype=complex))

    def series(self, upto: int = DEFAULT_TRUNCATION) -> PowerSeries:
        return self.series_fn(upto)


def geometric_rational(rho: complex) -> ClosedForm:
    """1/(1 - rho z), |rho| < 1."""
    rho = complex(rho)
    a = abs(rho)

    def series(m):
        c = rho ** np.arange(m + 1)
        if rho == 0:
            return PowerSeries(c, EXACT)
        return PowerSeries(c, TRUNCATED, a ** (m + 1) / (1 - a))

    poles = () if rho == 0 else (1 / rho,)
    return ClosedForm(f"1/(1-{rho:g}z)", lambda z: 1.0 / (1.0 - rho * z), series, poles)


@dataclass(frozen=True)
class BoundaryGrid:
    """Samples f(r exp(2 pi i j / M)), j = 0..M-1."""

    radius: float
    samples: np.ndarray

    def __post_init__(self):
        s = np.array(self.samples, dtype=complex).ravel()
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)
        if not _is_power_of_two(s.size):
            raise ValueError(f"grid size {s.size} is not a power of two >= 2")
        if not 0 < self.radius <= 1:
            raise DomainError(f"radius {self.radius} outside (0, 1]")

    @property
    def size(self) -> int:
        return self.samples.size

    @property
    def points(self) -> np.ndarray:
        return grid_points(self.radius, self.size)


def grid_points(r: float, m: int) -> np.ndarray:
    return r * np.exp(2j * np.pi * np.arange(m) / m)


def _horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(z, dtype=complex)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def evaluate(f: PowerSeries, z):
    """Sum of the stored coefficients times z^k (Horner)."""
    za = np.asarray(z, dtype=complex)
    mod = np.abs(za)
    if np.any(mod > 1 + 1e-15):
        raise DomainError("evaluation point outside the closed unit disc")
    if f.tail_kind != EXACT and np.any(mod >= 1 - 1e-15):
        raise DomainError("a truncated series cannot be evaluated on the unit circle")
    out = _horner(f.coeffs, za)
    return complex(out) if out.ndim == 0 else out


def _check_grid(r: float, m: int) -> None:
    if not _is_power_of_two(int(m)):
        raise ValueError(f"grid size {m} is not a power of two >= 2")
    if not 0 < r <= 1:
        raise DomainError(f"radius {r} outside (0, 1]")


def sample_boundary(f, r: float = 1.0, m: int = DEFAULT_GRID, pole_tol: float = 1e-10) -> BoundaryGrid:
    """Sample a series or closed form on the circle of radius ``r`` at ``m`` points.

    Series are sampled with an inverse FFT after folding indices mod ``m``, so
    polynomials of any degree are sampled exactly.  On ``r = 1`` a series
    must be boundary-regular (exact or with a known tail bound).
    """
    _check_grid(r, m)
    if isinstance(f, ClosedForm):
        pts = grid_points(r, m)
        for p in f.poles:
            if np.min(np.abs(pts - p)) < pole_tol:
                raise SingularityError(f"{f.name}: pole at {p} within {pole_tol} of a sample point")
        return BoundaryGrid(r, f(pts))
    if isinstance(f, PowerSeries):
        if r == 1 and not f.boundary_regular:
            raise DomainError("truncated series without a tail bound cannot be sampled at r = 1")
        k = np.arange(f.coeffs.size)
        with np.errstate(under="ignore"):
            scaled = f.coeffs * r ** k
        folded = np.zeros(m, dtype=complex)
        np.add.at(folded, k % m, scaled)
        return BoundaryGrid(r, np.fft.ifft(folded) * m)
    if hasattr(f, "closed_form"):
        return sample_boundary(f.closed_form(), r, m, pole_tol)
    raise TypeError(f"cannot sample object of type {type(f).__name__}")


def fourier_coefficients(g: BoundaryGrid) -> PowerSeries:
    """Taylor coefficients 0..M/2-1 recovered from boundary samples."""
    m = g.size
    c = np.fft.fft(g.samples)[: m // 2] / m
    k = np.arange(m // 2)
    with np.errstate(under="ignore", divide="ignore"):
        scale = g.radius ** k
    if np.any(scale < 1e-290):
        warnings.warn("radius^k underflows for retained indices", ConditioningWarning, stacklevel=2)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        c = c / scale
    return PowerSeries(c, TRUNCATED)


def hadamard(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Coefficientwise product, truncated at the shorter of the two."""
    m = min(f.truncation, g.truncation)
    prod = f.coeffs[: m + 1] * g.coeffs[: m + 1]
    f_covers = f.tail_kind == EXACT and f.truncation <= m
    g_covers = g.tail_kind == EXACT and g.truncation <= m
    if f_covers or g_covers:
        return PowerSeries(prod, EXACT)
    return PowerSeries(prod, TRUNCATED)


def hardy_norm(f, q, r: float = 1.0, m: int = DEFAULT_GRID) -> float:
    """Radius-``r`` proxy of the H^q norm for q in {1, 2, inf}.

    For q = 2 a series gives the weighted l2 norm of its coefficients
    (Parseval); every other combination works on boundary samples, with the
    trapezoid rule for q = 1 and the sample maximum for q = inf.
    """
    q = HardyExponent.parse(q)
    if q is HardyExponent.TWO and isinstance(f, PowerSeries):
        k = np.arange(f.coeffs.size)
        with np.errstate(under="ignore"):
            return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2 * r ** (2 * k))))
    g = f if isinstance(f, BoundaryGrid) else sample_boundary(f, r, m)
    mod = np.abs(g.samples)
    if q is HardyExponent.INF:
        return float(mod.max())
    if q is HardyExponent.ONE:
        return float(mod.mean())
    return float(np.sqrt(np.mean(mod ** 2)))


def as_series(f, upto: int = DEFAULT_TRUNCATION) -> PowerSeries:
    """Coerce a series-like object (series, closed form, extremal family) to a PowerSeries."""
    if isinstance(f, PowerSeries):
        return f
    if isinstance(f, ClosedForm):
        return f.series(upto)
    if hasattr(f, "coefficients"):
        return f.coefficients(upto)
    if isinstance(f, BoundaryGrid):
        return fourier_coefficients(f)
    raise TypeError(f"cannot convert {type(f).__name__} to a power series")
