"""Complete elliptic integral K and the extremal function families.

The families are generated from their rational closed forms by exact
coefficient recurrences; none of them goes through sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import bisect

from .series import EXACT, TRUNCATED, ClosedForm, DomainError, PowerSeries


def agm(a: float, b: float, rtol: float = 1e-16, maxiter: int = 64) -> float:
    for _ in range(maxiter):
        if abs(a - b) <= rtol * abs(a):
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def elliptic_K(x: float) -> float:
    """Complete elliptic integral of the first kind with modulus ``x``.

    K(x) = int_0^{pi/2} dtheta / sqrt(1 - x^2 sin^2 theta), evaluated as
    pi / (2 AGM(1, sqrt(1 - x^2))).

    Raises
    ------
    DomainError
        If ``x`` is outside [0, 1).
    """
    x = float(x)
    if not 0.0 <= x < 1.0:
        raise DomainError(f"elliptic_K needs 0 <= x < 1, got {x}")
    # 1 - x^2 as (1-x)(1+x) keeps digits near x = 1
    return math.pi / (2.0 * agm(1.0, math.sqrt((1.0 - x) * (1.0 + x))))


def cayley_l1_norm_reference(n: int, rho: float) -> float:
    """(2/pi) rho^n K(rho^(n+1)): the L1 distance of 1/(1-rho z) from degree < n polynomials."""
    return 2.0 / math.pi * rho ** n * elliptic_K(rho ** (n + 1))


@dataclass(frozen=True)
class ExtremalFamily:
    """One member of a witness family.

    ``blaschke_shift``: z^n (z^(N-n) - rho) / (1 - rho z^(N-n)), an inner function.
    ``cayley_rational``: 1 / (1 - rho z).
    """

    kind: str
    rho: float
    n: int = 0
    N: int = 1

    def __post_init__(self):
        if not 0.0 <= self.rho < 1.0:
            raise ValueError(f"rho must lie in [0, 1), got {self.rho}")
        if self.kind == "blaschke_shift":
            if not (0 <= self.n < self.N):
                raise ValueError(f"blaschke_shift needs N > n >= 0, got n={self.n}, N={self.N}")
        elif self.kind != "cayley_rational":
            raise ValueError(f"unknown family {self.kind!r}")

    @classmethod
    def blaschke_shift(cls, n: int, N: int, rho: float) -> "ExtremalFamily":
        return cls("blaschke_shift", float(rho), int(n), int(N))

    @classmethod
    def cayley_rational(cls, rho: float) -> "ExtremalFamily":
        return cls("cayley_rational", float(rho))

    @property
    def label(self) -> str:
        if self.kind == "blaschke_shift":
            return f"blaschke:{self.n},{self.N},{self.rho:g}"
        return f"cayley:{self.rho:g}"

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if self.kind == "cayley_rational":
            return 1.0 / (1.0 - self.rho * z)
        w = z ** (self.N - self.n)
        return z ** self.n * (w - self.rho) / (1.0 - self.rho * w)

    def poles(self) -> tuple:
        if self.rho == 0:
            return ()
        if self.kind == "cayley_rational":
            return (1.0 / self.rho,)
        m = self.N - self.n
        root = self.rho ** (-1.0 / m)
        return tuple(root * np.exp(2j * np.pi * np.arange(m) / m))

    def coefficients(self, upto: int) -> PowerSeries:
        return family_coefficients(self, upto)

    def closed_form(self) -> ClosedForm:
        return ClosedForm(self.label, self.__call__, self.coefficients, self.poles())


def family_coefficients(F: ExtremalFamily, upto: int) -> PowerSeries:
    """Exact Taylor coefficients 0..upto, with an l1 bound on the rest.

    For the shifted Blaschke factor with m = N - n,
    f_n = -rho and f_{n + j m} = (1 - rho^2) rho^(j-1) for j >= 1; all other
    coefficients vanish.
    """
    rho = F.rho
    c = np.zeros(upto + 1, dtype=complex)
    if F.kind == "cayley_rational":
        c[:] = rho ** np.arange(upto + 1)
        if rho == 0:
            return PowerSeries(c, EXACT)
        return PowerSeries(c, TRUNCATED, rho ** (upto + 1) / (1 - rho))
    if upto < F.N:
        raise ValueError(f"need upto >= N = {F.N}")
    n, m = F.n, F.N - F.n
    c[n] = -rho
    j = np.arange(1, (upto - n) // m + 1)
    c[n + j * m] = (1 - rho * rho) * rho ** (j - 1)
    if rho == 0:
        return PowerSeries(c, EXACT)
    first_missing = j[-1] + 1 if j.size else 1
    # sum_{j >= J} (1 - rho^2) rho^(j-1) = (1 + rho) rho^(J-1)
    return PowerSeries(c, TRUNCATED, (1 + rho) * rho ** (first_missing - 1))


def bohr_threshold(psi_tail_sum: Callable[[float], float], target: float = 0.5,
                   xtol: float = 1e-12) -> float:
    """The radius rho0 in (0, 1) where an increasing weight series reaches ``target``."""
    lo, hi = psi_tail_sum(0.0) - target, psi_tail_sum(1.0) - target
    if lo > 0 or hi < 0:
        raise ValueError(f"weights do not straddle target {target}: "
                         f"values {lo + target} at 0 and {hi + target} at 1")
    if hi == 0:
        return 1.0
    return float(bisect(lambda r: psi_tail_sum(r) - target, 0.0, 1.0, xtol=xtol, rtol=4 * np.finfo(float).eps))


def weight_series(psi: np.ndarray, start: int) -> Callable[[float], float]:
    """rho -> sum_i psi[i] rho^(start + i)."""
    psi = np.asarray(psi, dtype=float)
    k = start + np.arange(psi.size)
    return lambda r: float(np.sum(psi * r ** k))
