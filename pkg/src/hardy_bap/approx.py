"""Best polynomial approximation E_n(f)_q and the mixed L1 distance on a boundary grid.

Both discrete problems are convex in the coefficients of the approximant.

q = inf
    Linear program in (p, t): Re(exp(-i theta) (f(z_j) - p(z_j))) <= t.  The
    constraint family is generated lazily: rows start on the uniform
    direction set of size ``directions`` and are then added at the phase of
    the current residual at its worst points (an exchange / cutting-plane
    scheme).  The LP optimum is a lower bound on the discrete minimax value,
    the modulus of the returned residual an upper bound.
q = 1 (and the mixed problem)
    Iteratively reweighted least squares for the primal, and a dual feasible
    point (residual phases projected onto the annihilator of the
    approximating space) for the lower bound.  ``method="lp"`` runs the same
    cutting-plane LP as for q = inf instead, warm-started from IRLS.
q = 2
    Closed form: the l2 norm of the coefficients from index n on.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .kernels import DEFAULT_TOL, KernelSpec, apply_operator, certify_bap
from .lp import make_lp
from .series import (DEFAULT_GRID, DEFAULT_TRUNCATION, EXACT, BoundaryGrid, ClosedForm,
                     ConditioningWarning, HardyExponent, PowerSeries, as_series, grid_points,
                     hardy_norm, sample_boundary)

DEFAULT_DIRECTIONS = 64
DEFAULT_NEG_DEGREE = 64
APPROX_TOL = 1e-10


@dataclass
class ApproxResult:
    value: float
    lower_bound: float
    approximant: PowerSeries
    q: HardyExponent
    n: int
    grid_size: int
    directions: int
    radius: float = 1.0
    method: str = ""
    iterations: int = 0
    grid_bias: float | None = None
    truncation_bias: float | None = None
    conjugate: PowerSeries | None = None
    neg_degree: int | None = None
    value_half: float | None = None

    @property
    def gap(self) -> float:
        return self.value - self.lower_bound

    def to_dict(self) -> dict:
        d = {
            "value": self.value,
            "lower_bound": self.lower_bound,
            "gap": self.gap,
            "grid_size": self.grid_size,
            "directions": self.directions,
            "approximant": self.approximant.to_json_dict(),
            "q": str(self.q),
            "n": self.n,
            "radius": self.radius,
            "method": self.method,
            "iterations": self.iterations,
            "grid_bias": self.grid_bias,
            "truncation_bias": self.truncation_bias,
        }
        if self.conjugate is not None:
            d["conjugate"] = self.conjugate.to_json_dict()
            d["neg_degree"] = self.neg_degree
            d["value_half"] = self.value_half
        return d


def _samples(f, radius: float, grid: int, truncation: int, offset: bool = False):
    """Values of f on the grid (or the half-step offset grid); None if unavailable."""
    if isinstance(f, BoundaryGrid):
        if offset:
            return None
        if f.radius != radius:
            raise ValueError(f"grid radius {f.radius} does not match requested radius {radius}")
        return f.samples
    if not isinstance(f, (PowerSeries, ClosedForm)) and hasattr(f, "closed_form"):
        f = f.closed_form()
    if isinstance(f, ClosedForm):
        if offset:
            return f(grid_points(radius, grid) * np.exp(1j * np.pi / grid))
        return sample_boundary(f, radius, grid).samples
    if isinstance(f, PowerSeries):
        if offset:
            k = np.arange(f.coeffs.size)
            f = PowerSeries(f.coeffs * np.exp(1j * np.pi * k / grid), f.tail_kind, f.tail_bound)
        return sample_boundary(f, radius, grid).samples
    raise TypeError(f"cannot sample object of type {type(f).__name__}")


def _truncation_bias(f) -> float | None:
    if isinstance(f, PowerSeries):
        return f.tail_bound
    return 0.0 if isinstance(f, ClosedForm) or hasattr(f, "closed_form") else None


def _poly_basis(z: np.ndarray, n: int) -> np.ndarray:
    return z[:, None] ** np.arange(n)[None, :]


def _cut_rows(V, fvals, js, theta, extra_col):
    """Rows of -Re(eV) a + Im(eV) b - s <= -Re(e f) for e = exp(-i theta)."""
    e = np.exp(-1j * theta)
    W = e[:, None] * V[js]
    nr, m = W.shape
    vals = np.hstack([-W.real, W.imag, -np.ones((nr, 1))])
    idx = np.hstack([np.tile(np.arange(2 * m), (nr, 1)), extra_col[:, None]])
    starts = np.arange(nr) * (2 * m + 1)
    return starts, idx.ravel(), vals.ravel(), -(e * fvals[js]).real


def _direction_neighbours(phase: np.ndarray, directions: int):
    step = 2 * np.pi / directions
    lo = np.floor(phase / step) * step
    return lo, lo + step


def chebyshev_lp(fvals: np.ndarray, V: np.ndarray, directions: int = DEFAULT_DIRECTIONS,
                 tol: float = APPROX_TOL, backend: str = "auto", maxiter: int = 500,
                 coef_bound: float | None = None):
    """Discrete complex minimax fit: min_c max_j |f_j - (V c)_j|.

    Returns ``(c, upper, lower, iterations)``.
    """
    M, m = V.shape
    scale = float(np.abs(fvals).max())
    if m == 0 or scale == 0.0:
        return np.zeros(m, dtype=complex), scale, scale, 0
    B = coef_bound if coef_bound is not None else 2 * scale + 1
    lower = np.concatenate([np.full(2 * m, -B), [0.0]])
    upper = np.concatenate([np.full(2 * m, B), [np.inf]])
    cost = np.zeros(2 * m + 1)
    cost[-1] = 1.0
    lp = make_lp(lower, upper, cost, backend)
    tcol = 2 * m

    mod = np.abs(fvals)
    seeds = np.unique(np.concatenate([np.argsort(-mod)[: max(4 * m + 4, 16)],
                                      np.arange(0, M, max(1, M // 32))]))
    step = 2 * np.pi / directions
    base = np.round(np.angle(fvals[seeds]) / step) * step
    quarter = max(1, directions // 4) * step
    js = np.repeat(seeds, 4)
    th = np.repeat(base, 4) + np.tile(np.arange(4) * quarter, seeds.size)
    lp.add_rows(*_cut_rows(V, fvals, js, th, np.full(js.size, tcol)))

    c = np.zeros(m, dtype=complex)
    best_ub, best_c, t = np.inf, c, 0.0
    it = 0
    for it in range(1, maxiter + 1):
        x, t = lp.solve()
        c = x[:m] + 1j * x[m:2 * m]
        r = fvals - V @ c
        mod = np.abs(r)
        ub = float(mod.max())
        if ub < best_ub:
            best_ub, best_c = ub, c
        if best_ub - t <= tol * max(1.0, best_ub):
            break
        viol = np.flatnonzero(mod > t + 0.5 * (ub - t))
        if viol.size > 32:
            viol = viol[np.argsort(-mod[viol])[:32]]
        ph = np.angle(r[viol])
        lo, hi = _direction_neighbours(ph, directions)
        js = np.concatenate([viol, viol, viol])
        lp.add_rows(*_cut_rows(V, fvals, js, np.concatenate([ph, lo, hi]), np.full(js.size, tcol)))
    else:
        warnings.warn(f"minimax LP stopped after {maxiter} rounds with gap {best_ub - t:.3g}",
                      RuntimeWarning, stacklevel=2)
    return best_c, best_ub, min(t, best_ub), it


def _annihilator_projector(V: np.ndarray, w: np.ndarray):
    """Projector onto {g : sum_j w_j g_j V_jk = 0 for all k} in the w-weighted inner product."""
    s = np.sqrt(w)
    Q, _ = np.linalg.qr(np.conj(V) * s[:, None])

    def project(u):
        x = u * s
        x = x - Q @ (Q.conj().T @ x)
        return x / s

    return project


def l1_dual_bound(fvals, w, r, project, rounds: int = 20) -> float:
    """Weak-duality lower bound |sum_j w_j g_j f_j| for a feasible dual g.

    ``g`` starts from conj(sign(r)), is projected onto the annihilator of the
    approximating space and alternately clipped back into the unit disc; the
    final candidate is rescaled so that max |g_j| <= 1.
    """
    mod = np.abs(r)
    if mod.max() == 0.0:
        return 0.0
    u = np.conj(r) / np.maximum(mod, 1e-300)
    u[mod == 0] = 0
    g = project(u)
    best = abs(np.sum(w * g * fvals)) / max(1.0, np.abs(g).max())
    for _ in range(rounds):
        a = np.abs(g)
        g = project(np.where(a > 1, g / np.maximum(a, 1e-300), g))
        best = max(best, abs(np.sum(w * g * fvals)) / max(1.0, np.abs(g).max()))
    return float(best)


def l1_irls(fvals: np.ndarray, V: np.ndarray, w: np.ndarray, tol: float = APPROX_TOL,
            maxiter: int = 400):
    """min_c sum_j w_j |f_j - (V c)_j| by smoothed IRLS.  Returns ``(c, upper, lower, iterations)``."""
    M, m = V.shape
    if m == 0:
        val = float(w @ np.abs(fvals))
        return np.zeros(0, dtype=complex), val, val, 0
    project = _annihilator_projector(V, w)
    s = np.sqrt(w)
    c = np.linalg.lstsq(V * s[:, None], fvals * s, rcond=None)[0]
    best_ub, best_c, lb = np.inf, c, 0.0
    history = []
    it = 0
    for it in range(maxiter):
        r = fvals - V @ c
        ub = float(w @ np.abs(r))
        if ub < best_ub:
            best_ub, best_c = ub, c
        if best_ub <= 1e-15 * max(1.0, float(np.abs(fvals).max())):
            break
        if it % 5 == 0:
            lb = max(lb, l1_dual_bound(fvals, w, r, project))
            if best_ub - lb <= tol * max(1.0, best_ub):
                break
            history.append(best_ub)
            if len(history) > 6 and history[-7] - best_ub <= 1e-12 * max(1.0, best_ub):
                break
        eps = max(1e-3 * ub * 0.5 ** (it / 5), 1e-15 * max(ub, 1e-300))
        q = np.sqrt(w / np.sqrt(np.abs(r) ** 2 + eps ** 2))
        c = np.linalg.lstsq(V * q[:, None], fvals * q, rcond=None)[0]
    lb = max(lb, l1_dual_bound(fvals, w, fvals - V @ best_c, project))
    return best_c, best_ub, min(lb, best_ub), it


def l1_lp(fvals: np.ndarray, V: np.ndarray, w: np.ndarray, directions: int = DEFAULT_DIRECTIONS,
          tol: float = APPROX_TOL, backend: str = "auto", maxiter: int = 50,
          coef_bound: float | None = None):
    """Cutting-plane LP for the weighted L1 fit, warm-started from IRLS."""
    M, m = V.shape
    c0, ub0, _, _ = l1_irls(fvals, V, w, tol=1e-6)
    if m == 0 or ub0 == 0.0:
        return c0, ub0, ub0, 0
    B = coef_bound if coef_bound is not None else 2 * float(np.abs(fvals).max()) + 1
    lower = np.concatenate([np.full(2 * m, -B), np.zeros(M)])
    upper = np.concatenate([np.full(2 * m, B), np.full(M, np.inf)])
    cost = np.concatenate([np.zeros(2 * m), w])
    lp = make_lp(lower, upper, cost, backend)
    js = np.arange(M)
    r = fvals - V @ c0
    ph = np.angle(r)
    lo, hi = _direction_neighbours(ph, directions)
    lp.add_rows(*_cut_rows(V, fvals, np.tile(js, 3), np.concatenate([ph, lo, hi]),
                           2 * m + np.tile(js, 3)))
    best_ub, best_c, obj = ub0, c0, 0.0
    it = 0
    for it in range(1, maxiter + 1):
        x, obj = lp.solve()
        c = x[:m] + 1j * x[m:2 * m]
        slack = x[2 * m:]
        r = fvals - V @ c
        mod = np.abs(r)
        ub = float(w @ mod)
        if ub < best_ub:
            best_ub, best_c = ub, c
        if best_ub - obj <= tol * max(1.0, best_ub):
            break
        viol = np.flatnonzero(mod > slack + 1e-13)
        if viol.size == 0:
            break
        lp.add_rows(*_cut_rows(V, fvals, viol, np.angle(r[viol]), 2 * m + viol))
    return best_c, best_ub, min(obj, best_ub), it


def _coef_bound(scale: float, radius: float, top: int) -> float:
    # |p_k| <= max_j |p(z_j)| / r^k and max |p| <= 2 max |f| at the optimum
    return 2 * scale / radius ** max(top, 0) + 1


def best_approx(f, n: int, q, *, grid: int = DEFAULT_GRID, radius: float = 1.0,
                directions: int = DEFAULT_DIRECTIONS, tol: float = APPROX_TOL,
                method: str = "auto", backend: str = "auto",
                truncation: int = DEFAULT_TRUNCATION) -> ApproxResult:
    """E_n(f)_q: distance from f to polynomials of degree < n.

    Parameters
    ----------
    f : PowerSeries, ClosedForm, ExtremalFamily or BoundaryGrid
    n : int
        Number of free low-order coefficients.  n = 0 returns the norm.
    q : {1, 2, inf}
    grid, radius :
        Boundary grid used for q in {1, inf}.
    directions : int
        Size of the uniform direction set the minimax LP starts from.
    method : {"auto", "irls", "lp"}
        Solver for q = 1; q = inf always uses the LP.

    Returns
    -------
    ApproxResult
        ``value`` is attained by ``approximant`` on the grid; ``lower_bound``
        comes from the LP relaxation or a dual feasible point.
    """
    q = HardyExponent.parse(q)
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > 50:
        warnings.warn(f"n = {n} > 50: the monomial basis is ill-conditioned", ConditioningWarning,
                      stacklevel=2)

    if q is HardyExponent.TWO:
        if isinstance(f, BoundaryGrid):
            s = as_series(f)
            r = f.radius
        else:
            s = as_series(f, truncation)
            r = radius
        k = np.arange(s.coeffs.size)
        tail = np.abs(s.coeffs[n:]) * r ** k[n:]
        val = float(np.sqrt(np.sum(tail ** 2)))
        approx = PowerSeries(s.coeffs[:max(n, 1)] * (k[:max(n, 1)] < n), EXACT)
        tb = None if isinstance(f, BoundaryGrid) else s.tail_bound
        return ApproxResult(val, val, approx, q, n, 0, 0, radius, "closed-form", 0, None, tb)

    if grid <= 2 * n:
        raise ValueError(f"grid {grid} too small for n = {n}")
    fvals = _samples(f, radius, grid, truncation)
    M = fvals.size
    z = grid_points(radius, M)
    zero = PowerSeries(np.zeros(max(n, 1)), EXACT)
    w = np.full(M, 1.0 / M)

    if n == 0:
        val = hardy_norm(BoundaryGrid(radius, fvals), q)
        c, it, used = np.zeros(0, dtype=complex), 0, "norm"
        lb = val
    else:
        V = _poly_basis(z, n)
        bound = _coef_bound(float(np.abs(fvals).max()), radius, n - 1)
        if q is HardyExponent.INF:
            c, val, lb, it = chebyshev_lp(fvals, V, directions, tol, backend, coef_bound=bound)
            used = "lp-exchange"
        elif method in ("auto", "irls"):
            c, val, lb, it = l1_irls(fvals, V, w, tol)
            used = "irls"
        elif method == "lp":
            c, val, lb, it = l1_lp(fvals, V, w, directions, tol, backend, coef_bound=bound)
            used = "lp-cutting-plane"
        else:
            raise ValueError(f"unknown method {method!r}")

    approx = PowerSeries(np.concatenate([c, np.zeros(max(n, 1) - c.size)]), EXACT) if n else zero
    bias = None
    off = _samples(f, radius, grid, truncation, offset=True)
    if off is not None:
        zo = z * np.exp(1j * np.pi / M)
        ro = off - (_poly_basis(zo, n) @ c if n else 0)
        if q is HardyExponent.INF:
            bias = max(0.0, float(np.abs(ro).max()) - val)
        else:
            bias = abs(float(np.abs(ro).mean()) - val)
    return ApproxResult(float(val), float(lb), approx, q, n, M, directions, radius, used, it,
                        bias, _truncation_bias(f))


def mixed_approx_l1(f, N: int, *, neg_degree: int = DEFAULT_NEG_DEGREE, grid: int = DEFAULT_GRID,
                    radius: float = 1.0, tol: float = APPROX_TOL, method: str = "auto",
                    backend: str = "auto", truncation: int = DEFAULT_TRUNCATION,
                    convergence_check: bool = True) -> ApproxResult:
    """L1 distance from f to p + conj(h), deg p < N, h(0) = 0, deg h <= neg_degree.

    With ``convergence_check`` the problem is also solved at ``neg_degree // 2``;
    the difference of the two values estimates the truncation error in h.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    if neg_degree < 1:
        raise ValueError("neg_degree must be >= 1")
    if grid <= 2 * (N + neg_degree):
        raise ValueError(f"grid {grid} too small for N + neg_degree = {N + neg_degree}")
    fvals = _samples(f, radius, grid, truncation)
    M = fvals.size
    z = grid_points(radius, M)
    w = np.full(M, 1.0 / M)

    def solve(md):
        V = np.hstack([_poly_basis(z, N), np.conj(z)[:, None] ** np.arange(1, md + 1)[None, :]])
        if method in ("auto", "irls"):
            return l1_irls(fvals, V, w, tol) + ("irls",)
        if method == "lp":
            return l1_lp(fvals, V, w, DEFAULT_DIRECTIONS, tol, backend) + ("lp-cutting-plane",)
        raise ValueError(f"unknown method {method!r}")

    c, val, lb, it, used = solve(neg_degree)
    half = None
    if convergence_check and neg_degree >= 2:
        half = float(solve(neg_degree // 2)[1])
    p = PowerSeries(c[:N] if N else np.zeros(1), EXACT)
    h = PowerSeries(np.concatenate([[0.0], np.conj(c[N:])]), EXACT)
    return ApproxResult(float(val), float(lb), p, HardyExponent.ONE, N, M, 0, radius, used, it,
                        None, _truncation_bias(f), conjugate=h, neg_degree=neg_degree,
                        value_half=half)


def convolution_lower_bound(K: KernelSpec, f, q, *, grid: int = DEFAULT_GRID,
                            truncation: int = DEFAULT_TRUNCATION, tol: float = DEFAULT_TOL) -> float:
    """||K * f||_q, a lower bound for E_n(f)_q when K is certified."""
    cert = certify_bap(K, tol)
    if not cert.passed:
        raise ValueError(f"kernel {K.label} is not certified ({cert.verdict}): {cert.reasons}")
    s = as_series(f, max(truncation, K.n))
    return hardy_norm(apply_operator(K, s), q, 1.0, grid)
