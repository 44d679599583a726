"""Minimal incremental LP interface: minimize c.x subject to rows a.x <= b and box bounds.

Cutting-plane solvers only ever append rows, so the HiGHS backend keeps the
model alive and warm-starts from the previous basis.  The scipy backend
re-solves from scratch and exists as an independent cross-check.
"""

from __future__ import annotations

import numpy as np

try:
    import highspy
except ImportError:  # pragma: no cover - exercised only without highspy
    highspy = None

SOLVER_TOL = 1e-10


class LPError(RuntimeError):
    pass


class HighsLP:
    def __init__(self, lower, upper, cost, tol: float = SOLVER_TOL):
        if highspy is None:
            raise LPError("highspy is not installed")
        h = highspy.Highs()
        h.setOptionValue("output_flag", False)
        h.setOptionValue("primal_feasibility_tolerance", tol)
        h.setOptionValue("dual_feasibility_tolerance", tol)
        h.setOptionValue("threads", 1)
        lower, upper, cost = (np.asarray(a, dtype=float) for a in (lower, upper, cost))
        inf = highspy.kHighsInf
        h.addVars(lower.size, np.where(np.isinf(lower), -inf, lower), np.where(np.isinf(upper), inf, upper))
        nz = np.flatnonzero(cost).astype(np.int32)
        h.changeColsCost(nz.size, nz, cost[nz])
        self._h = h
        self.num_rows = 0

    def add_rows(self, starts, index, values, rhs) -> None:
        rhs = np.asarray(rhs, dtype=float)
        nr = rhs.size
        self._h.addRows(nr, np.full(nr, -highspy.kHighsInf), rhs, len(values),
                        np.asarray(starts, dtype=np.int32), np.asarray(index, dtype=np.int32),
                        np.asarray(values, dtype=float))
        self.num_rows += nr

    def solve(self):
        h = self._h
        h.run()
        status = h.getModelStatus()
        if status != highspy.HighsModelStatus.kOptimal:
            raise LPError(f"LP not solved to optimality: {h.modelStatusToString(status)}")
        return np.array(h.getSolution().col_value), float(h.getInfo().objective_function_value)


class ScipyLP:
    def __init__(self, lower, upper, cost, tol: float = SOLVER_TOL):
        self.bounds = list(zip(np.asarray(lower, dtype=float), np.asarray(upper, dtype=float)))
        self.bounds = [(None if np.isinf(a) else a, None if np.isinf(b) else b) for a, b in self.bounds]
        self.cost = np.asarray(cost, dtype=float)
        self.tol = tol
        self._rows: list = []
        self._rhs: list = []
        self.num_rows = 0

    def add_rows(self, starts, index, values, rhs) -> None:
        from scipy.sparse import csr_matrix
        starts = np.append(np.asarray(starts), len(values))
        self._rows.append(csr_matrix((values, index, starts), shape=(len(rhs), self.cost.size)))
        self._rhs.append(np.asarray(rhs, dtype=float))
        self.num_rows += len(rhs)

    def solve(self):
        from scipy.optimize import linprog
        from scipy.sparse import vstack
        res = linprog(self.cost, A_ub=vstack(self._rows), b_ub=np.concatenate(self._rhs),
                      bounds=self.bounds, method="highs",
                      options={"primal_feasibility_tolerance": self.tol,
                               "dual_feasibility_tolerance": self.tol})
        if not res.success:
            raise LPError(f"LP not solved: {res.message}")
        return res.x, float(res.fun)


def make_lp(lower, upper, cost, backend: str = "auto", tol: float = SOLVER_TOL):
    if backend == "auto":
        backend = "highs" if highspy is not None else "scipy"
    if backend == "highs":
        return HighsLP(lower, upper, cost, tol)
    if backend == "scipy":
        return ScipyLP(lower, upper, cost, tol)
    raise ValueError(f"unknown LP backend {backend!r}")
