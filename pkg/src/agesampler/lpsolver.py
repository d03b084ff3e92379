"""Dense two-phase simplex for small linear programs.

Problems here are tiny (a few hundred variables at most), so a self-contained
tableau simplex beats pulling in an external solver. Degenerate ties are
broken by Bland's rule (lowest index), which guarantees termination at the
price of a few extra pivots. Redundant equality rows (the occupation-measure
balance system always contains one) are detected in phase 1 and dropped.

Variables are implicitly nonnegative. Maximization is handled by negating
the objective internally; `LpSolution.dual` always certifies the internal
minimize form over `standard_form(lp)`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import MalformedProgram

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-8

Relation = str  # "<=" or ">="


def _as_vector(v, n: int | None, what: str) -> np.ndarray:
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1:
        raise MalformedProgram(f"{what} must be a 1-d vector")
    if n is not None and arr.shape[0] != n:
        raise MalformedProgram(f"{what} has length {arr.shape[0]}, expected {n}")
    if not np.all(np.isfinite(arr)):
        raise MalformedProgram(f"{what} contains non-finite coefficients")
    return arr


@dataclass(frozen=True)
class LinearProgram:
    """min/max objective . x subject to equality and inequality rows, x >= 0."""

    sense: str
    objective: np.ndarray
    eq_constraints: tuple = ()
    ineq_constraints: tuple = ()

    def __post_init__(self):
        if self.sense not in ("minimize", "maximize"):
            raise MalformedProgram(f'sense must be "minimize" or "maximize", got {self.sense!r}')
        obj = _as_vector(self.objective, None, "objective")
        n = obj.shape[0]
        if n == 0:
            raise MalformedProgram("objective must have at least one variable")
        eqs = []
        for idx, item in enumerate(self.eq_constraints):
            vec, rhs = item
            vec = _as_vector(vec, n, f"eq_constraints[{idx}]")
            rhs = float(rhs)
            if not np.isfinite(rhs):
                raise MalformedProgram(f"eq_constraints[{idx}] has non-finite rhs")
            eqs.append((vec, rhs))
        ineqs = []
        for idx, item in enumerate(self.ineq_constraints):
            vec, rel, rhs = item
            if rel not in ("<=", ">="):
                raise MalformedProgram(f'ineq_constraints[{idx}] relation must be "<=" or ">="')
            vec = _as_vector(vec, n, f"ineq_constraints[{idx}]")
            rhs = float(rhs)
            if not np.isfinite(rhs):
                raise MalformedProgram(f"ineq_constraints[{idx}] has non-finite rhs")
            ineqs.append((vec, rel, rhs))
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "eq_constraints", tuple(eqs))
        object.__setattr__(self, "ineq_constraints", tuple(ineqs))

    @property
    def n_vars(self) -> int:
        return self.objective.shape[0]


@dataclass(frozen=True)
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None = None
    objective_value: float | None = None
    # Multipliers for the rows of standard_form(lp), zero on dropped
    # redundant rows; certifies the internal minimize problem.
    dual: np.ndarray | None = None
    n_pivots: int = 0


@dataclass(frozen=True)
class StandardForm:
    """Equality form min c . y, A y = b, y >= 0, b >= 0.

    Columns: original variables first, then one slack (for <=) or surplus
    (for >=) per inequality in input order. Rows: equalities first, then
    inequalities, in input order.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    n_original: int


def standard_form(lp: LinearProgram) -> StandardForm:
    n = lp.n_vars
    n_slack = len(lp.ineq_constraints)
    m = len(lp.eq_constraints) + n_slack
    a = np.zeros((m, n + n_slack))
    b = np.zeros(m)
    for i, (vec, rhs) in enumerate(lp.eq_constraints):
        a[i, :n] = vec
        b[i] = rhs
    base = len(lp.eq_constraints)
    for k, (vec, rel, rhs) in enumerate(lp.ineq_constraints):
        i = base + k
        a[i, :n] = vec
        a[i, n + k] = 1.0 if rel == "<=" else -1.0
        b[i] = rhs
    neg = b < 0
    a[neg] *= -1.0
    b[neg] *= -1.0
    c = np.zeros(n + n_slack)
    c[:n] = lp.objective if lp.sense == "minimize" else -lp.objective
    return StandardForm(a=a, b=b, c=c, n_original=n)


def _bland_entering(reduced: np.ndarray, n_real: int, tol: float) -> int:
    for j in range(n_real):
        if reduced[j] < -tol:
            return j
    return -1


def _bland_leaving(tableau: np.ndarray, basis: list, col: int, tol: float) -> int:
    m = tableau.shape[0]
    best_ratio = None
    best_row = -1
    for i in range(m):
        a = tableau[i, col]
        if a > tol:
            ratio = tableau[i, -1] / a
            if (best_ratio is None or ratio < best_ratio - 1e-12
                    or (abs(ratio - best_ratio) <= 1e-12 and basis[i] < basis[best_row])):
                best_ratio = ratio
                best_row = i
    return best_row


def _pivot(tableau: np.ndarray, reduced: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    for i in range(tableau.shape[0]):
        if i != row and tableau[i, col] != 0.0:
            tableau[i] -= tableau[i, col] * tableau[row]
    if reduced[col] != 0.0:
        reduced -= reduced[col] * tableau[row, :-1]


def _iterate(tableau, reduced, basis, n_real, pivot_tol, max_iter):
    """Run simplex pivots until optimal or unbounded; returns pivot count."""
    pivots = 0
    while True:
        col = _bland_entering(reduced, n_real, pivot_tol)
        if col < 0:
            return "optimal", pivots
        row = _bland_leaving(tableau, basis, col, pivot_tol)
        if row < 0:
            return "unbounded", pivots
        _pivot(tableau, reduced, row, col)
        basis[row] = col
        pivots += 1
        if pivots > max_iter:
            raise RuntimeError("simplex iteration cap exceeded despite Bland's rule")


def solve(lp: LinearProgram, pivot_tol: float = PIVOT_TOL, feas_tol: float = FEAS_TOL) -> LpSolution:
    """Two-phase simplex with Bland's anti-cycling rule.

    Deterministic: identical inputs produce identical solutions. Among
    multiple optima, returns whichever basic feasible solution the pivoting
    reaches; callers must not assume uniqueness.
    """
    sf = standard_form(lp)
    m, n_total = sf.a.shape
    max_iter = 200 * (m + n_total + 10)

    # Phase 1: artificial basis, minimize the sum of artificials.
    tableau = np.hstack([sf.a, np.eye(m), sf.b[:, None]])
    basis = list(range(n_total, n_total + m))
    reduced = np.zeros(n_total + m)
    reduced[:n_total] = -sf.a.sum(axis=0)
    status, pivots = _iterate(tableau, reduced, basis, n_total, pivot_tol, max_iter)
    if status != "optimal":
        raise RuntimeError("phase-1 problem cannot be unbounded")
    phase1_value = sum(tableau[i, -1] for i in range(m) if basis[i] >= n_total)
    if phase1_value > feas_tol:
        return LpSolution(status="infeasible", n_pivots=pivots)

    # Drive artificials out of the basis; an all-zero row is redundant.
    keep_rows = []
    for i in range(m):
        if basis[i] < n_total:
            keep_rows.append(i)
            continue
        pivot_col = -1
        for j in range(n_total):
            if abs(tableau[i, j]) > pivot_tol:
                pivot_col = j
                break
        if pivot_col >= 0:
            _pivot(tableau, reduced, i, pivot_col)
            basis[i] = pivot_col
            pivots += 1
            keep_rows.append(i)
    row_kept = np.zeros(m, dtype=bool)
    row_kept[keep_rows] = True
    tableau = tableau[keep_rows][:, list(range(n_total)) + [n_total + m]]
    basis = [basis[i] for i in keep_rows]

    # Phase 2 on the reduced system with the real costs.
    cb = sf.c[basis]
    reduced = sf.c - cb @ tableau[:, :-1]
    status, more = _iterate(tableau, reduced, basis, n_total, pivot_tol, max_iter)
    pivots += more
    if status == "unbounded":
        return LpSolution(status="unbounded", n_pivots=pivots)

    x_full = np.zeros(n_total)
    for i, var in enumerate(basis):
        x_full[var] = tableau[i, -1]
    x = x_full[: sf.n_original]

    # Dual multipliers from the final basis: solve B' y = c_B, pad dropped rows.
    a_kept = sf.a[row_kept]
    y_kept = np.linalg.solve(a_kept[:, basis].T, sf.c[basis])
    dual = np.zeros(m)
    dual[row_kept] = y_kept

    return LpSolution(
        status="optimal",
        x=x,
        objective_value=float(lp.objective @ x),
        dual=dual,
        n_pivots=pivots,
    )


def check_feasible(lp: LinearProgram, x, tol: float) -> bool:
    """Independent constraint verifier: every row and nonnegativity within tol."""
    x = _as_vector(x, lp.n_vars, "x")
    if np.any(x < -tol):
        return False
    for vec, rhs in lp.eq_constraints:
        if abs(float(vec @ x) - rhs) > tol:
            return False
    for vec, rel, rhs in lp.ineq_constraints:
        val = float(vec @ x)
        if rel == "<=" and val > rhs + tol:
            return False
        if rel == ">=" and val < rhs - tol:
            return False
    return True
