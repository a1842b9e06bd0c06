# probarg/services/lp_solver.py
"""Dense two-phase tableau simplex.

Solves ``min c @ x  s.t.  A_ub @ x <= b_ub,  A_eq @ x == b_eq,  x >= 0`` and,
on top of it, finds a relative-interior point of a bounded polyhedron
together with the inequalities that hold with equality on all of it.
"""
import logging
from enum import Enum
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

logger = logging.getLogger(__name__)

PIVOT_TOL = 1e-10
FEASIBILITY_TOL = 1e-9
# Consecutive degenerate pivots tolerated before switching to Bland's rule
BLAND_AFTER = 50
DEFAULT_MAX_ITERATIONS = 100_000


class LPStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ITERATION_LIMIT = "iteration_limit"


class LPResult(NamedTuple):
    status: LPStatus
    x: Optional[np.ndarray]
    value: Optional[float]
    iterations: int
    infeasibility: float = 0.0


class InteriorPoint(NamedTuple):
    feasible: bool
    x: Optional[np.ndarray]
    implicit_rows: np.ndarray
    fixed_lower: np.ndarray
    fixed_upper: np.ndarray
    iterations: int


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, T[row])


def _entering(costs: np.ndarray, bland: bool) -> int:
    candidates = np.flatnonzero(costs < -PIVOT_TOL)
    if not candidates.size:
        return -1
    if bland:
        return int(candidates[0])
    return int(candidates[np.argmin(costs[candidates])])


def _leaving(T: np.ndarray, col: int, basis: List[int]) -> int:
    column = T[:-1, col]
    rows = np.flatnonzero(column > PIVOT_TOL)
    if not rows.size:
        return -1
    ratios = np.maximum(T[rows, -1], 0.0) / column[rows]
    best = ratios.min()
    ties = rows[ratios <= best + PIVOT_TOL]
    # Lowest basic index among ties keeps Bland's rule cycle-free
    return int(min(ties, key=lambda r: basis[r]))


def _run_simplex(T: np.ndarray, basis: List[int], max_iterations: int) -> Tuple[LPStatus, int]:
    iterations = 0
    degenerate = 0
    while iterations < max_iterations:
        col = _entering(T[-1, :-1], bland=degenerate >= BLAND_AFTER)
        if col < 0:
            return LPStatus.OPTIMAL, iterations
        row = _leaving(T, col, basis)
        if row < 0:
            return LPStatus.UNBOUNDED, iterations
        degenerate = degenerate + 1 if T[row, -1] <= PIVOT_TOL else 0
        _pivot(T, row, col)
        basis[row] = col
        iterations += 1
    return LPStatus.ITERATION_LIMIT, iterations


def _as_rows(A: Optional[np.ndarray], b: Optional[np.ndarray], n: int) -> Tuple[np.ndarray, np.ndarray]:
    if A is None or len(A) == 0:
        return np.zeros((0, n)), np.zeros(0)
    return np.asarray(A, dtype=float).reshape(-1, n), np.asarray(b, dtype=float).reshape(-1)


def solve_lp(
    c: np.ndarray,
    A_ub: Optional[np.ndarray] = None,
    b_ub: Optional[np.ndarray] = None,
    A_eq: Optional[np.ndarray] = None,
    b_eq: Optional[np.ndarray] = None,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    feasibility_tol: float = FEASIBILITY_TOL,
) -> LPResult:
    c = np.asarray(c, dtype=float)
    n = c.size
    A_ub, b_ub = _as_rows(A_ub, b_ub, n)
    A_eq, b_eq = _as_rows(A_eq, b_eq, n)
    m_ub, m_eq = len(b_ub), len(b_eq)
    m = m_ub + m_eq

    A = np.vstack([A_ub, A_eq])
    b = np.concatenate([b_ub, b_eq])
    flip = b < 0.0
    A[flip] *= -1.0
    b = np.abs(b)

    # Columns: x | one slack per inequality | one artificial per row that needs it
    needs_artificial = [i for i in range(m) if i >= m_ub or flip[i]]
    art_start = n + m_ub
    width = art_start + len(needs_artificial)

    T = np.zeros((m + 1, width + 1))
    T[:m, :n] = A
    T[:m, -1] = b
    basis = [0] * m
    for i in range(m_ub):
        T[i, n + i] = -1.0 if flip[i] else 1.0
        basis[i] = n + i
    for k, i in enumerate(needs_artificial):
        T[i, art_start + k] = 1.0
        basis[i] = art_start + k

    # Phase 1: minimize the sum of artificials
    T[-1, art_start:width] = 1.0
    for i in needs_artificial:
        T[-1] -= T[i]
    status, phase1_iterations = _run_simplex(T, basis, max_iterations)
    if status != LPStatus.OPTIMAL:
        return LPResult(status, None, None, phase1_iterations)

    infeasibility = -T[-1, -1]
    scale = max(1.0, float(np.abs(b).max(initial=0.0)))
    if infeasibility > feasibility_tol * scale:
        logger.debug(f"Phase 1 ended with infeasibility {infeasibility:.3e}")
        return LPResult(LPStatus.INFEASIBLE, None, None, phase1_iterations, infeasibility)

    # Drive artificials out of the basis; rows where that fails are redundant
    keep_rows = []
    for r in range(m):
        if basis[r] >= art_start:
            candidates = np.flatnonzero(np.abs(T[r, :art_start]) > PIVOT_TOL)
            if not candidates.size:
                continue
            _pivot(T, r, int(candidates[0]))
            basis[r] = int(candidates[0])
        keep_rows.append(r)
    columns = list(range(art_start)) + [width]
    T = T[np.ix_(keep_rows + [m], columns)]
    basis = [basis[r] for r in keep_rows]

    # Phase 2: original objective over x and slacks
    costs = np.concatenate([c, np.zeros(m_ub)])
    T[-1] = 0.0
    T[-1, :-1] = costs
    for r, column in enumerate(basis):
        if costs[column] != 0.0:
            T[-1] -= costs[column] * T[r]
    status, phase2_iterations = _run_simplex(T, basis, max_iterations - phase1_iterations)
    iterations = phase1_iterations + phase2_iterations
    logger.debug(f"Simplex {status.value} after {phase1_iterations} + {phase2_iterations} pivots")
    if status != LPStatus.OPTIMAL:
        return LPResult(status, None, None, iterations, infeasibility)

    x = np.zeros(art_start)
    x[basis] = np.maximum(T[:-1, -1], 0.0)
    return LPResult(LPStatus.OPTIMAL, x[:n], float(-T[-1, -1]), iterations, infeasibility)


def is_feasible_polyhedron(
    n: int,
    A_ub: np.ndarray,
    b_ub: np.ndarray,
    A_eq: np.ndarray,
    b_eq: np.ndarray,
    tol: float = FEASIBILITY_TOL,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> bool:
    """Phase 1 only: is ``{x >= 0 : A_ub x <= b_ub, A_eq x == b_eq}`` non-empty"""
    result = solve_lp(np.zeros(n), A_ub, b_ub, A_eq, b_eq, max_iterations=max_iterations, feasibility_tol=tol)
    return result.status == LPStatus.OPTIMAL


def relative_interior(
    A_ub: np.ndarray,
    b_ub: np.ndarray,
    A_eq: np.ndarray,
    b_eq: np.ndarray,
    upper: np.ndarray,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    feasibility_tol: float = FEASIBILITY_TOL,
) -> InteriorPoint:
    """Relative-interior point of ``{0 <= x <= upper, A_ub x <= b_ub, A_eq x == b_eq}``.

    Every inequality (general rows and both box sides) gets a slack variable
    y_k in [0, 1] and the system is homogenized with t = 1 + tau:

        maximize sum(y)  s.t.  G z + y - h tau <= h,  y <= 1,  C z - d tau == d

    A constraint that can hold strictly somewhere reaches y_k = 1 once t is
    large enough, so at the optimum y_k < 0.5 marks exactly the implicit
    equalities and ``z / t`` is strictly feasible for all the others.
    """
    upper = np.asarray(upper, dtype=float)
    n = upper.size
    A_ub, b_ub = _as_rows(A_ub, b_ub, n)
    A_eq, b_eq = _as_rows(A_eq, b_eq, n)
    m_general = len(b_ub)

    G = np.vstack([A_ub, np.eye(n), -np.eye(n)])
    h = np.concatenate([b_ub, upper, np.zeros(n)])
    k = len(h)

    # Variables: z (n) | y (k) | tau (1)
    width = n + k + 1
    rows_ub = np.zeros((2 * k, width))
    rows_ub[:k, :n] = G
    rows_ub[:k, n : n + k] = np.eye(k)
    rows_ub[:k, -1] = -h
    rows_ub[k:, n : n + k] = np.eye(k)
    rhs_ub = np.concatenate([h, np.ones(k)])

    rows_eq = np.zeros((len(b_eq), width))
    rows_eq[:, :n] = A_eq
    rows_eq[:, -1] = -b_eq

    objective = np.zeros(width)
    objective[n : n + k] = -1.0

    result = solve_lp(objective, rows_ub, rhs_ub, rows_eq, b_eq, max_iterations, feasibility_tol)
    empty = np.zeros(0, dtype=bool)
    if result.status != LPStatus.OPTIMAL:
        logger.debug(f"Relative-interior LP ended {result.status.value}")
        return InteriorPoint(False, None, empty, empty, empty, result.iterations)

    z, y, tau = result.x[:n], result.x[n : n + k], result.x[-1]
    x = z / (1.0 + tau)
    implicit = y < 0.5
    logger.debug(f"Relative interior found with {int(implicit.sum())} implicit equalities")
    return InteriorPoint(
        feasible=True,
        x=x,
        implicit_rows=implicit[:m_general],
        fixed_upper=implicit[m_general : m_general + n],
        fixed_lower=implicit[m_general + n :],
        iterations=result.iterations,
    )


def independent_rows(A: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> Tuple[np.ndarray, np.ndarray]:
    """Drop linearly dependent rows of ``A x == b`` (modified Gram-Schmidt, two passes)"""
    A = np.asarray(A, dtype=float)
    if A.size == 0:
        return A.reshape(0, A.shape[1] if A.ndim == 2 else 0), np.zeros(0)
    directions: List[np.ndarray] = []
    keep = []
    for i, row in enumerate(A):
        v = row.copy()
        for _ in range(2):
            for q in directions:
                v -= (q @ v) * q
        norm = np.linalg.norm(v)
        if norm > tol * max(1.0, np.linalg.norm(row)):
            directions.append(v / norm)
            keep.append(i)
    return A[keep], np.asarray(b, dtype=float)[keep]


__all__ = [
    "LPStatus",
    "LPResult",
    "InteriorPoint",
    "solve_lp",
    "is_feasible_polyhedron",
    "relative_interior",
    "independent_rows",
]
