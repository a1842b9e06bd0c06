# probarg/services/barrier_solver.py
"""Log-barrier Newton maximization of separable concave objectives.

Problem form::

    maximize  f(x) = sum_i phi(x_i)
    subject to  A x == b,  G x <= h,  lower <= x <= upper

The caller supplies a strictly feasible start (from the relative-interior
LP) with every implicit equality already moved into ``A`` or pinned.
"""
import logging
from typing import Callable, List, NamedTuple, Optional, Tuple

import numpy as np

from probarg.services.lp_solver import independent_rows

logger = logging.getLogger(__name__)

# Newton decrement threshold for one centering step
CENTERING_TOL = 1e-10
MAX_CENTERING_STEPS = 200
ARMIJO_ALPHA = 0.25
BACKTRACK_BETA = 0.5
POLISH_STEPS = 50


class SeparableObjective(NamedTuple):
    value: Callable[[np.ndarray], float]
    gradient: Callable[[np.ndarray], np.ndarray]
    # -phi''(x_i), positive on the open domain
    curvature: Callable[[np.ndarray], np.ndarray]
    domain_lower: float
    domain_upper: float


def _binary_entropy_value(x: np.ndarray) -> float:
    return float(-(x * np.log(x) + (1.0 - x) * np.log1p(-x)).sum())


BINARY_ENTROPY = SeparableObjective(
    value=_binary_entropy_value,
    gradient=lambda x: np.log1p(-x) - np.log(x),
    curvature=lambda x: 1.0 / (x * (1.0 - x)),
    domain_lower=0.0,
    domain_upper=1.0,
)

SHANNON_ENTROPY = SeparableObjective(
    value=lambda w: float(-(w * np.log(w)).sum()),
    gradient=lambda w: -np.log(w) - 1.0,
    curvature=lambda w: 1.0 / w,
    domain_lower=0.0,
    domain_upper=np.inf,
)


class BarrierProblem(NamedTuple):
    objective: SeparableObjective
    A_eq: np.ndarray
    b_eq: np.ndarray
    G: np.ndarray
    h: np.ndarray
    lower: np.ndarray
    upper: np.ndarray


class BarrierResult(NamedTuple):
    x: np.ndarray
    value: float
    kkt_residual: float
    iterations: int
    polished: bool
    converged: bool


def _in_domain(objective: SeparableObjective, x: np.ndarray) -> bool:
    return bool(np.all(x > objective.domain_lower) and np.all(x < objective.domain_upper))


class _Barrier:
    """phi_t(x) = -t f(x) - sum log(slacks), with box slacks kept diagonal"""

    def __init__(self, problem: BarrierProblem):
        self.problem = problem
        self.has_lower = np.isfinite(problem.lower)
        self.has_upper = np.isfinite(problem.upper)
        self.constraint_count = len(problem.h) + int(self.has_lower.sum()) + int(self.has_upper.sum())

    def slacks(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        p = self.problem
        return (
            p.h - p.G @ x,
            (x - p.lower)[self.has_lower],
            (p.upper - x)[self.has_upper],
        )

    def strictly_feasible(self, x: np.ndarray) -> bool:
        if not _in_domain(self.problem.objective, x):
            return False
        return all(np.all(s > 0.0) for s in self.slacks(x))

    def value(self, x: np.ndarray, t: float) -> float:
        if not self.strictly_feasible(x):
            return np.inf
        s, dl, du = self.slacks(x)
        return -t * self.problem.objective.value(x) - np.log(s).sum() - np.log(dl).sum() - np.log(du).sum()

    def derivatives(self, x: np.ndarray, t: float) -> Tuple[np.ndarray, np.ndarray]:
        p = self.problem
        s, dl, du = self.slacks(x)
        gradient = -t * p.objective.gradient(x) + p.G.T @ (1.0 / s)
        diagonal = t * p.objective.curvature(x)
        gradient[self.has_lower] -= 1.0 / dl
        diagonal[self.has_lower] += 1.0 / dl**2
        gradient[self.has_upper] += 1.0 / du
        diagonal[self.has_upper] += 1.0 / du**2
        hessian = np.diag(diagonal) + p.G.T @ (p.G / (s**2)[:, None])
        return gradient, hessian

    def multipliers(self, x: np.ndarray, t: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        s, dl, du = self.slacks(x)
        lam_lower = np.zeros_like(x)
        lam_upper = np.zeros_like(x)
        lam_lower[self.has_lower] = 1.0 / (t * dl)
        lam_upper[self.has_upper] = 1.0 / (t * du)
        return 1.0 / (t * s), lam_lower, lam_upper


def _solve_kkt(hessian: np.ndarray, A: np.ndarray, rhs_top: np.ndarray, rhs_bottom: np.ndarray) -> np.ndarray:
    n, p = hessian.shape[0], A.shape[0]
    matrix = np.block([[hessian, A.T], [A, np.zeros((p, p))]])
    rhs = np.concatenate([rhs_top, rhs_bottom])
    try:
        solution = np.linalg.solve(matrix, rhs)
    except np.linalg.LinAlgError:
        solution = np.linalg.lstsq(matrix, rhs, rcond=None)[0]
    return solution[:n]


def kkt_residual(
    problem: BarrierProblem,
    x: np.ndarray,
    lam: np.ndarray,
    lam_lower: np.ndarray,
    lam_upper: np.ndarray,
) -> float:
    """max(stationarity, complementarity, primal and dual infeasibility), infinity norms"""
    p = problem
    stationary = p.objective.gradient(x) - p.G.T @ lam + lam_lower - lam_upper
    if len(p.b_eq):
        nu = np.linalg.lstsq(p.A_eq.T, stationary, rcond=None)[0]
        stationary = stationary - p.A_eq.T @ nu
    s = p.h - p.G @ x
    has_lower, has_upper = np.isfinite(p.lower), np.isfinite(p.upper)
    dl = (x - p.lower)[has_lower]
    du = (p.upper - x)[has_upper]

    parts = [np.abs(stationary).max(initial=0.0)]
    parts.append(np.abs(lam * s).max(initial=0.0))
    parts.append(np.abs(lam_lower[has_lower] * dl).max(initial=0.0))
    parts.append(np.abs(lam_upper[has_upper] * du).max(initial=0.0))
    if len(p.b_eq):
        parts.append(np.abs(p.A_eq @ x - p.b_eq).max())
    parts.append(np.maximum(-s, 0.0).max(initial=0.0))
    parts.append(np.maximum(-dl, 0.0).max(initial=0.0))
    parts.append(np.maximum(-du, 0.0).max(initial=0.0))
    parts.append(np.maximum(-lam, 0.0).max(initial=0.0))
    return float(max(parts))


def _equality_newton(
    objective: SeparableObjective, A: np.ndarray, b: np.ndarray, x0: np.ndarray
) -> Optional[np.ndarray]:
    """Maximize f subject to A x == b only, infeasible-start Newton from x0"""
    x = x0.copy()
    for _ in range(POLISH_STEPS):
        step = _solve_kkt(np.diag(objective.curvature(x)), A, objective.gradient(x), b - A @ x)
        scale = 1.0
        while not _in_domain(objective, x + scale * step):
            scale *= BACKTRACK_BETA
            if scale < 1e-12:
                return None
        x = x + scale * step
        if scale == 1.0 and np.abs(step).max(initial=0.0) <= 1e-15:
            break
    return x


def _polish(
    problem: BarrierProblem, x: np.ndarray, tol: float, active_set_tol: float
) -> Optional[Tuple[np.ndarray, float]]:
    """Re-solve with near-active general rows as equalities.

    Rows whose recovered multiplier is negative are released one at a time.
    Box constraints never enter the active set: the entropy objectives have
    unbounded slope at their domain boundary.
    """
    p = problem
    active: List[int] = list(np.flatnonzero(p.h - p.G @ x <= active_set_tol))
    if not active:
        return None

    while active:
        rows = np.vstack([p.A_eq, p.G[active]])
        rhs = np.concatenate([p.b_eq, p.h[active]])
        reduced_rows, reduced_rhs = independent_rows(rows, rhs)
        candidate = _equality_newton(p.objective, reduced_rows, reduced_rhs, x)
        if candidate is None:
            return None

        coefficients = np.linalg.lstsq(rows.T, p.objective.gradient(candidate), rcond=None)[0]
        lam_active = coefficients[len(p.b_eq):]
        if lam_active.min() < -tol:
            released = active.pop(int(np.argmin(lam_active)))
            logger.debug(f"Polish released row {released} with multiplier {lam_active.min():.3e}")
            continue

        if np.any(p.h - p.G @ candidate < -tol):
            return None
        lam = np.zeros(len(p.h))
        lam[active] = np.maximum(lam_active, 0.0)
        zeros = np.zeros_like(candidate)
        return candidate, kkt_residual(p, candidate, lam, zeros, zeros)
    return None


def maximize(
    problem: BarrierProblem,
    x0: np.ndarray,
    tol: float = 1e-8,
    max_iterations: int = 100_000,
    mu: float = 10.0,
    active_set_tol: float = 1e-4,
) -> BarrierResult:
    barrier = _Barrier(problem)
    x = np.asarray(x0, dtype=float).copy()
    if not barrier.strictly_feasible(x):
        raise ValueError("barrier start is not strictly feasible")

    t = 1.0
    iterations = 0
    converged = False
    while True:
        for _ in range(MAX_CENTERING_STEPS):
            gradient, hessian = barrier.derivatives(x, t)
            step = _solve_kkt(hessian, problem.A_eq, -gradient, problem.b_eq - problem.A_eq @ x)
            decrement = float(step @ hessian @ step)
            if decrement / 2.0 <= CENTERING_TOL:
                break

            scale = 1.0
            current = barrier.value(x, t)
            slope = float(gradient @ step)
            while scale >= 1e-16 and barrier.value(x + scale * step, t) > current + ARMIJO_ALPHA * scale * slope:
                scale *= BACKTRACK_BETA
            if scale < 1e-16:
                # No representable decrease left at this t
                break
            x = x + scale * step
            iterations += 1
            if iterations >= max_iterations:
                break

        if iterations >= max_iterations:
            logger.warning(f"Barrier method stopped at the iteration cap ({max_iterations})")
            break
        if barrier.constraint_count / t <= tol:
            converged = True
            break
        t *= mu
        logger.debug(f"Barrier outer step: t={t:.1e}, newton steps so far {iterations}")

    lam, lam_lower, lam_upper = barrier.multipliers(x, t)
    residual = kkt_residual(problem, x, lam, lam_lower, lam_upper)
    polished = False

    polish = _polish(problem, x, tol, active_set_tol)
    if polish is not None:
        candidate, candidate_residual = polish
        if candidate_residual < residual:
            x, residual, polished = candidate, candidate_residual, True
        else:
            logger.warning(f"Active-set polish rejected (residual {candidate_residual:.3e} >= {residual:.3e})")

    return BarrierResult(
        x=x,
        value=problem.objective.value(x),
        kkt_residual=residual,
        iterations=iterations,
        polished=polished,
        converged=converged,
    )


__all__ = [
    "SeparableObjective",
    "BINARY_ENTROPY",
    "SHANNON_ENTROPY",
    "BarrierProblem",
    "BarrierResult",
    "kkt_residual",
    "maximize",
]
