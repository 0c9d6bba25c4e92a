"""Damped least-squares minimization with a numeric Jacobian.

Small, dependency-free Levenberg-style solver shared by the witness search
and the zero-pattern solution search.  The residual function maps a real
parameter vector to a real residual vector; the objective is the sum of
squared residual entries.  Steps are accepted only when they reduce the
objective, so the recorded trace is non-increasing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

FD_STEP = 1e-7
INITIAL_DAMPING = 1e-3
DAMPING_GROW = 10.0
DAMPING_SHRINK = 3.0
STEP_TOL = 1e-15
MAX_INNER_RETRIES = 25


@dataclass(frozen=True)
class LeastSquaresResult:
    x: np.ndarray
    objective: float
    trace: tuple[float, ...]
    iterations: int
    converged: bool


def _objective(residual: np.ndarray) -> float:
    return float(np.dot(residual, residual))


def _jacobian(fn: Callable[[np.ndarray], np.ndarray], x: np.ndarray, m: int) -> np.ndarray:
    jac = np.empty((m, x.size))
    for j in range(x.size):
        bumped = x.copy()
        bumped[j] = x[j] + FD_STEP
        upper = fn(bumped)
        bumped[j] = x[j] - FD_STEP
        lower = fn(bumped)
        jac[:, j] = (upper - lower) / (2.0 * FD_STEP)
    return jac


def damped_least_squares(
    residual_fn: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    *,
    objective_tol: float = 0.0,
    max_iterations: int = 200,
    step_tol: float = STEP_TOL,
) -> LeastSquaresResult:
    """Minimize ``sum(residual_fn(x)**2)`` from ``x0``.

    Stops when the objective reaches ``objective_tol``, the accepted step
    norm falls below ``step_tol``, damping growth stalls, or the iteration
    budget is exhausted.
    """
    x = np.asarray(x0, dtype=float).copy()
    residual = np.asarray(residual_fn(x), dtype=float)
    objective = _objective(residual)
    trace = [objective]
    damping = INITIAL_DAMPING
    iterations = 0

    while objective > objective_tol and iterations < max_iterations:
        iterations += 1
        jac = _jacobian(residual_fn, x, residual.size)
        jtj = jac.T @ jac
        jtr = jac.T @ residual
        eye = np.eye(x.size)

        accepted = False
        step_norm = 0.0
        for _ in range(MAX_INNER_RETRIES):
            try:
                step = np.linalg.solve(jtj + damping * eye, -jtr)
            except np.linalg.LinAlgError:
                damping *= DAMPING_GROW
                continue
            candidate = x + step
            cand_residual = np.asarray(residual_fn(candidate), dtype=float)
            cand_objective = _objective(cand_residual)
            if cand_objective < objective:
                step_norm = float(np.linalg.norm(step))
                x, residual, objective = candidate, cand_residual, cand_objective
                trace.append(objective)
                damping /= DAMPING_SHRINK
                accepted = True
                break
            damping *= DAMPING_GROW
        if not accepted or step_norm <= step_tol:
            break

    return LeastSquaresResult(
        x=x,
        objective=objective,
        trace=tuple(trace),
        iterations=iterations,
        converged=objective <= objective_tol,
    )
