from typing import Callable, Optional, Sequence

import numpy as np

from dslab.core.exceptions import OptimizerError
from dslab.schemas.params import SimplexConfig


class SimplexResult:
    def __init__(self, x: np.ndarray, fun: float, iterations: int, evaluations: int, converged: bool):
        self.x = x
        self.fun = fun
        self.iterations = iterations
        self.evaluations = evaluations
        self.converged = converged

    def __repr__(self):
        return (
            f"SimplexResult(x={self.x.tolist()}, fun={self.fun:.3e}, "
            f"iterations={self.iterations}, converged={self.converged})"
        )


def _initial_steps(x0: np.ndarray, config: SimplexConfig) -> np.ndarray:
    if config.initial_step is not None:
        steps = np.asarray(config.initial_step, dtype=float)
        if steps.shape != x0.shape or np.any(steps == 0):
            raise OptimizerError("initial_step must match the guess and be nonzero")
        return steps
    # fminsearch 惯例: 非零坐标扰动 5%，零坐标用 0.00025
    return np.where(x0 != 0, 0.05 * x0, 0.00025)


def nelder_mead(
    objective: Callable[[np.ndarray], float],
    config: Optional[SimplexConfig] = None,
    x0: Optional[Sequence[float]] = None,
) -> SimplexResult:
    """
    Nelder–Mead 单纯形法 (无导数最小化)

    Converged when both the simplex diameter (max-norm around the best vertex)
    and the objective spread fall below their tolerances, or when the spread is
    exactly zero. Non-finite objective values are treated as +inf.
    """
    config = config or SimplexConfig()
    guess = x0 if x0 is not None else config.initial_guess
    if guess is None:
        raise OptimizerError("nelder_mead needs an initial guess")
    start = np.atleast_1d(np.asarray(guess, dtype=float))
    n = start.size
    if n < 1:
        raise OptimizerError("objective dimension must be >= 1")

    evaluations = 0

    def f(v: np.ndarray) -> float:
        nonlocal evaluations
        evaluations += 1
        value = float(objective(v))
        return value if np.isfinite(value) else np.inf

    steps = _initial_steps(start, config)
    simplex = np.tile(start, (n + 1, 1))
    for i in range(n):
        simplex[i + 1, i] += steps[i]
    fvals = np.array([f(v) for v in simplex])
    if not np.isfinite(fvals).any():
        raise OptimizerError(
            "objective is non-finite at every vertex of the initial simplex",
            details={"x0": start.tolist()},
        )

    rho = config.reflection
    chi = config.expansion
    gamma = config.contraction
    sigma = config.shrink

    iterations = 0
    converged = False
    while True:
        order = np.argsort(fvals, kind="stable")
        simplex = simplex[order]
        fvals = fvals[order]

        spread = fvals[-1] - fvals[0] if np.isfinite(fvals[-1]) else np.inf
        diameter = np.max(np.abs(simplex[1:] - simplex[0]))
        if spread == 0 or (spread <= config.ftol and diameter <= config.xtol):
            converged = True
            break
        if iterations >= config.max_iter:
            break
        iterations += 1

        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]

        xr = centroid + rho * (centroid - worst)
        fr = f(xr)
        if fr < fvals[0]:
            xe = centroid + chi * (xr - centroid)
            fe = f(xe)
            if fe < fr:
                simplex[-1], fvals[-1] = xe, fe
            else:
                simplex[-1], fvals[-1] = xr, fr
            continue
        if fr < fvals[-2]:
            simplex[-1], fvals[-1] = xr, fr
            continue

        if fr < fvals[-1]:
            # outside contraction
            xc = centroid + gamma * (xr - centroid)
            fc = f(xc)
            if fc <= fr:
                simplex[-1], fvals[-1] = xc, fc
                continue
        else:
            # inside contraction
            xcc = centroid + gamma * (worst - centroid)
            fcc = f(xcc)
            if fcc < fvals[-1]:
                simplex[-1], fvals[-1] = xcc, fcc
                continue

        # shrink towards the best vertex
        best = simplex[0].copy()
        for i in range(1, n + 1):
            simplex[i] = best + sigma * (simplex[i] - best)
            fvals[i] = f(simplex[i])

    return SimplexResult(simplex[0].copy(), float(fvals[0]), iterations, evaluations, converged)
