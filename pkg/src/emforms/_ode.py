"""Fixed-step RK4 and an adaptive wrapper shared by particle and ray tracing."""

from __future__ import annotations

from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .errors import StepFailureError

Rhs = Callable[[float, np.ndarray], np.ndarray]


def rk4(rhs: Rhs, y0: np.ndarray, t0: float, dt: float, steps: int):
    """Classical RK4; returns (samples, rhs at samples), both (steps+1, n)."""
    ys = np.empty((steps + 1, y0.size))
    ks = np.empty_like(ys)
    ys[0] = y0
    y = y0
    t = t0
    for i in range(steps):
        k1 = rhs(t, y)
        k2 = rhs(t + dt / 2, y + dt / 2 * k1)
        k3 = rhs(t + dt / 2, y + dt / 2 * k2)
        k4 = rhs(t + dt, y + dt * k3)
        ks[i] = k1
        y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t = t0 + (i + 1) * dt
        ys[i + 1] = y
    ks[steps] = rhs(t, y)
    return ys, ks


def rk45(rhs: Rhs, y0: np.ndarray, t_eval: np.ndarray, tol: float):
    """Adaptive Dormand-Prince, resampled on ``t_eval``."""
    sol = solve_ivp(rhs, (t_eval[0], t_eval[-1]), y0, method="RK45", t_eval=t_eval, rtol=tol, atol=tol)
    if sol.status != 0:
        raise StepFailureError(sol.message)
    ys = sol.y.T
    ks = np.array([rhs(t, y) for t, y in zip(t_eval, ys)])
    return ys, ks
