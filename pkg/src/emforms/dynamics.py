"""Extended phase-space dynamics in the universal-time parameter u.

A state is the 8-vector ``(q0, q1, q2, q3, p0, p1, p2, p3)`` with
``q0 = c t`` and ``p0 = -energy/c``; ``p`` is the mechanical momentum, so the
field coupling sits entirely in the right-hand side.
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional

import numpy as np

from ._ode import rk4, rk45
from .errors import NonMonotonicTimeError, SpacelikeMomentumError
from .fields import EMField, EMFieldSample

__all__ = [
    "ExtendedState",
    "ParticleCharges",
    "IntegratorConfig",
    "Method",
    "Trajectory",
    "LabFrame",
    "hamiltonian_free",
    "photon_extended_hamiltonian",
    "dyon_rhs",
    "charged_rhs",
    "photon_rhs",
    "integrate",
    "integrate_batch",
    "lab_frame",
    "energy_theorem_residual",
    "gyro_center",
    "write_trajectory_csv",
    "TRAJECTORY_COLUMNS",
]


@dataclass(frozen=True)
class ExtendedState:
    q: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        p = np.asarray(self.p, dtype=float)
        if q.shape != (4,) or p.shape != (4,):
            raise ValueError("q and p must both have 4 components")
        if not (np.all(np.isfinite(q)) and np.all(np.isfinite(p))):
            raise ValueError("state components must be finite")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)

    @classmethod
    def massive(cls, q, p3, mass: float, c: float = 1.0) -> "ExtendedState":
        """State on the mass shell ``p0 = -sqrt(m^2 c^2 + |p|^2)``."""
        p3 = np.asarray(p3, dtype=float)
        if mass <= 0:
            raise ValueError("massive state needs mass > 0")
        p0 = -np.sqrt((mass * c) ** 2 + p3 @ p3)
        return cls(q, np.concatenate(([p0], p3)))

    def as_array(self) -> np.ndarray:
        return np.concatenate((self.q, self.p))

    @classmethod
    def from_array(cls, y) -> "ExtendedState":
        y = np.asarray(y, dtype=float)
        return cls(y[:4], y[4:])

    def check_timelike(self) -> None:
        if self.p[0] ** 2 - self.p[1:] @ self.p[1:] <= 0:
            raise SpacelikeMomentumError(f"momentum {self.p} is not timelike")


@dataclass(frozen=True)
class ParticleCharges:
    q_e: float = 0.0
    q_m: float = 0.0

    def dual(self) -> "ParticleCharges":
        """Charges paired with the dual field (E, B) -> (B, -E)."""
        return ParticleCharges(self.q_m, -self.q_e)


class Method(str, enum.Enum):
    RK4 = "RK4"
    RK45 = "RK45-adaptive"


@dataclass(frozen=True)
class IntegratorConfig:
    du: float = 1e-3
    steps: int = 1000
    method: Method = Method.RK4
    tolerance: float = 1e-12

    def __post_init__(self):
        if not self.du > 0:
            raise ValueError("du must be positive")
        if int(self.steps) != self.steps or self.steps <= 0:
            raise ValueError("steps must be a positive integer")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        object.__setattr__(self, "method", Method(self.method))


def _mass_shell(p: np.ndarray) -> float:
    m2 = p[0] ** 2 - p[1:] @ p[1:]
    if m2 < 0:
        raise SpacelikeMomentumError(f"p0^2 - p^2 = {m2} < 0")
    return float(np.sqrt(m2))


def hamiltonian_free(s: ExtendedState, c: float = 1.0) -> float:
    """``-c sqrt(p0^2 - p^2)``; its value along a trajectory is -m0 c^2."""
    return -c * _mass_shell(s.p)


def photon_extended_hamiltonian(s: ExtendedState, eta: float = 1.0, c: float = 1.0) -> float:
    """``-c sqrt(p0^2 - p^2/eta)``, zero on the photon shell."""
    m2 = s.p[0] ** 2 - s.p[1:] @ s.p[1:] / eta
    if m2 < -1e-14 * s.p[0] ** 2:
        raise SpacelikeMomentumError(f"state below the photon shell: {m2}")
    return -c * float(np.sqrt(max(m2, 0.0)))


def dyon_rhs(s: ExtendedState, f: EMFieldSample, ch: ParticleCharges, c: float = 1.0) -> np.ndarray:
    """d/du of the state for a particle with electric and magnetic charge.

    ``q0' = -c p0/M``, ``q' = c p/M`` with ``M = sqrt(p0^2 - p^2)``;
    ``p' = (q_e/c)(q' x B + q0' E) + (q_m/c)(-q' x E + q0' B)``;
    ``p0' = -(q_e/c) E.q' - (q_m/c) B.q'``.
    """
    p0, p = s.p[0], s.p[1:]
    M = _mass_shell(s.p)
    if M == 0:
        raise SpacelikeMomentumError("null momentum has no universal-time flow")
    dq0 = -c * p0 / M
    dq = c * p / M
    E, B = f.E, f.B
    dp = (ch.q_e / c) * (np.cross(dq, B) + dq0 * E) + (ch.q_m / c) * (-np.cross(dq, E) + dq0 * B)
    dp0 = -(ch.q_e / c) * (E @ dq) - (ch.q_m / c) * (B @ dq)
    return np.concatenate(([dq0], dq, [dp0], dp))


Rhs = Callable[[float, np.ndarray], np.ndarray]


def charged_rhs(field: Optional[EMField], ch: ParticleCharges, c: float = 1.0) -> Rhs:
    """Wrap :func:`dyon_rhs` as ``rhs(u, y)`` sampling ``field`` at q."""
    zero = EMFieldSample(np.zeros(3), np.zeros(3))

    def rhs(u, y):
        s = ExtendedState(y[:4], y[4:])
        f = zero if field is None else field(s.q)
        return dyon_rhs(s, f, ch, c)

    return rhs


def photon_rhs(eta: float = 1.0, c: float = 1.0) -> Rhs:
    """Flow of the extended photon Hamiltonian in a homogeneous medium.

    Experimental: on the shell the universal time degenerates, so the flow is
    normalised by ``|p0|`` instead of ``sqrt(p0^2 - p^2/eta)``. This gives
    ``dq/dq0 = p/(eta |p0|)``, i.e. speed c/sqrt(eta) on the shell.
    """

    def rhs(u, y):
        p0, p = y[4], y[5:]
        scale = c / abs(p0)
        return np.concatenate(([-scale * p0], scale * p / eta, np.zeros(4)))

    return rhs


@dataclass
class Trajectory:
    """Samples of one integrated trajectory.

    ``states[i]`` is the 8-vector at ``u[i]``; ``derivs[i]`` the right-hand
    side there; ``H[i]`` the monitored Hamiltonian.
    """

    u: np.ndarray
    states: np.ndarray
    derivs: np.ndarray
    H: np.ndarray
    c: float = 1.0

    def __post_init__(self):
        if np.any(np.diff(self.u) <= 0):
            raise ValueError("trajectory parameter u must be strictly increasing")

    @property
    def q(self) -> np.ndarray:
        return self.states[:, :4]

    @property
    def p(self) -> np.ndarray:
        return self.states[:, 4:]

    def state(self, i: int) -> ExtendedState:
        return ExtendedState.from_array(self.states[i])

    def hamiltonian_drift(self) -> float:
        """max |H - H[0]| / |H[0]| (absolute if H[0] = 0)."""
        ref = abs(self.H[0])
        dev = np.max(np.abs(self.H - self.H[0]))
        return float(dev / ref) if ref > 0 else float(dev)


def integrate(
    s0: ExtendedState,
    rhs: Rhs,
    cfg: IntegratorConfig = IntegratorConfig(),
    hamiltonian: Optional[Callable[[ExtendedState], float]] = None,
    c: float = 1.0,
) -> Trajectory:
    """Integrate the Hamiltonian flow from ``s0`` over ``u in [0, du*steps]``.

    Samples are returned on the uniform grid ``u = i*du`` for both methods;
    the adaptive method picks its own internal steps.
    """
    if hamiltonian is None:
        hamiltonian = lambda s: hamiltonian_free(s, c)  # noqa: E731
    y0 = s0.as_array()
    steps = int(cfg.steps)
    u = cfg.du * np.arange(steps + 1)
    if cfg.method is Method.RK4:
        ys, ks = rk4(rhs, y0, 0.0, cfg.du, steps)
    else:
        ys, ks = rk45(rhs, y0, u, cfg.tolerance)
    H = np.array([hamiltonian(ExtendedState.from_array(y)) for y in ys])
    return Trajectory(u, ys, ks, H, c)


def integrate_batch(
    states: Iterable[ExtendedState],
    rhs_for: Callable[[int], Rhs],
    cfg: IntegratorConfig = IntegratorConfig(),
    **kwargs,
) -> list[Trajectory]:
    """Integrate several initial states; ``rhs_for(i)`` supplies each rhs."""
    return [integrate(s, rhs_for(i), cfg, **kwargs) for i, s in enumerate(states)]


@dataclass
class LabFrame:
    t: np.ndarray
    q: np.ndarray
    v: np.ndarray
    p: np.ndarray
    energy: np.ndarray
    v_from_momentum: np.ndarray = field(repr=False)

    @property
    def velocity_mismatch(self) -> float:
        """max |c q'/q0' - p c^2/energy| over the samples."""
        return float(np.max(np.abs(self.v - self.v_from_momentum)))


def lab_frame(traj: Trajectory) -> LabFrame:
    """Reparametrise by ``t = q0/c``."""
    c = traj.c
    q0 = traj.q[:, 0]
    if np.any(np.diff(q0) <= 0):
        raise NonMonotonicTimeError("q0 is not strictly increasing")
    dq0 = traj.derivs[:, 0]
    v = c * traj.derivs[:, 1:4] / dq0[:, None]
    energy = -c * traj.p[:, 0]
    v_mom = traj.p[:, 1:] * c**2 / energy[:, None]
    return LabFrame(q0 / c, traj.q[:, 1:].copy(), v, traj.p[:, 1:].copy(), energy, v_mom)


_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0


def _five_point(y: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order first derivative on interior samples of a uniform grid."""
    return (_D1[0] * y[:-4] + _D1[1] * y[1:-3] + _D1[3] * y[3:-1] + _D1[4] * y[4:]) / h


def energy_theorem_residual(traj: Trajectory, field: Optional[EMField], ch: ParticleCharges) -> float:
    """max |d(energy)/dt - (q_e E + q_m B).v| from trajectory samples.

    d/dt is taken as (d/du)/(d t/du) with five-point stencils in u, so the
    residual measures the integrated trajectory, not the rhs formula.
    """
    u = traj.u
    du = u[1] - u[0]
    if not np.allclose(np.diff(u), du, rtol=1e-9):
        raise ValueError("energy theorem check needs uniformly spaced u samples")
    lab = lab_frame(traj)
    dE = _five_point(lab.energy, du) / _five_point(lab.t, du)
    inner = slice(2, len(u) - 2)
    power = np.empty(len(u) - 4)
    for k, i in enumerate(range(*inner.indices(len(u)))):
        if field is None:
            power[k] = 0.0
            continue
        f = field(traj.q[i])
        power[k] = (ch.q_e * f.E + ch.q_m * f.B) @ lab.v[i]
    return float(np.max(np.abs(dE - power)))


def gyro_center(s: ExtendedState, B0: float, q_e: float, c: float = 1.0) -> np.ndarray:
    """Guiding centre in the q1-q2 plane for B = B0 z-hat, E = 0.

    The orbit radius is ``|p_perp| c / |q_e B0|``.
    """
    p = s.p[1:3]
    # lab-frame force on positive charge rotates p clockwise when q_e B0 > 0
    return s.q[1:3] + (c / (q_e * B0)) * np.array([p[1], -p[0]])


TRAJECTORY_COLUMNS = ["u", "t", "q0", "q1", "q2", "q3", "p0", "p1", "p2", "p3", "H"]


def write_trajectory_csv(traj: Trajectory, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(TRAJECTORY_COLUMNS)
        for u, y, h in zip(traj.u, traj.states, traj.H):
            w.writerow([repr(float(u)), repr(float(y[0] / traj.c))] + [repr(float(v)) for v in y] + [repr(float(h))])
