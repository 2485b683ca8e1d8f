"""Photon density / phase dynamics on a grid, and single-photon ray tracing.

With ``a(q) = c / sqrt(eta(q))`` the grid system is

    d_t phi = -a |grad phi|                        (Hamilton-Jacobi)
    d_t n + div(n a grad phi / |grad phi|) = 0     (conservation)

with conjugate pair (n, phi) and Hamiltonian ``H = int a n |grad phi| dV``.
Rays follow ``h = c |p| / sqrt(eta(q))``.

Grid layout: cell-centred, ``x_i = origin + (i + 1/2) dx`` along each grid
axis; grid axis ``k`` represents spatial coordinate ``q_{axes[k]+1}``.
Periodic axes may carry a phase jump ``J``: ``phi(x + L) = phi(x) + J``,
which lets a plane phase ``k . q`` live on a periodic box.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np

from ._ode import rk4, rk45
from .dynamics import IntegratorConfig, Method
from .errors import CFLViolationError, ZeroMomentumError

__all__ = [
    "Boundary",
    "Grid",
    "PhotonGridState",
    "IndexField",
    "RayState",
    "RayPath",
    "MonitorSeries",
    "cfl_limit",
    "check_cfl",
    "functional_hamiltonian",
    "step_phase",
    "step_density",
    "energy_quantities",
    "evolve",
    "ray_hamiltonian",
    "ray_rhs",
    "trace_ray",
]


class Boundary(str, enum.Enum):
    PERIODIC = "periodic"
    OUTFLOW = "outflow"


@dataclass(frozen=True)
class Grid:
    shape: tuple
    spacing: tuple
    origin: tuple = None  # type: ignore[assignment]
    boundary: tuple = None  # type: ignore[assignment]
    axes: tuple = None  # type: ignore[assignment]

    def __post_init__(self):
        nd = len(self.shape)
        if not 1 <= nd <= 3:
            raise ValueError("grid must have 1 to 3 dimensions")
        shape = tuple(int(n) for n in self.shape)
        if any(n < 3 for n in shape):
            raise ValueError("each grid axis needs at least 3 cells")
        spacing = tuple(float(h) for h in self.spacing)
        if len(spacing) != nd or any(not h > 0 for h in spacing):
            raise ValueError("spacing must be positive, one value per axis")
        origin = (0.0,) * nd if self.origin is None else tuple(float(o) for o in self.origin)
        bc = (Boundary.PERIODIC,) * nd if self.boundary is None else tuple(Boundary(b) for b in self.boundary)
        axes = tuple(range(nd)) if self.axes is None else tuple(int(a) for a in self.axes)
        if len(origin) != nd or len(bc) != nd or len(axes) != nd:
            raise ValueError("origin, boundary and axes need one entry per grid axis")
        if len(set(axes)) != nd or any(not 0 <= a <= 2 for a in axes):
            raise ValueError("axes must be distinct spatial indices in 0..2")
        for name, v in (("shape", shape), ("spacing", spacing), ("origin", origin), ("boundary", bc), ("axes", axes)):
            object.__setattr__(self, name, v)

    @property
    def ndim(self) -> int:
        return len(self.shape)

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    @property
    def extent(self) -> tuple:
        return tuple(n * h for n, h in zip(self.shape, self.spacing))

    def centers(self, k: int) -> np.ndarray:
        return self.origin[k] + (np.arange(self.shape[k]) + 0.5) * self.spacing[k]

    def positions(self, face_axis: Optional[int] = None) -> np.ndarray:
        """3D positions of cell centres (or of the faces normal to ``face_axis``).

        Returns shape ``grid_shape + (3,)``; face arrays have one extra entry
        along ``face_axis``. Untouched spatial coordinates are zero.
        """
        coords = []
        for k in range(self.ndim):
            if k == face_axis:
                coords.append(self.origin[k] + np.arange(self.shape[k] + 1) * self.spacing[k])
            else:
                coords.append(self.centers(k))
        mesh = np.meshgrid(*coords, indexing="ij")
        out = np.zeros(mesh[0].shape + (3,))
        for k, a in enumerate(self.axes):
            out[..., a] = mesh[k]
        return out


@dataclass
class PhotonGridState:
    grid: Grid
    n: np.ndarray
    phi: np.ndarray
    phase_jump: tuple = None  # type: ignore[assignment]
    t: float = 0.0

    def __post_init__(self):
        self.n = np.asarray(self.n, dtype=float)
        self.phi = np.asarray(self.phi, dtype=float)
        if self.n.shape != self.grid.shape or self.phi.shape != self.grid.shape:
            raise ValueError(f"arrays must have grid shape {self.grid.shape}")
        if np.any(self.n < 0):
            raise ValueError("photon density must be non-negative")
        nd = self.grid.ndim
        jump = (0.0,) * nd if self.phase_jump is None else tuple(float(j) for j in self.phase_jump)
        if len(jump) != nd:
            raise ValueError("phase_jump needs one entry per grid axis")
        for k, j in enumerate(jump):
            if j != 0 and self.grid.boundary[k] is not Boundary.PERIODIC:
                raise ValueError("phase jumps are only meaningful on periodic axes")
        self.phase_jump = jump

    def copy(self) -> "PhotonGridState":
        return replace(self, n=self.n.copy(), phi=self.phi.copy())

    def total(self) -> float:
        """Total photon number ``sum n dV``."""
        return float(self.n.sum() * self.grid.cell_volume)


@dataclass
class IndexField:
    """Refractive structure ``eta(q) > 0``.

    ``eta`` maps positions of shape ``(..., 3)`` to ``(...)``; ``grad`` to
    ``(..., 3)``. Without ``grad`` a central difference is used.
    """

    eta: Callable[[np.ndarray], np.ndarray]
    grad: Optional[Callable[[np.ndarray], np.ndarray]] = None
    eta_min: Optional[float] = None
    fd_step: float = 1e-6

    def value(self, q) -> np.ndarray:
        return np.asarray(self.eta(np.asarray(q, dtype=float)), dtype=float)

    def gradient(self, q) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        if self.grad is not None:
            return np.asarray(self.grad(q), dtype=float)
        g = np.empty(q.shape)
        for i in range(3):
            step = np.zeros(3)
            step[i] = self.fd_step
            g[..., i] = (self.eta(q + step) - self.eta(q - step)) / (2 * self.fd_step)
        return g

    @classmethod
    def uniform(cls, eta: float) -> "IndexField":
        if not eta > 0:
            raise ValueError("eta must be positive")
        return cls(
            lambda q: np.full(np.shape(q)[:-1], float(eta)),
            lambda q: np.zeros(np.shape(q)),
            eta_min=float(eta),
        )

    @classmethod
    def planar_ramp(cls, eta1: float, eta2: float, axis: int = 2, center: float = 0.0, width: float = 0.1) -> "IndexField":
        """``eta1 + (eta2 - eta1)(1 + tanh((q_axis - center)/width))/2``."""
        if not (eta1 > 0 and eta2 > 0 and width > 0):
            raise ValueError("ramp needs positive eta1, eta2 and width")

        def eta(q):
            s = np.tanh((q[..., axis] - center) / width)
            return eta1 + 0.5 * (eta2 - eta1) * (1 + s)

        def grad(q):
            g = np.zeros(np.shape(q))
            s = np.tanh((q[..., axis] - center) / width)
            g[..., axis] = 0.5 * (eta2 - eta1) * (1 - s**2) / width
            return g

        return cls(eta, grad, eta_min=min(eta1, eta2))

    @classmethod
    def parabolic(cls, n0: float, g: float, transverse=(0, 1)) -> "IndexField":
        """Graded-index fibre ``eta = n0^2 (1 - g^2 rho^2)``, rho transverse radius.

        Only valid where ``g rho < 1``; ``eta_min`` is left unset.
        """
        idx = list(transverse)

        def eta(q):
            rho2 = np.sum(q[..., idx] ** 2, axis=-1)
            return n0**2 * (1 - g**2 * rho2)

        def grad(q):
            out = np.zeros(np.shape(q))
            out[..., idx] = -2 * n0**2 * g**2 * q[..., idx]
            return out

        return cls(eta, grad)


# grid machinery ---------------------------------------------------------


def _sl(nd: int, axis: int, s: slice) -> tuple:
    out = [slice(None)] * nd
    out[axis] = s
    return tuple(out)


def _pad_phi(phi: np.ndarray, grid: Grid, jump: tuple) -> np.ndarray:
    out = phi
    for k in range(grid.ndim):
        width = [(0, 0)] * grid.ndim
        width[k] = (1, 1)
        if grid.boundary[k] is Boundary.PERIODIC:
            out = np.pad(out, width, mode="wrap")
            if jump[k]:
                out[_sl(grid.ndim, k, slice(0, 1))] -= jump[k]
                out[_sl(grid.ndim, k, slice(-1, None))] += jump[k]
        else:
            out = np.pad(out, width, mode="reflect", reflect_type="odd")
    return out


def _pad_n(n: np.ndarray, grid: Grid) -> np.ndarray:
    out = n
    for k in range(grid.ndim):
        width = [(0, 0)] * grid.ndim
        width[k] = (1, 1)
        out = np.pad(out, width, mode="wrap" if grid.boundary[k] is Boundary.PERIODIC else "edge")
    return out


def _interior(nd: int) -> tuple:
    return (slice(1, -1),) * nd


def _central_gradient(P: np.ndarray, grid: Grid) -> list:
    """Central gradients at cell centres from a padded phase array."""
    nd = grid.ndim
    out = []
    for k in range(nd):
        hi = list(_interior(nd))
        lo = list(_interior(nd))
        hi[k] = slice(2, None)
        lo[k] = slice(None, -2)
        out.append((P[tuple(hi)] - P[tuple(lo)]) / (2 * grid.spacing[k]))
    return out


def _speed(idx: IndexField, q: np.ndarray, c: float) -> np.ndarray:
    eta = idx.value(q)
    if np.any(eta <= 0):
        raise ValueError("eta must be positive on the grid")
    return c / np.sqrt(eta)


def cfl_limit(grid: Grid, eta_min: float, c: float = 1.0) -> float:
    """Largest admissible dt.

    ``0.5 dx_min sqrt(eta_min)/c``, further capped by
    ``dt a_max sum_k 1/dx_k <= 1`` so the upwind schemes stay monotone in 3D.
    """
    a_max = c / np.sqrt(eta_min)
    base = 0.5 * min(grid.spacing) / a_max
    mono = 1.0 / (a_max * sum(1.0 / h for h in grid.spacing))
    return float(min(base, mono))


def _eta_min(grid: Grid, idx: IndexField) -> float:
    if idx.eta_min is not None:
        return idx.eta_min
    vals = [idx.value(grid.positions()).min()]
    vals += [idx.value(grid.positions(k)).min() for k in range(grid.ndim)]
    return float(min(vals))


def check_cfl(grid: Grid, idx: IndexField, dt: float, c: float = 1.0) -> None:
    limit = cfl_limit(grid, _eta_min(grid, idx), c)
    if not 0 < dt <= limit * (1 + 1e-12):
        raise CFLViolationError(f"dt = {dt} exceeds the CFL limit {limit}")


def functional_hamiltonian(s: PhotonGridState, idx: IndexField, c: float = 1.0) -> float:
    """Midpoint quadrature of ``(c/sqrt(eta)) n |grad phi|`` over the cells."""
    P = _pad_phi(s.phi, s.grid, s.phase_jump)
    g = _central_gradient(P, s.grid)
    mag = np.sqrt(sum(gk**2 for gk in g))
    a = _speed(idx, s.grid.positions(), c)
    return float(np.sum(a * s.n * mag) * s.grid.cell_volume)


def godunov_gradient_norm(s: PhotonGridState) -> np.ndarray:
    """Godunov approximation of |grad phi| for ``phi_t + a|grad phi| = 0``, a > 0.

    Per axis ``max(max(D-, 0), -min(D+, 0))``, combined in quadrature.
    """
    grid = s.grid
    nd = grid.ndim
    P = _pad_phi(s.phi, grid, s.phase_jump)
    core = P[_interior(nd)]
    total = np.zeros(grid.shape)
    for k in range(nd):
        hi = list(_interior(nd))
        lo = list(_interior(nd))
        hi[k] = slice(2, None)
        lo[k] = slice(None, -2)
        dm = (core - P[tuple(lo)]) / grid.spacing[k]
        dp = (P[tuple(hi)] - core) / grid.spacing[k]
        gk = np.maximum(np.maximum(dm, 0.0), -np.minimum(dp, 0.0))
        total += gk**2
    return np.sqrt(total)


def step_phase(s: PhotonGridState, idx: IndexField, dt: float, c: float = 1.0, check: bool = True) -> np.ndarray:
    """One forward-Euler Godunov step of ``phi_t = -a |grad phi|``; returns new phi."""
    if check:
        check_cfl(s.grid, idx, dt, c)
    a = _speed(idx, s.grid.positions(), c)
    return s.phi - dt * a * godunov_gradient_norm(s)


def default_eps_reg(s: PhotonGridState) -> float:
    scale = max(1.0, float(np.max(np.abs(s.phi))) if s.phi.size else 1.0)
    return 1e-12 * scale / min(s.grid.spacing)


def face_velocities(s: PhotonGridState, idx: IndexField, c: float = 1.0, eps_reg: Optional[float] = None) -> list:
    """Normal transport velocity ``a d_k phi / max(|grad phi|, eps)`` on the faces of each axis.

    Axis ``k`` gets ``shape[k] + 1`` faces (face i sits between cells i-1 and i).
    """
    grid = s.grid
    nd = grid.ndim
    eps = default_eps_reg(s) if eps_reg is None else eps_reg
    P = _pad_phi(s.phi, grid, s.phase_jump)
    # central gradients on every padded cell except the outer shell of each axis
    cg = []
    for e in range(nd):
        hi = [slice(None)] * nd
        lo = [slice(None)] * nd
        hi[e] = slice(2, None)
        lo[e] = slice(None, -2)
        cg.append((P[tuple(hi)] - P[tuple(lo)]) / (2 * grid.spacing[e]))
    out = []
    for k in range(nd):
        left = [slice(1, -1)] * nd
        right = [slice(1, -1)] * nd
        left[k] = slice(0, -1)
        right[k] = slice(1, None)
        gn = (P[tuple(right)] - P[tuple(left)]) / grid.spacing[k]
        mag2 = gn**2
        for e in range(nd):
            if e == k:
                continue
            # cg[e] is trimmed along e only; trim the rest to match the face stencil
            l = list(left)
            r = list(right)
            l[e] = r[e] = slice(None)
            mag2 = mag2 + (0.5 * (cg[e][tuple(l)] + cg[e][tuple(r)])) ** 2
        a = _speed(idx, grid.positions(face_axis=k), c)
        out.append(a * gn / np.maximum(np.sqrt(mag2), eps))
    return out


def step_density(
    s: PhotonGridState, idx: IndexField, dt: float, c: float = 1.0, eps_reg: Optional[float] = None, check: bool = True
) -> np.ndarray:
    """Upwind finite-volume step of the density; returns new n.

    On periodic axes the first and last face share one flux value, so the
    update telescopes and ``sum n`` is conserved to roundoff.
    """
    if check:
        check_cfl(s.grid, idx, dt, c)
    grid = s.grid
    nd = grid.ndim
    N = _pad_n(s.n, grid)
    div = np.zeros(grid.shape)
    for k, u in enumerate(face_velocities(s, idx, c, eps_reg)):
        left = [slice(1, -1)] * nd
        right = [slice(1, -1)] * nd
        left[k] = slice(0, -1)
        right[k] = slice(1, None)
        F = np.maximum(u, 0.0) * N[tuple(left)] + np.minimum(u, 0.0) * N[tuple(right)]
        if grid.boundary[k] is Boundary.PERIODIC:
            F[_sl(nd, k, slice(0, 1))] = F[_sl(nd, k, slice(-1, None))]
        div += (F[_sl(nd, k, slice(1, None))] - F[_sl(nd, k, slice(0, -1))]) / grid.spacing[k]
    return s.n - dt * div


def energy_quantities(s: PhotonGridState, idx: IndexField, omega: float, hbar: float = 1.0, c: float = 1.0):
    """Stationary-regime energy density ``w = n hbar omega`` and flux
    ``Y = n (c^2/eta) hbar grad phi``.

    ``Y`` has a trailing axis over the grid axes.
    """
    P = _pad_phi(s.phi, s.grid, s.phase_jump)
    g = np.stack(_central_gradient(P, s.grid), axis=-1)
    eta = idx.value(s.grid.positions())
    w = s.n * hbar * omega
    Y = (s.n * c**2 / eta * hbar)[..., None] * g
    return w, Y


def _divergence(Y: np.ndarray, grid: Grid) -> np.ndarray:
    """Central divergence of a cell-centred vector field (trailing axis = grid axes)."""
    div = np.zeros(grid.shape)
    for k in range(grid.ndim):
        comp = Y[..., k]
        width = [(0, 0)] * grid.ndim
        width[k] = (1, 1)
        mode = "wrap" if grid.boundary[k] is Boundary.PERIODIC else "edge"
        Pk = np.pad(comp, width, mode=mode)
        div += (Pk[_sl(grid.ndim, k, slice(2, None))] - Pk[_sl(grid.ndim, k, slice(None, -2))]) / (2 * grid.spacing[k])
    return div


@dataclass
class MonitorSeries:
    t: list = field(default_factory=list)
    mass: list = field(default_factory=list)
    hamiltonian: list = field(default_factory=list)
    balance: list = field(default_factory=list)

    COLUMNS = ("t", "mass", "hamiltonian", "balance")

    def as_arrays(self) -> dict:
        return {k: np.asarray(getattr(self, k), dtype=float) for k in self.COLUMNS}

    def relative_drift(self, name: str) -> float:
        x = np.asarray(getattr(self, name), dtype=float)
        ref = abs(x[0]) if x[0] != 0 else 1.0
        return float(np.max(np.abs(x - x[0])) / ref)

    def max_step_change(self, name: str, relative: bool = True) -> float:
        x = np.asarray(getattr(self, name), dtype=float)
        d = np.abs(np.diff(x))
        if relative and x[0] != 0:
            d = d / abs(x[0])
        return float(d.max()) if d.size else 0.0

    def write_csv(self, path) -> None:
        arrs = self.as_arrays()
        rows = len(arrs["t"])
        with open(path, "w") as fh:
            fh.write(",".join(self.COLUMNS) + "\n")
            for i in range(rows):
                fh.write(",".join(repr(float(arrs[k][i])) for k in self.COLUMNS) + "\n")


def _stationary_frequency(phi_old: np.ndarray, phi_new: np.ndarray, dt: float, tol: float = 1e-9) -> Optional[float]:
    """omega = -d_t phi if it is uniform over the grid, else None."""
    om = -(phi_new - phi_old) / dt
    ref = float(np.mean(om))
    if ref == 0 or np.max(np.abs(om - ref)) > tol * abs(ref):
        return None
    return ref


def evolve(
    s: PhotonGridState,
    idx: IndexField,
    dt: float,
    steps: int,
    monitors: Sequence[str] = ("mass", "hamiltonian"),
    c: float = 1.0,
    hbar: float = 1.0,
    eps_reg: Optional[float] = None,
    splitting: str = "strang",
    callback: Optional[Callable[[PhotonGridState], None]] = None,
) -> tuple[PhotonGridState, MonitorSeries]:
    """Advance (n, phi) by ``steps`` steps of size dt.

    ``splitting="strang"`` does phase(dt/2), density(dt), phase(dt/2);
    ``"sequential"`` does phase(dt) then density(dt). Monitors: ``mass``,
    ``hamiltonian``, ``balance`` (max |d_t w + div Y|, NaN unless the phase
    evolves with a uniform frequency). ``hbar`` only scales ``balance``.
    """
    unknown = set(monitors) - {"mass", "hamiltonian", "balance"}
    if unknown:
        raise ValueError(f"unknown monitors {sorted(unknown)}")
    if splitting not in ("strang", "sequential"):
        raise ValueError("splitting must be 'strang' or 'sequential'")
    check_cfl(s.grid, idx, dt, c)
    cur = s.copy()
    series = MonitorSeries()

    def record(state, balance):
        series.t.append(state.t)
        series.mass.append(state.total() if "mass" in monitors else np.nan)
        series.hamiltonian.append(functional_hamiltonian(state, idx, c) if "hamiltonian" in monitors else np.nan)
        series.balance.append(balance)

    record(cur, np.nan)
    for _ in range(int(steps)):
        phi_start = cur.phi
        n_start = cur.n
        if splitting == "strang":
            cur.phi = step_phase(cur, idx, dt / 2, c, check=False)
            cur.n = step_density(cur, idx, dt, c, eps_reg, check=False)
            cur.phi = step_phase(cur, idx, dt / 2, c, check=False)
        else:
            cur.phi = step_phase(cur, idx, dt, c, check=False)
            cur.n = step_density(cur, idx, dt, c, eps_reg, check=False)
        cur.t = cur.t + dt
        balance = np.nan
        if "balance" in monitors:
            omega = _stationary_frequency(phi_start, cur.phi, dt)
            if omega is not None:
                w0, Y0 = energy_quantities(replace(cur, n=n_start, phi=phi_start), idx, omega, hbar, c)
                w1, _ = energy_quantities(cur, idx, omega, hbar, c)
                balance = float(np.max(np.abs((w1 - w0) / dt + _divergence(Y0, cur.grid))))
        record(cur, balance)
        if callback is not None:
            snap = cur.copy()
            snap.n.setflags(write=False)
            snap.phi.setflags(write=False)
            callback(snap)
    return cur, series


# rays -------------------------------------------------------------------


@dataclass(frozen=True)
class RayState:
    q: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        p = np.asarray(self.p, dtype=float)
        if q.shape != (3,) or p.shape != (3,):
            raise ValueError("ray position and momentum must be 3-vectors")
        if not np.linalg.norm(p) > 0:
            raise ZeroMomentumError("ray momentum must be nonzero")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)

    @classmethod
    def launch(cls, q, direction, idx: IndexField, h: float = 1.0, c: float = 1.0) -> "RayState":
        """Ray through ``q`` along ``direction`` with Hamiltonian value ``h``."""
        d = np.asarray(direction, dtype=float)
        d = d / np.linalg.norm(d)
        return cls(q, d * h * np.sqrt(float(idx.value(np.asarray(q, dtype=float)))) / c)


def ray_hamiltonian(r: RayState, idx: IndexField, c: float = 1.0) -> float:
    return float(c * np.linalg.norm(r.p) / np.sqrt(idx.value(r.q)))


def ray_rhs(r: RayState, idx: IndexField, c: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """``dq/dt = (c/sqrt(eta)) p/|p|``, ``dp/dt = h grad ln sqrt(eta)``."""
    pn = np.linalg.norm(r.p)
    if pn == 0:
        raise ZeroMomentumError("ray momentum vanished")
    eta = float(idx.value(r.q))
    if not eta > 0:
        raise ValueError(f"eta(q) = {eta} is not positive")
    h = c * pn / np.sqrt(eta)
    return (c / np.sqrt(eta)) * r.p / pn, h * idx.gradient(r.q) / (2 * eta)


@dataclass
class RayPath:
    t: np.ndarray
    q: np.ndarray
    p: np.ndarray
    h: np.ndarray

    def hamiltonian_drift(self) -> float:
        return float(np.max(np.abs(self.h - self.h[0])) / abs(self.h[0]))

    def velocity(self, c: float = 1.0, idx: Optional[IndexField] = None) -> np.ndarray:
        """``dq/dt``; needs ``idx`` for the speed, else unit directions."""
        d = self.p / np.linalg.norm(self.p, axis=1, keepdims=True)
        if idx is None:
            return d
        return d * (c / np.sqrt(idx.value(self.q)))[:, None]


def trace_ray(r0: RayState, idx: IndexField, t_span, cfg: IntegratorConfig = IntegratorConfig(), c: float = 1.0) -> RayPath:
    """Integrate a ray over ``t_span = (t0, t1)`` with ``cfg.steps`` samples.

    ``cfg.du`` is ignored in favour of ``(t1 - t0)/cfg.steps``.
    """
    t0, t1 = (0.0, float(t_span)) if np.isscalar(t_span) else map(float, t_span)
    steps = int(cfg.steps)
    dt = (t1 - t0) / steps

    def rhs(t, y):
        dq, dp = ray_rhs(RayState(y[:3], y[3:]), idx, c)
        return np.concatenate((dq, dp))

    y0 = np.concatenate((r0.q, r0.p))
    t = t0 + dt * np.arange(steps + 1)
    if cfg.method is Method.RK4:
        ys, _ = rk4(rhs, y0, t0, dt, steps)
    else:
        ys, _ = rk45(rhs, y0, t, cfg.tolerance)
    q, p = ys[:, :3], ys[:, 3:]
    h = c * np.linalg.norm(p, axis=1) / np.sqrt(idx.value(q))
    return RayPath(t, q, p, h)
