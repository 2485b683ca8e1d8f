from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emforms.dynamics import IntegratorConfig, Method
from emforms.errors import CFLViolationError, ZeroMomentumError
from emforms.photon_flow import (
    Boundary,
    Grid,
    IndexField,
    PhotonGridState,
    RayState,
    cfl_limit,
    evolve,
    functional_hamiltonian,
    godunov_gradient_norm,
    ray_hamiltonian,
    step_density,
    step_phase,
    trace_ray,
)


def pulse_state(N=256, k=2 * np.pi, boundary="periodic", center=0.5, width=0.05):
    grid = Grid((N,), (1.0 / N,), boundary=(boundary,), axes=(2,))
    x = grid.centers(0)
    n = np.exp(-((x - center) ** 2) / width**2)
    jump = (k,) if boundary == "periodic" else (0.0,)
    return PhotonGridState(grid, n, k * x, jump)


def test_grid_geometry():
    g = Grid((4, 8), (0.25, 0.125), origin=(1.0, 0.0), axes=(0, 2))
    assert g.ndim == 2
    assert g.cell_volume == pytest.approx(1 / 32)
    assert g.extent == (1.0, 1.0)
    np.testing.assert_allclose(g.centers(0), [1.125, 1.375, 1.625, 1.875])
    pos = g.positions()
    assert pos.shape == (4, 8, 3)
    assert np.all(pos[..., 1] == 0)
    assert g.positions(face_axis=1).shape == (4, 9, 3)
    with pytest.raises(ValueError):
        Grid((2,), (0.1,))
    with pytest.raises(ValueError):
        Grid((4, 4), (0.1, 0.1), axes=(1, 1))


def test_state_validation():
    g = Grid((4,), (0.25,), boundary=("outflow",))
    with pytest.raises(ValueError):
        PhotonGridState(g, -np.ones(4), np.zeros(4))
    with pytest.raises(ValueError):
        PhotonGridState(g, np.ones(4), np.zeros(4), (1.0,))
    with pytest.raises(ValueError):
        PhotonGridState(g, np.ones(3), np.zeros(3))


def test_godunov_norm_of_plane_phase_is_exact():
    s = pulse_state(64, k=3.0)
    np.testing.assert_allclose(godunov_gradient_norm(s), 3.0, rtol=1e-12)
    # odd reflection at outflow boundaries keeps a linear phase linear
    s2 = pulse_state(64, k=3.0, boundary="outflow")
    np.testing.assert_allclose(godunov_gradient_norm(s2), 3.0, rtol=1e-12)


def test_godunov_picks_viscosity_solution_at_kink():
    # phi_t + |phi_x| = 0 has the Hopf-Lax solution min over |y - x| <= t:
    # a valley bottom stays put, a ridge erodes at unit rate
    grid = Grid((8,), (1 / 8,), boundary=("outflow",))
    x = grid.centers(0)
    valley = PhotonGridState(grid, np.ones(8), np.abs(x - 0.5))
    np.testing.assert_allclose(godunov_gradient_norm(valley), [1, 1, 1, 0, 0, 1, 1, 1])
    ridge = PhotonGridState(grid, np.ones(8), -np.abs(x - 0.5))
    np.testing.assert_allclose(godunov_gradient_norm(ridge), 1.0)


def test_phase_step_uniform_medium():
    s = pulse_state(64, k=2.0)
    idx = IndexField.uniform(4.0)
    dt = 0.5 * cfl_limit(s.grid, 4.0)
    # phi_t = -c/sqrt(eta) |k|
    np.testing.assert_allclose(step_phase(s, idx, dt), s.phi - dt * 0.5 * 2.0, rtol=1e-13)


def test_cfl_violation():
    s = pulse_state(64)
    idx = IndexField.uniform(1.0)
    limit = cfl_limit(s.grid, 1.0)
    assert limit == pytest.approx(0.5 / 64)
    with pytest.raises(CFLViolationError):
        step_phase(s, idx, 1.01 * limit)
    with pytest.raises(CFLViolationError):
        step_density(s, idx, 1.01 * limit)
    with pytest.raises(CFLViolationError):
        evolve(s, idx, -1.0, 1)


def test_cfl_monotone_cap_in_3d():
    g = Grid((8, 8, 8), (0.1, 0.1, 0.1))
    # 0.5 dx / a would give 0.05; monotonicity caps at dx / (3 a)
    assert cfl_limit(g, 1.0) == pytest.approx(0.1 / 3)


def test_periodic_mass_conservation_per_step():
    s = pulse_state(256)
    idx = IndexField.uniform(1.0)
    _, series = evolve(s, idx, cfl_limit(s.grid, 1.0), 1000)
    assert series.max_step_change("mass") < 1e-12
    assert series.relative_drift("hamiltonian") < 1e-3


def test_pulse_travels_at_light_speed():
    eta = 2.25
    s = pulse_state(256)
    idx = IndexField.uniform(eta)
    dt = cfl_limit(s.grid, eta)
    steps = 200
    final, _ = evolve(s, idx, dt, steps)
    x = s.grid.centers(0)
    shift = steps * dt / np.sqrt(eta)
    # circular centroid handles the periodic wrap
    ang = np.angle(np.sum(final.n * np.exp(2j * np.pi * x)))
    centroid = (ang / (2 * np.pi)) % 1.0
    expected = (0.5 + shift) % 1.0
    gap = (centroid - expected + 0.5) % 1.0 - 0.5
    assert abs(gap) < 2e-3


def test_advection_self_convergence():
    # first-order upwind: halving dx roughly halves the error
    errs = []
    for N in (128, 256, 512):
        s = pulse_state(N, center=0.3, width=0.08)
        idx = IndexField.uniform(1.0)
        dt = cfl_limit(s.grid, 1.0)
        steps = int(round(0.25 / dt))
        final, _ = evolve(s, idx, dt, steps, monitors=("mass",))
        x = s.grid.centers(0)
        exact = np.exp(-((x - 0.3 - steps * dt) ** 2) / 0.08**2)
        errs.append(np.sum(np.abs(final.n - exact)) / N)
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(orders > 0.7)


def test_outflow_loses_mass_monotonically():
    s = pulse_state(128, boundary="outflow", center=0.8)
    idx = IndexField.uniform(1.0)
    _, series = evolve(s, idx, cfl_limit(s.grid, 1.0), 300, monitors=("mass",))
    m = np.asarray(series.mass)
    assert np.all(np.diff(m) <= 1e-15)
    assert m[-1] < 0.5 * m[0]


@settings(max_examples=15)
@given(st.floats(-3, 3), st.floats(-3, 3), st.sampled_from(["strang", "sequential"]))
def test_2d_periodic_conservation(kx, ky, splitting):
    if abs(kx) + abs(ky) < 0.1:
        return
    N = 32
    grid = Grid((N, N), (1 / N, 1 / N))
    X, Y = np.meshgrid(grid.centers(0), grid.centers(1), indexing="ij")
    # integer wave numbers fit the box with phase jumps 2 pi m
    mx, my = round(kx), round(ky)
    if mx == 0 and my == 0:
        return
    phi = 2 * np.pi * (mx * X + my * Y)
    n = 1 + 0.5 * np.sin(2 * np.pi * X) * np.cos(2 * np.pi * Y)
    s = PhotonGridState(grid, n, phi, (2 * np.pi * mx, 2 * np.pi * my))
    idx = IndexField.uniform(1.0)
    _, series = evolve(s, idx, cfl_limit(grid, 1.0), 50, monitors=("mass",), splitting=splitting)
    assert series.max_step_change("mass") < 1e-12


def test_hamiltonian_of_plane_phase():
    s = pulse_state(128, k=4.0)
    # (c/sqrt(eta)) |k| * total photon number
    assert functional_hamiltonian(s, IndexField.uniform(4.0)) == pytest.approx(0.5 * 4.0 * s.total(), rel=1e-12)


def test_balance_monitor_and_callback():
    s = pulse_state(128)
    seen = []
    _, series = evolve(s, IndexField.uniform(1.0), cfl_limit(s.grid, 1.0), 5, monitors=("mass", "balance"), callback=lambda st_: seen.append(st_.t))
    assert len(seen) == 5
    assert np.isnan(series.balance[0])
    assert np.all(np.isfinite(series.balance[1:]))
    with pytest.raises(ValueError):
        evolve(s, IndexField.uniform(1.0), 1e-3, 1, monitors=("bogus",))


def test_monitor_csv(tmp_path):
    s = pulse_state(64)
    _, series = evolve(s, IndexField.uniform(1.0), cfl_limit(s.grid, 1.0), 3)
    p = tmp_path / "m.csv"
    series.write_csv(p)
    lines = p.read_text().splitlines()
    assert lines[0] == "t,mass,hamiltonian,balance"
    assert len(lines) == 5


def test_index_gradients_match_differences():
    q = np.array([[0.1, -0.2, 0.05], [0.3, 0.1, -0.02]])
    for idx in (IndexField.planar_ramp(1.0, 2.0, axis=2, width=0.1), IndexField.parabolic(1.5, 0.5)):
        fd = IndexField(idx.eta).gradient(q)
        np.testing.assert_allclose(idx.gradient(q), fd, atol=1e-6)


# rays


def test_straight_ray_in_uniform_medium():
    idx = IndexField.uniform(2.25)
    r0 = RayState.launch([0, 0, 0], [1, 1, 0], idx, h=2.0)
    assert ray_hamiltonian(r0, idx) == pytest.approx(2.0)
    path = trace_ray(r0, idx, 3.0, IntegratorConfig(steps=30))
    np.testing.assert_allclose(path.q[-1], 3.0 / 1.5 * np.array([1, 1, 0]) / np.sqrt(2), atol=1e-12)
    np.testing.assert_allclose(np.linalg.norm(path.velocity(idx=idx), axis=1), 1 / 1.5)


def test_snell_across_smooth_ramp():
    idx = IndexField.planar_ramp(1.0, 2.25, axis=2, center=0.0, width=0.05)
    theta = np.deg2rad(30)
    r0 = RayState.launch([0, 0, -1.5], [np.sin(theta), 0, np.cos(theta)], idx)
    path = trace_ray(r0, idx, 4.0, IntegratorConfig(steps=4000))
    d = path.p[-1] / np.linalg.norm(path.p[-1])
    assert path.q[-1, 2] > 1.0
    assert d[0] == pytest.approx(np.sin(theta) / 1.5, rel=1e-3)
    # transverse momentum is conserved across a planar index change
    assert path.p[-1, 0] == pytest.approx(path.p[0, 0], rel=1e-10)
    assert path.hamiltonian_drift() < 1e-8


def test_grin_period():
    n0, g = 1.5, 0.5
    idx = IndexField.parabolic(n0, g)
    r0 = RayState.launch([0, 0, 0], [0.03, 0, 1], idx)
    path = trace_ray(r0, idx, 60.0, IntegratorConfig(steps=6000))
    x, z = path.q[:, 0], path.q[:, 2]
    up = np.nonzero((x[:-1] < 0) & (x[1:] >= 0))[0]
    zc = z[up] - x[up] * (z[up + 1] - z[up]) / (x[up + 1] - x[up])
    period = np.mean(np.diff(zc))
    assert period == pytest.approx(2 * np.pi / g, rel=1e-2)
    beta = path.p[0, 2] / path.h[0]
    assert period == pytest.approx(2 * np.pi * beta / (n0 * g), rel=1e-6)


def test_rk45_ray_matches_rk4():
    idx = IndexField.parabolic(1.5, 0.5)
    r0 = RayState.launch([0.1, 0, 0], [0, 0, 1], idx)
    a = trace_ray(r0, idx, (0.0, 5.0), IntegratorConfig(steps=500))
    b = trace_ray(r0, idx, (0.0, 5.0), IntegratorConfig(steps=500, method=Method.RK45, tolerance=1e-11))
    np.testing.assert_allclose(a.q, b.q, atol=1e-8)


def test_ray_validation():
    with pytest.raises(ZeroMomentumError):
        RayState([0, 0, 0], [0, 0, 0])
    with pytest.raises(ValueError):
        RayState([0, 0], [1, 0, 0])
    with pytest.raises(ValueError):
        IndexField.uniform(0.0)
    assert Boundary("outflow") is Boundary.OUTFLOW
