from __future__ import annotations

import csv

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emforms import analytic
from emforms.dynamics import (
    TRAJECTORY_COLUMNS,
    ExtendedState,
    IntegratorConfig,
    Method,
    ParticleCharges,
    Trajectory,
    charged_rhs,
    dyon_rhs,
    energy_theorem_residual,
    gyro_center,
    hamiltonian_free,
    integrate,
    integrate_batch,
    lab_frame,
    photon_extended_hamiltonian,
    photon_rhs,
    write_trajectory_csv,
)
from emforms.errors import NonMonotonicTimeError, SpacelikeMomentumError
from emforms.fields import EMFieldSample, dual_field


def test_massive_state_and_hamiltonian():
    s = ExtendedState.massive([0, 0, 0, 0], [3.0, 0, 0], mass=4.0, c=1.0)
    assert s.p[0] == -5.0
    assert hamiltonian_free(s) == pytest.approx(-4.0)
    assert hamiltonian_free(ExtendedState.massive([0] * 4, [1, 2, 2], 2.0, c=3.0), c=3.0) == pytest.approx(-2.0 * 9)


def test_state_validation():
    with pytest.raises(ValueError):
        ExtendedState([0, 0, 0], [1, 0, 0, 0])
    with pytest.raises(ValueError):
        ExtendedState([0, 0, 0, np.nan], [1, 0, 0, 0])
    with pytest.raises(SpacelikeMomentumError):
        ExtendedState([0] * 4, [-1.0, 2.0, 0, 0]).check_timelike()
    with pytest.raises(SpacelikeMomentumError):
        hamiltonian_free(ExtendedState([0] * 4, [-1.0, 2.0, 0, 0]))
    with pytest.raises(ValueError):
        IntegratorConfig(du=-1.0)
    with pytest.raises(ValueError):
        IntegratorConfig(steps=0)


def test_free_particle_momentum_bitwise_constant():
    s0 = ExtendedState.massive([0, 1, 2, 3], [0.3, -0.4, 1.2], 1.0)
    field = analytic.uniform_field([1, 2, 3], [0.5, 0, 1])
    traj = integrate(s0, charged_rhs(field, ParticleCharges()), IntegratorConfig(du=0.01, steps=500))
    assert np.all(traj.p == s0.p)
    # straight line at v = p c^2 / energy
    lab = lab_frame(traj)
    np.testing.assert_allclose(lab.v, np.tile(s0.p[1:] / -s0.p[0], (len(lab.t), 1)), rtol=1e-12)


def test_gyro_orbit_radius_and_period():
    # one proper-time period is 2 pi m / (q_e B0)
    m, B0, q_e = 1.5, 2.0, 1.0
    s0 = ExtendedState.massive([0, 0, 0, 0], [0.8, 0.0, 0.3], m)
    period = 2 * np.pi * m / (q_e * B0)
    cfg = IntegratorConfig(du=period / 1000, steps=1000)
    traj = integrate(s0, charged_rhs(analytic.uniform_field(B=[0, 0, B0]), ParticleCharges(q_e)), cfg)
    center = gyro_center(s0, B0, q_e)
    r = np.linalg.norm(traj.q[:, 1:3] - center, axis=1)
    radius = 0.8 / (q_e * B0)
    assert np.max(np.abs(r - radius)) / radius < 1e-6
    np.testing.assert_allclose(traj.p[-1], s0.p, atol=1e-9)
    # drift along B at constant velocity p_z / (gamma m)
    assert traj.q[-1, 3] == pytest.approx(0.3 / m * period, rel=1e-9)


def test_hyperbolic_motion_oracle():
    # from rest in uniform E: p1 = m sinh(q E u / m), q0 = (m / q E) sinh(q E u / m)
    m, E, q = 2.0, 0.7, 1.5
    s0 = ExtendedState.massive([0, 0, 0, 0], [0, 0, 0], m)
    traj = integrate(s0, charged_rhs(analytic.uniform_field(E=[E, 0, 0]), ParticleCharges(q)), IntegratorConfig(du=2e-3, steps=1500))
    a = q * E / m
    np.testing.assert_allclose(traj.p[:, 1], m * np.sinh(a * traj.u), rtol=1e-9, atol=1e-12)
    np.testing.assert_allclose(traj.q[:, 0], np.sinh(a * traj.u) / a, rtol=1e-9, atol=1e-12)
    np.testing.assert_allclose(traj.q[:, 1], (np.cosh(a * traj.u) - 1) / a, rtol=1e-9, atol=1e-12)


def test_energy_theorem_crossed_fields():
    field = analytic.uniform_field([0.2, -0.1, 0.3], [0.0, 0.4, 0.6])
    ch = ParticleCharges(1.0, 0.5)
    s0 = ExtendedState.massive([0] * 4, [0.1, 0.2, -0.3], 1.0)
    traj = integrate(s0, charged_rhs(field, ch), IntegratorConfig(du=1e-3, steps=2000))
    assert energy_theorem_residual(traj, field, ch) < 1e-8
    assert traj.hamiltonian_drift() < 1e-10


def test_energy_theorem_inhomogeneous_field():
    field = analytic.coulomb_field(1.0)
    ch = ParticleCharges(-0.5)
    s0 = ExtendedState.massive([0, 1.0, 0, 0], [0, 0.4, 0], 1.0)
    traj = integrate(s0, charged_rhs(field, ch), IntegratorConfig(du=1e-3, steps=3000))
    assert energy_theorem_residual(traj, field, ch) < 1e-8


@settings(max_examples=20)
@given(
    st.floats(-2, 2), st.floats(-2, 2),
    st.lists(st.floats(-1, 1), min_size=3, max_size=3),
    st.lists(st.floats(-1, 1), min_size=3, max_size=3),
)
def test_dyon_duality_pointwise(q_e, q_m, E, B):
    field = analytic.uniform_field(E, B)
    ch = ParticleCharges(q_e, q_m)
    s0 = ExtendedState.massive([0, 0.1, 0, 0], [0.2, -0.1, 0.3], 1.0)
    cfg = IntegratorConfig(du=1e-2, steps=100)
    a = integrate(s0, charged_rhs(field, ch), cfg)
    b = integrate(s0, charged_rhs(dual_field(field), ch.dual()), cfg)
    assert np.max(np.abs(a.states - b.states)) < 1e-8


def test_dyon_rhs_mass_shell_preserved():
    s = ExtendedState.massive([0] * 4, [0.3, 0.1, -0.2], 1.3)
    d = dyon_rhs(s, EMFieldSample([1, 2, 3], [-1, 0.5, 2]), ParticleCharges(0.7, -0.4))
    # d/du (p0^2 - p^2) = 2 (p0 p0' - p . p')
    assert s.p[0] * d[4] - s.p[1:] @ d[5:] == pytest.approx(0.0, abs=1e-14)


def test_rk45_matches_rk4():
    field = analytic.uniform_field([0.1, 0, 0], [0, 0, 1.0])
    s0 = ExtendedState.massive([0] * 4, [0.5, 0, 0], 1.0)
    ch = ParticleCharges(1.0)
    a = integrate(s0, charged_rhs(field, ch), IntegratorConfig(du=1e-3, steps=2000))
    b = integrate(s0, charged_rhs(field, ch), IntegratorConfig(du=1e-3, steps=2000, method=Method.RK45, tolerance=1e-12))
    assert np.max(np.abs(a.states - b.states)) < 1e-8
    assert IntegratorConfig(method="RK45-adaptive").method is Method.RK45


def test_batch_and_lab_frame():
    field = analytic.uniform_field(B=[0, 0, 1.0])
    states = [ExtendedState.massive([0] * 4, [p, 0, 0], 1.0) for p in (0.1, 0.5)]
    trajs = integrate_batch(states, lambda i: charged_rhs(field, ParticleCharges(1.0)), IntegratorConfig(du=1e-2, steps=50))
    assert len(trajs) == 2
    lab = lab_frame(trajs[1])
    assert lab.velocity_mismatch < 1e-12
    np.testing.assert_allclose(lab.energy, np.sqrt(1 + 0.25), rtol=1e-12)


def test_nonmonotonic_time_detected():
    u = np.arange(3.0)
    states = np.zeros((3, 8))
    states[:, 0] = [0.0, 1.0, 0.5]
    states[:, 4] = -1.0
    traj = Trajectory(u, states, np.zeros((3, 8)), np.zeros(3))
    with pytest.raises(NonMonotonicTimeError):
        lab_frame(traj)
    with pytest.raises(ValueError):
        Trajectory(np.array([0.0, 0.0]), states[:2], states[:2], np.zeros(2))


def test_photon_hamiltonian_and_speed():
    eta = 2.25
    s = ExtendedState([0] * 4, [-1.0, 0.0, 0.0, 1.5])
    assert photon_extended_hamiltonian(s, eta) == pytest.approx(0.0, abs=1e-12)
    traj = integrate(s, photon_rhs(eta), IntegratorConfig(du=0.1, steps=10), hamiltonian=lambda x: photon_extended_hamiltonian(x, eta))
    dz_dq0 = (traj.q[-1, 3] - traj.q[0, 3]) / (traj.q[-1, 0] - traj.q[0, 0])
    assert dz_dq0 == pytest.approx(1 / np.sqrt(eta))


def test_trajectory_csv(tmp_path):
    s0 = ExtendedState.massive([0] * 4, [0.2, 0, 0], 1.0)
    traj = integrate(s0, charged_rhs(None, ParticleCharges()), IntegratorConfig(du=0.1, steps=5), c=2.0)
    path = tmp_path / "t.csv"
    write_trajectory_csv(traj, path)
    rows = list(csv.reader(path.open()))
    assert rows[0] == TRAJECTORY_COLUMNS
    assert len(rows) == 7
    last = [float(v) for v in rows[-1]]
    assert last[1] == pytest.approx(last[2] / 2.0)
    np.testing.assert_array_equal(last[2:10], traj.states[-1])
