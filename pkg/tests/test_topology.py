from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from emforms.errors import DomainSingularityError, OnStringError, OriginSingularityError
from emforms.topology import (
    MonopoleConfig,
    SphereMesh,
    alpha_loop_integral,
    curl_check,
    dirac_check,
    electric_quantization_check,
    flux_integral,
    loop_integral,
    monopole_potential,
    spherical_point,
    transition_phase_ki,
)

Z = (0.0, 0.0, 1.0)
X = (1.0, 0.0, 0.0)


@pytest.mark.parametrize("a", [0.25, 1.0, 7.0])
def test_flux_is_four_pi_a(a):
    assert abs(flux_integral(a) / (4 * np.pi * a) - 1) < 1e-10


def test_midpoint_flux_converges_at_second_order():
    e = [abs(flux_integral(1.0, SphereMesh(n, 2 * n), rule="midpoint") / (4 * np.pi) - 1) for n in (32, 64, 128)]
    orders = np.log2(np.array(e[:-1]) / np.array(e[1:]))
    np.testing.assert_allclose(orders, 2.0, atol=0.05)
    # leading error of the midpoint rule for int sin = 2 is h^2 / 24
    assert e[-1] == pytest.approx((np.pi / 128) ** 2 / 24, rel=1e-3)


def test_unknown_rule_and_mesh_validation():
    with pytest.raises(ValueError):
        flux_integral(1.0, rule="simpson")
    with pytest.raises(ValueError):
        SphereMesh(4, 16)


@pytest.mark.parametrize("theta", [np.pi / 4, np.pi / 2, 2 * np.pi / 3])
@pytest.mark.parametrize("a", [0.25, 1.0, 7.0])
def test_loop_integral_agrees_with_flux(a, theta):
    assert abs(loop_integral(a, theta) - flux_integral(a)) < 1e-9


def test_single_patch_loop_is_enclosed_flux():
    # loop of alpha_k at latitude theta encloses flux 2 pi a (1 - cos theta) from the north cap
    theta = 1.0
    assert alpha_loop_integral(MonopoleConfig(2.0, Z), theta) == pytest.approx(2 * np.pi * 2.0 * (1 - np.cos(theta)), rel=1e-12)


@given(st.floats(0.2, 2.9), st.floats(0, 2 * np.pi), st.floats(0.5, 3.0))
def test_curl_of_patch_potential_is_monopole_field(theta, phi, r):
    cfg = MonopoleConfig(1.3, Z)
    err = curl_check(cfg, spherical_point(theta, phi, r), h=1e-4 * r)
    # differencing error grows like (1 + cos theta)^-3 towards the string
    assert np.max(np.abs(err)) < 1e-7 * (1 + (1 + np.cos(theta)) ** -3) / r**2


def test_patch_potential_singularities():
    cfg = MonopoleConfig(1.0, Z)
    with pytest.raises(OnStringError):
        monopole_potential(cfg, [0, 0, -2.0])
    with pytest.raises(OriginSingularityError):
        monopole_potential(cfg, [0, 0, 0])
    with pytest.raises(ValueError):
        MonopoleConfig(1.0, (0, 0, 2.0))
    # tangent to the sphere and regular on the north pole
    G = monopole_potential(cfg, [0.3, -0.2, 0.9])
    assert G @ np.array([0.3, -0.2, 0.9]) == pytest.approx(0.0, abs=1e-15)
    np.testing.assert_allclose(monopole_potential(cfg, [0, 0, 1.0]), 0.0)


@given(st.floats(0.3, 1.2), st.floats(0.3, 2.8))
def test_transition_phase_gradient(theta, phi):
    # d Phi_ki = alpha_k - alpha_i with patches about z-hat (k) and x-hat (i)
    a, h = 0.7, 1e-5
    k, i = MonopoleConfig(a, Z), MonopoleConfig(a, X)
    r = spherical_point(theta, phi)
    e_theta = np.array([np.cos(theta) * np.cos(phi), np.cos(theta) * np.sin(phi), -np.sin(theta)])
    e_phi = np.array([-np.sin(theta) * np.sin(phi), np.sin(theta) * np.cos(phi), 0.0])
    dG = monopole_potential(k, r) - monopole_potential(i, r)
    d_theta = (transition_phase_ki(a, theta + h, phi) - transition_phase_ki(a, theta - h, phi)) / (2 * h)
    d_phi = (transition_phase_ki(a, theta, phi + h) - transition_phase_ki(a, theta, phi - h)) / (2 * h)
    assert d_theta == pytest.approx(dG @ e_theta, abs=1e-7)
    assert d_phi == pytest.approx(dG @ e_phi, abs=1e-7)


def test_transition_phase_domain():
    with pytest.raises(DomainSingularityError):
        transition_phase_ki(1.0, np.pi / 2, 1.0)
    with pytest.raises(DomainSingularityError):
        transition_phase_ki(1.0, 1.0, 0.0)


def test_dirac_check_integers():
    assert dirac_check(1.0, 1.0) == (1, 0.0)
    assert dirac_check(2.0, 3.0, h_planck=0.5, c=2.0) == (6, 0.0)
    n, dist = dirac_check(1.0, 0.3)
    assert n == 0 and dist == pytest.approx(0.3)
    # round-half-even on exact ties
    assert dirac_check(2.5, 1.0)[0] == 2
    assert dirac_check(3.5, 1.0)[0] == 4
    with pytest.raises(ValueError):
        dirac_check(1.0, 1.0, h_planck=0.0)


@given(st.integers(-50, 50), st.floats(0.1, 10.0))
def test_constructed_dirac_inputs_are_exact(n, hc):
    q_e = 2.0
    q_m = n * hc / q_e
    m, dist = dirac_check(q_e, q_m, h_planck=hc, c=1.0)
    assert m == n
    assert dist < 1e-12


def test_electric_quantization():
    assert electric_quantization_check(2.0, 1.0) == (2, 0.0)
    assert electric_quantization_check(-6.0, 2.0) == (-3, 0.0)
    with pytest.raises(ValueError):
        electric_quantization_check(1.0, 0.0)
