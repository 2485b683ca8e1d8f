"""Closed-form fields and potentials.

Each constructor returns an :class:`~emforms.fields.EMField`. The
``potential_field`` family also carries a potential sampler, with E and B
computed from exact polynomial derivatives rather than by differencing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .fields import VACUUM, EMField, EMFieldSample, Medium, PotentialSample

__all__ = [
    "uniform_field",
    "plane_wave",
    "coulomb_field",
    "monopole_field",
    "PolynomialPotential",
    "random_polynomial_potential",
    "potential_field",
]


def uniform_field(E=(0.0, 0.0, 0.0), B=(0.0, 0.0, 0.0)) -> EMField:
    sample = EMFieldSample(E, B)
    return EMField(lambda x: sample)


def plane_wave(amplitude: float, k, polarization, medium: Medium = VACUUM, phase0: float = 0.0) -> EMField:
    """Transverse harmonic wave ``E = a P cos(k.q - k0 q0 + phase0)``, ``B = (k/k0) x E``.

    ``k0 = |k|/sqrt(eta)``, so the wave solves the source-free equations in
    ``medium``. The polarization is projected orthogonal to ``k``.
    """
    k = np.asarray(k, dtype=float)
    kn = np.linalg.norm(k)
    if kn == 0:
        raise ValueError("wave vector must be nonzero")
    pol = np.asarray(polarization, dtype=float)
    pol = pol - (pol @ k) / kn**2 * k
    pn = np.linalg.norm(pol)
    if pn < 1e-12:
        raise ValueError("polarization is parallel to the wave vector")
    pol = pol / pn
    k0 = kn / np.sqrt(medium.eta)
    bdir = np.cross(k / k0, pol)

    def sampler(x):
        c = amplitude * np.cos(k @ x[1:] - k0 * x[0] + phase0)
        return EMFieldSample(c * pol, c * bdir)

    return EMField(sampler)


def coulomb_field(q: float, eps_r: float = 1.0, center=(0.0, 0.0, 0.0)) -> EMField:
    """Static ``E = q e_r / (4 pi eps_r r^2)`` about ``center``."""
    center = np.asarray(center, dtype=float)

    def sampler(x):
        r = x[1:] - center
        rn = np.linalg.norm(r)
        return EMFieldSample(q * r / (4 * np.pi * eps_r * rn**3), np.zeros(3))

    return EMField(sampler)


def monopole_field(q_m: float, mu_r: float = 1.0, center=(0.0, 0.0, 0.0)) -> EMField:
    """Static ``B = mu_r q_m e_r / (4 pi r^2)`` of a point magnetic charge."""
    center = np.asarray(center, dtype=float)

    def sampler(x):
        r = x[1:] - center
        rn = np.linalg.norm(r)
        return EMFieldSample(np.zeros(3), mu_r * q_m * r / (4 * np.pi * rn**3))

    return EMField(sampler)


@dataclass(frozen=True)
class PolynomialPotential:
    """Four-potential ``A_nu(q) = sum_m coeffs[m, nu] prod_a q_a**exponents[m, a]``.

    Component 0 is ``A_0 = -V``.
    """

    exponents: np.ndarray  # (M, 4) non-negative integers
    coeffs: np.ndarray  # (M, 4)

    def four_potential(self, x) -> np.ndarray:
        mono = np.prod(np.asarray(x, dtype=float) ** self.exponents, axis=1)
        return mono @ self.coeffs

    def gradient(self, x) -> np.ndarray:
        """``g[mu, nu] = d_mu A_nu`` from exact monomial derivatives."""
        x = np.asarray(x, dtype=float)
        g = np.zeros((4, 4))
        for mu in range(4):
            e = self.exponents.copy()
            factor = e[:, mu].astype(float)
            e[:, mu] = np.maximum(e[:, mu] - 1, 0)
            g[mu] = (factor * np.prod(x**e, axis=1)) @ self.coeffs
        return g

    def omega(self, x) -> np.ndarray:
        g = self.gradient(x)
        return -(g - g.T)

    def sample(self, x) -> PotentialSample:
        a = self.four_potential(x)
        return PotentialSample(a[1:], -a[0])

    def fields(self, x) -> EMFieldSample:
        w = self.omega(x)
        return EMFieldSample(w[0, 1:], np.array([-w[2, 3], w[1, 3], -w[1, 2]]))


def random_polynomial_potential(seed: int, degree: int = 4, scale: float = 1.0) -> PolynomialPotential:
    rng = np.random.default_rng(seed)
    exps = np.array(
        [e for e in itertools.product(range(degree + 1), repeat=4) if sum(e) <= degree],
        dtype=int,
    )
    coeffs = scale * rng.standard_normal((len(exps), 4))
    return PolynomialPotential(exps, coeffs)


def potential_field(pot: PolynomialPotential) -> EMField:
    """Field with exact E, B and the potential sampler attached."""
    return EMField(pot.fields, pot.sample)
