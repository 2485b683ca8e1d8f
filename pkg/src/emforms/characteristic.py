"""Common characteristic vector of omega_f and omega_f*, and wave-ansatz fields."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .errors import DegenerateFieldError, NoCharacteristicError
from .fields import (
    VACUUM,
    EMFieldSample,
    Medium,
    energy_density,
    omega_f,
    omega_f_star,
    poynting_vector,
)
from .geometry import StencilConfig, as_event, central_partials, interior_product

__all__ = [
    "CharacteristicVector",
    "WaveData",
    "characteristic_vector",
    "contraction_residuals",
    "phase_gradient",
    "wave_field",
    "eikonal_residual",
    "dispersion_check",
    "transport_directions",
]


@dataclass(frozen=True)
class CharacteristicVector:
    """``V = V0 d_0 + V . grad``, normalised to V0 = 1."""

    V0: float
    V: np.ndarray

    def as_four_vector(self) -> np.ndarray:
        return np.concatenate(([self.V0], self.V))


def characteristic_vector(f: EMFieldSample, m: Medium = VACUUM, tol: float = 1e-9) -> Optional[CharacteristicVector]:
    """Solve ``i_V omega_f = i_V omega_f* = 0``.

    Returns None unless the field is null: ``|E.B| <= tol |E||B|`` and
    ``|B^2 - eta E^2| <= tol max(B^2, eta E^2)``. Then ``V/V0 = Y/(c w)``.
    """
    E, B = f.E, f.B
    e2, b2 = E @ E, B @ B
    if e2 == 0 and b2 == 0:
        raise DegenerateFieldError("E = B = 0: the characteristic bundle is all of TR^4")
    if abs(E @ B) > tol * np.sqrt(e2 * b2):
        return None
    if abs(b2 - m.eta * e2) > tol * max(b2, m.eta * e2):
        return None
    # Y/(c w) with c = 1; c cancels in the ratio
    V = poynting_vector(f, m, 1.0) / energy_density(f, m)
    return CharacteristicVector(1.0, V)


def contraction_residuals(V: CharacteristicVector, f: EMFieldSample, m: Medium = VACUUM) -> tuple[float, float]:
    """Max-norm of ``i_V omega_f`` and ``i_V omega_f*``."""
    v = V.as_four_vector()
    a = interior_product(v, omega_f(f))
    b = interior_product(v, omega_f_star(f, m))
    return float(np.max(np.abs(a))), float(np.max(np.abs(b)))


Polarization = Union[Callable[[np.ndarray], np.ndarray], np.ndarray, tuple, list]


@dataclass
class WaveData:
    """Phase sampler and polarization (constant vector or sampler)."""

    phi: Callable[[np.ndarray], float]
    polarization: Polarization

    def P(self, x) -> np.ndarray:
        if callable(self.polarization):
            return np.asarray(self.polarization(x), dtype=float)
        return np.asarray(self.polarization, dtype=float)


def phase_gradient(phi, x, cfg: StencilConfig = StencilConfig()) -> tuple[float, np.ndarray]:
    """``k0 = -d_0 phi`` and ``k = grad phi`` by central differences."""
    d = central_partials(lambda y: np.array(phi(y)), x, cfg.h)
    return float(-d[0]), np.array(d[1:], dtype=float)


def wave_field(w: WaveData, x, cfg: StencilConfig = StencilConfig()) -> EMFieldSample:
    """``E = k0 P``, ``B = k x P``."""
    x = as_event(x)
    k0, k = phase_gradient(w.phi, x, cfg)
    P = w.P(x)
    return EMFieldSample(k0 * P, np.cross(k, P))


def eikonal_residual(phi, m: Medium = VACUUM, x=None, cfg: StencilConfig = StencilConfig()) -> float:
    """``|grad phi|^2 - eta (d_0 phi)^2``."""
    k0, k = phase_gradient(phi, x, cfg)
    return float(k @ k - m.eta * k0**2)


def dispersion_check(
    w: WaveData, m: Medium = VACUUM, x=None, cfg: StencilConfig = StencilConfig(), tol: float = 1e-6
) -> tuple[float, float]:
    """Residuals ``(V0 k0 - V.k, k^2 - eta k0^2)`` for the wave-ansatz field at x.

    ``tol`` is the null-field tolerance handed to :func:`characteristic_vector`;
    it must absorb the O(h^2) error of the differenced phase.
    """
    x = as_event(x)
    k0, k = phase_gradient(w.phi, x, cfg)
    k_res = float(k @ k - m.eta * k0**2)
    f = EMFieldSample(k0 * w.P(x), np.cross(k, w.P(x)))
    try:
        V = characteristic_vector(f, m, tol)
    except DegenerateFieldError:
        V = None
    if V is None:
        raise NoCharacteristicError("wave field is not null at this event", k_residual=k_res)
    return float(V.V0 * k0 - V.V @ k), k_res


def transport_directions(f: EMFieldSample, m: Medium, k0: float, k) -> tuple[np.ndarray, np.ndarray]:
    """Energy-flux velocity ``V/V0`` and wave-vector velocity ``k/(eta k0)``.

    The two agree for a null wave-ansatz field; they are returned side by side
    for comparing V-based and k-based transport.
    """
    V = characteristic_vector(f, m, tol=1e-6)
    if V is None:
        raise NoCharacteristicError("field is not null")
    return V.V / V.V0, np.asarray(k, dtype=float) / (m.eta * k0)
