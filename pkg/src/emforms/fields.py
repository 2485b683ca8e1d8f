"""Field 2-forms, their dual, and Maxwell / Poynting residuals.

Units are Gaussian-style with an explicit ``c``. ``omega_f`` carries E on
row 0 and -B.dS in the spatial block; ``omega_f_star`` carries B on row 0 and
eta*E.dS in the spatial block.

Residual slot mapping (all computed by central differences at step h):

* :func:`maxwell_residual_first` returns ``-d(omega_f)``:
  ``s = div B``, ``t = curl E + d_0 B``.
* :func:`maxwell_residual_second` returns ``d(omega_f*) - mu_r J``:
  ``s = eta div E - mu_r rho``, ``t = eta d_0 E - curl B + (mu_r/c) j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from .errors import MissingPotentialError
from .geometry import (
    StencilConfig,
    ThreeForm,
    as_event,
    central_partials,
    det_2form,
    exterior_derivative_2form,
    pfaffian,
    wedge_22,
)

__all__ = [
    "EMFieldSample",
    "PotentialSample",
    "SourceSample",
    "Medium",
    "EMField",
    "VACUUM",
    "omega_f",
    "omega_f_star",
    "omega_f_from_potentials",
    "current_3form",
    "maxwell_residual_first",
    "maxwell_residual_second",
    "poynting_balance",
    "energy_density",
    "poynting_vector",
    "field_invariants",
    "FieldInvariants",
    "dual_field",
    "derived_fields",
]


def _vec3(v, name: str) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    if a.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class EMFieldSample:
    E: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "E", _vec3(self.E, "E"))
        object.__setattr__(self, "B", _vec3(self.B, "B"))


@dataclass(frozen=True)
class PotentialSample:
    """Vector potential A and scalar potential V; A_0 = -V."""

    A: np.ndarray
    V: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "A", _vec3(self.A, "A"))
        object.__setattr__(self, "V", float(self.V))

    def four_potential(self) -> np.ndarray:
        return np.concatenate(([-self.V], self.A))


@dataclass(frozen=True)
class SourceSample:
    rho: float = 0.0
    j: np.ndarray = None  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "rho", float(self.rho))
        j = np.zeros(3) if self.j is None else self.j
        object.__setattr__(self, "j", _vec3(j, "j"))


@dataclass(frozen=True)
class Medium:
    """Homogeneous medium; ``eta = eps_r * mu_r`` and sqrt(eta) is the index."""

    eps_r: float = 1.0
    mu_r: float = 1.0

    def __post_init__(self):
        for name in ("eps_r", "mu_r"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")

    @property
    def eta(self) -> float:
        return self.eps_r * self.mu_r

    @classmethod
    def from_eta(cls, eta: float) -> "Medium":
        """Non-magnetic medium (mu_r = 1) with the given eta."""
        return cls(eps_r=eta, mu_r=1.0)


VACUUM = Medium()

FieldSampler = Callable[[np.ndarray], EMFieldSample]
PotentialSampler = Callable[[np.ndarray], PotentialSample]
SourceSampler = Callable[[np.ndarray], SourceSample]


@dataclass
class EMField:
    """Field sampler over space-time, optionally backed by potentials."""

    sampler: FieldSampler
    potential: Optional[PotentialSampler] = None

    def __call__(self, x) -> EMFieldSample:
        return self.sampler(as_event(x))


def omega_f(f: EMFieldSample) -> np.ndarray:
    E, B = f.E, f.B
    return np.array(
        [
            [0.0, E[0], E[1], E[2]],
            [-E[0], 0.0, -B[2], B[1]],
            [-E[1], B[2], 0.0, -B[0]],
            [-E[2], -B[1], B[0], 0.0],
        ]
    )


def omega_f_star(f: EMFieldSample, m: Medium = VACUUM) -> np.ndarray:
    B, eE = f.B, m.eta * f.E
    return np.array(
        [
            [0.0, B[0], B[1], B[2]],
            [-B[0], 0.0, eE[2], -eE[1]],
            [-B[1], -eE[2], 0.0, eE[0]],
            [-B[2], eE[1], -eE[0], 0.0],
        ]
    )


def omega_f_from_potentials(field: EMField, x, cfg: StencilConfig = StencilConfig()) -> np.ndarray:
    """``[omega_f]_{mu nu} = -(d_mu A_nu - d_nu A_mu)`` by central differences."""
    if field.potential is None:
        raise MissingPotentialError("field has no potential sampler")
    # dA[mu, nu] = d_mu A_nu
    dA = central_partials(lambda y: field.potential(y).four_potential(), x, cfg.h)
    return -(dA - dA.T)


def derived_fields(field: EMField, x, cfg: StencilConfig = StencilConfig()) -> EMFieldSample:
    """E = -d_0 A - grad V and B = curl A from the potential sampler."""
    w = omega_f_from_potentials(field, x, cfg)
    return EMFieldSample(w[0, 1:], np.array([-w[2, 3], w[1, 3], -w[1, 2]]))


def current_3form(s: SourceSample, c: float = 1.0) -> ThreeForm:
    """``J = rho dV - (1/c) j . dq0^dS``."""
    if c <= 0:
        raise ValueError("c must be positive")
    return ThreeForm(s.rho, -s.j / c)


def _zero_source(_x) -> SourceSample:
    return SourceSample()


def maxwell_residual_first(field: EMField, x, cfg: StencilConfig = StencilConfig()) -> ThreeForm:
    """``-d(omega_f)``; slots are (div B, curl E + d_0 B)."""
    return -exterior_derivative_2form(lambda y: omega_f(field(y)), x, cfg)


def maxwell_residual_second(
    field: EMField,
    m: Medium = VACUUM,
    src: Optional[SourceSampler] = None,
    x=None,
    cfg: StencilConfig = StencilConfig(),
    c: float = 1.0,
) -> ThreeForm:
    """``d(omega_f*) - mu_r J``.

    The s-slot equals ``mu_r (eps_r div E - rho)``; the t-slots equal
    ``-(curl B - (mu_r/c)(j + eps_r dE/dt))``.
    """
    src = src or _zero_source
    x = as_event(x)
    d = exterior_derivative_2form(lambda y: omega_f_star(field(y), m), x, cfg)
    return d - m.mu_r * current_3form(src(x), c)


def energy_density(f: EMFieldSample, m: Medium = VACUUM) -> float:
    return 0.5 * (m.eps_r * f.E @ f.E + f.B @ f.B / m.mu_r)


def poynting_vector(f: EMFieldSample, m: Medium = VACUUM, c: float = 1.0) -> np.ndarray:
    return c * np.cross(f.E, f.B) / m.mu_r


def poynting_balance(
    field: EMField,
    m: Medium = VACUUM,
    src: Optional[SourceSampler] = None,
    x=None,
    cfg: StencilConfig = StencilConfig(),
    c: float = 1.0,
) -> float:
    """``d_t w + div Y + E . j`` with d_t = c d_0."""
    src = src or _zero_source
    x = as_event(x)

    def wy(y):
        f = field(y)
        return np.concatenate(([energy_density(f, m)], poynting_vector(f, m, c)))

    d = central_partials(wy, x, cfg.h)
    here = field(x)
    return float(c * d[0, 0] + d[1, 1] + d[2, 2] + d[3, 3] + here.E @ src(x).j)


class FieldInvariants(NamedTuple):
    e_dot_b: float
    wedge: float


def field_invariants(f: EMFieldSample, m: Medium = VACUUM) -> FieldInvariants:
    """Pseudoscalar E.B and scalar eta E^2 - B^2 read off the 2-forms.

    ``det(omega_f)`` only fixes ``(E.B)^2``; the sign comes from the Pfaffian,
    ``Pf(omega_f) = -E.B``. The scalar is ``wedge_22(omega_f*, omega_f)``.
    """
    w = omega_f(f)
    e_dot_b = -pfaffian(w)
    magnitude = np.sqrt(max(det_2form(w), 0.0))
    if not np.isclose(abs(e_dot_b), magnitude, rtol=1e-8, atol=1e-12 * (1 + magnitude)):
        raise ArithmeticError("Pfaffian and determinant disagree")  # pragma: no cover
    return FieldInvariants(e_dot_b, wedge_22(omega_f_star(f, m), w))


def dual_field(field: EMField) -> EMField:
    """The field (E, B) -> (B, -E)."""

    def sampler(x):
        f = field(x)
        return EMFieldSample(f.B, -f.E)

    return EMField(sampler)
