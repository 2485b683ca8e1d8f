"""Exterior algebra on R^4 with coordinates (q0, q1, q2, q3), q0 = c t.

Conventions used throughout the package:

* All indices are subscripted and components are physical; nothing is raised
  or lowered with a metric.
* A 2-form ``w = sum_{mu<nu} w[mu, nu] dq_mu ^ dq_nu`` is stored as its full
  antisymmetric 4x4 coefficient matrix.
* A 3-form is stored as :class:`ThreeForm` ``s dV + t . dq0 ^ dS`` with
  ``dV = dq1^dq2^dq3``, ``dS1 = dq2^dq3``, ``dS2 = -dq1^dq3``,
  ``dS3 = dq1^dq2``.
* The interior product contracts the first slot:
  ``i_V(dq_mu ^ dq_nu) = V_mu dq_nu - V_nu dq_mu``.
* The Levi-Civita symbol has ``eps[0, 1, 2, 3] = +1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NonFiniteError

__all__ = [
    "LEVI_CIVITA_4",
    "StencilConfig",
    "ThreeForm",
    "as_event",
    "two_form",
    "is_antisymmetric",
    "interior_product",
    "wedge_22",
    "pfaffian",
    "det_2form",
    "exterior_derivative_2form",
    "exterior_derivative_3form",
    "central_partials",
]


def _levi_civita(n: int) -> np.ndarray:
    eps = np.zeros((n,) * n)
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
        )
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


LEVI_CIVITA_4 = _levi_civita(4)
LEVI_CIVITA_4.setflags(write=False)


@dataclass(frozen=True)
class StencilConfig:
    """Step of the second-order central-difference stencils."""

    h: float = 1e-3

    def __post_init__(self):
        if not (np.isfinite(self.h) and self.h > 0):
            raise ValueError(f"stencil step must be positive, got {self.h!r}")

    def halved(self) -> "StencilConfig":
        return StencilConfig(self.h / 2)


@dataclass(frozen=True)
class ThreeForm:
    """``s dq1^dq2^dq3 + t . dq0^dS`` at one event."""

    s: float = 0.0
    t: np.ndarray = None  # type: ignore[assignment]

    def __post_init__(self):
        t = np.zeros(3) if self.t is None else np.asarray(self.t, dtype=float)
        if t.shape != (3,):
            raise ValueError(f"t must be a 3-vector, got shape {t.shape}")
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "t", t)

    def as_array(self) -> np.ndarray:
        return np.concatenate(([self.s], self.t))

    def norm(self) -> float:
        """Max-norm over the four slots."""
        return float(np.max(np.abs(self.as_array())))

    def __add__(self, other: "ThreeForm") -> "ThreeForm":
        return ThreeForm(self.s + other.s, self.t + other.t)

    def __sub__(self, other: "ThreeForm") -> "ThreeForm":
        return ThreeForm(self.s - other.s, self.t - other.t)

    def __mul__(self, k: float) -> "ThreeForm":
        return ThreeForm(k * self.s, k * self.t)

    __rmul__ = __mul__

    def __neg__(self) -> "ThreeForm":
        return ThreeForm(-self.s, -self.t)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ThreeForm):
            return NotImplemented
        return bool(np.array_equal(self.as_array(), other.as_array()))

    @classmethod
    def from_components(cls, c: np.ndarray) -> "ThreeForm":
        """Build from the fully antisymmetric coefficient tensor ``c[a, b, c]``."""
        return cls(c[1, 2, 3], np.array([c[0, 2, 3], -c[0, 1, 3], c[0, 1, 2]]))


def as_event(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (4,):
        raise ValueError(f"space-time event must have 4 components, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise NonFiniteError(f"non-finite event {x}")
    return x


def is_antisymmetric(w: np.ndarray, atol: float = 0.0) -> bool:
    w = np.asarray(w)
    return w.shape == (4, 4) and bool(np.all(np.abs(w + w.T) <= atol))


def two_form(m) -> np.ndarray:
    """Validate and return a 4x4 antisymmetric coefficient matrix."""
    w = np.array(m, dtype=float)
    if w.shape != (4, 4):
        raise ValueError(f"2-form matrix must be 4x4, got shape {w.shape}")
    if not is_antisymmetric(w):
        raise ValueError("2-form matrix is not exactly antisymmetric")
    return w


def interior_product(V, w) -> np.ndarray:
    """Components ``a_nu = sum_mu V_mu w[mu, nu]`` of the 1-form ``i_V w``."""
    return np.asarray(V, dtype=float) @ np.asarray(w, dtype=float)


def wedge_22(a, b) -> float:
    """Coefficient of dq0^dq1^dq2^dq3 in ``a ^ b`` for two 2-forms."""
    return 0.25 * float(np.einsum("abmn,ab,mn->", LEVI_CIVITA_4, a, b))


def pfaffian(w) -> float:
    w = np.asarray(w, dtype=float)
    return float(w[0, 1] * w[2, 3] - w[0, 2] * w[1, 3] + w[0, 3] * w[1, 2])


def det_2form(w) -> float:
    # LU route, independent of the Pfaffian; singular input warns but gives 0
    with np.errstate(divide="ignore", invalid="ignore"):
        return float(np.linalg.det(np.asarray(w, dtype=float)))


def _check_finite(value, what: str):
    if not np.all(np.isfinite(value)):
        raise NonFiniteError(f"non-finite {what} sample in stencil")


def central_partials(f: Callable[[np.ndarray], np.ndarray], x, h: float) -> np.ndarray:
    """Return ``d[alpha] = (f(x + h e_alpha) - f(x - h e_alpha)) / 2h`` stacked on axis 0.

    Eight evaluations of ``f``; the output has shape ``(4,) + f(x).shape``.
    """
    x = as_event(x)
    out = []
    for alpha in range(4):
        step = np.zeros(4)
        step[alpha] = h
        fp = np.asarray(f(x + step), dtype=float)
        fm = np.asarray(f(x - step), dtype=float)
        _check_finite(fp, "sampler")
        _check_finite(fm, "sampler")
        out.append((fp - fm) / (2 * h))
    return np.stack(out)


def exterior_derivative_2form(F: Callable, x, cfg: StencilConfig = StencilConfig()) -> ThreeForm:
    """Central-difference ``dF`` for a sampler returning 4x4 coefficient matrices.

    ``(dF)_{abc} = d_a F_bc + d_b F_ca + d_c F_ab``, error O(h^2).
    """
    dF = central_partials(F, x, cfg.h)
    c = dF + np.transpose(dF, (1, 2, 0)) + np.transpose(dF, (2, 0, 1))
    return ThreeForm.from_components(c)


def exterior_derivative_3form(J: Callable, x, cfg: StencilConfig = StencilConfig()) -> float:
    """Coefficient of dq0^dV in ``dJ`` for a sampler returning :class:`ThreeForm`.

    For ``J = s dV + t . dq0^dS`` this is ``d_0 s - div t``; with ``s = rho``
    and ``t = -j/c`` it is the continuity residual ``d_0 rho + div(j)/c``.
    """
    d = central_partials(lambda y: J(y).as_array(), x, cfg.h)
    return float(d[0, 0] - d[1, 1] - d[2, 2] - d[3, 3])
