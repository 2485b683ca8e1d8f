"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class EMFormsError(Exception):
    """Base class for every error raised by :mod:`emforms`."""


class NonFiniteError(EMFormsError, ValueError):
    """A sampler returned NaN or Inf inside a finite-difference stencil."""


class MissingPotentialError(EMFormsError):
    """An operation needs the potential sampler of an :class:`EMField`."""


class SpacelikeMomentumError(EMFormsError, ValueError):
    """p0**2 - |p|**2 dropped below zero (or below the photon shell)."""


class StepFailureError(EMFormsError, RuntimeError):
    """The adaptive integrator could not complete the requested span."""


class NonMonotonicTimeError(EMFormsError, ValueError):
    """Lab time q0/c is not strictly increasing along a trajectory."""


class DegenerateFieldError(EMFormsError, ValueError):
    """E = B = 0: every vector is characteristic."""


class NoCharacteristicError(EMFormsError, ValueError):
    """The field at the probe point is not null.

    ``k_residual`` carries k**2 - eta*k0**2, which is still meaningful for a
    non-null field.
    """

    def __init__(self, message: str, k_residual: float | None = None):
        super().__init__(message)
        self.k_residual = k_residual


class CFLViolationError(EMFormsError, ValueError):
    """Time step exceeds the stability bound of the grid schemes."""


class ZeroMomentumError(EMFormsError, ValueError):
    """Ray momentum vanished; the ray direction is undefined."""


class OnStringError(EMFormsError, ValueError):
    """Point lies on the Dirac string of a monopole potential."""


class OriginSingularityError(EMFormsError, ValueError):
    """Point is at (or numerically at) the monopole position."""


class DomainSingularityError(EMFormsError, ValueError):
    """Transition phase evaluated at a pole of tan(theta) or cot(phi)."""


class SuperluminalBoostError(EMFormsError, ValueError):
    """Boost velocity with |beta| >= 1."""


class ScenarioParseError(EMFormsError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class ScenarioValidationError(EMFormsError, ValueError):
    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
