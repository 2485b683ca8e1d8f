"""Scenario documents: schema, YAML parsing and serialization.

The grammar is documented in docs/scenario_format.md. Unknown keys are
rejected at every level; ``schema_version`` must be 1.
"""

from __future__ import annotations

from typing import Annotated, List, Literal, Optional, Union

import pydantic
import yaml
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import ScenarioParseError, ScenarioValidationError

__all__ = [
    "SCHEMA_VERSION",
    "ScenarioSpec",
    "parse",
    "serialize",
]

SCHEMA_VERSION = 1

Vec3 = Annotated[List[float], Field(min_length=3, max_length=3)]
Vec4 = Annotated[List[float], Field(min_length=4, max_length=4)]
Positive = Annotated[float, Field(gt=0)]


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)


class Constants(_Model):
    c: Positive = 1.0
    hbar: Positive = 1.0
    h: Positive = 1.0
    e: Positive = 1.0


class MediumSpec(_Model):
    eps_r: Positive = 1.0
    mu_r: Positive = 1.0


class UniformFieldSpec(_Model):
    type: Literal["uniform"] = "uniform"
    E: Vec3 = [0.0, 0.0, 0.0]
    B: Vec3 = [0.0, 0.0, 0.0]


class PlaneWaveSpec(_Model):
    type: Literal["plane_wave"] = "plane_wave"
    amplitude: float = 1.0
    k: Vec3 = [0.0, 0.0, 1.0]
    polarization: Vec3 = [1.0, 0.0, 0.0]
    phase0: float = 0.0


class CoulombSpec(_Model):
    type: Literal["coulomb"] = "coulomb"
    q_e: float
    center: Vec3 = [0.0, 0.0, 0.0]


class MonopoleBSpec(_Model):
    type: Literal["monopole_B"] = "monopole_B"
    q_m: float
    center: Vec3 = [0.0, 0.0, 0.0]


class PotentialSpec(_Model):
    """Named potentials: ``polynomial`` (seeded random), ``uniform_electric``
    (V = -E0.q) and ``uniform_magnetic`` (A = B0 x q / 2)."""

    type: Literal["from_potentials"] = "from_potentials"
    potential: Literal["polynomial", "uniform_electric", "uniform_magnetic"]
    degree: Annotated[int, Field(ge=1, le=6)] = 4
    scale: float = 1.0
    seed: Optional[int] = None
    E0: Vec3 = [0.0, 0.0, 0.0]
    B0: Vec3 = [0.0, 0.0, 0.0]


class TableFieldSpec(_Model):
    """E and B tabulated along one space-time coordinate, linearly interpolated."""

    type: Literal["table"] = "table"
    axis: Annotated[int, Field(ge=0, le=3)]
    coords: List[float]
    E: List[Vec3]
    B: List[Vec3]

    @model_validator(mode="after")
    def _shape(self):
        if len(self.coords) < 2:
            raise ValueError("table needs at least two rows")
        if any(b <= a for a, b in zip(self.coords, self.coords[1:])):
            raise ValueError("table coords must be strictly increasing")
        if not len(self.E) == len(self.B) == len(self.coords):
            raise ValueError("E, B and coords must have equal length")
        return self


FieldSpec = Annotated[
    Union[UniformFieldSpec, PlaneWaveSpec, CoulombSpec, MonopoleBSpec, PotentialSpec, TableFieldSpec],
    Field(discriminator="type"),
]


class UniformIndex(_Model):
    kind: Literal["uniform"] = "uniform"
    eta: Positive = 1.0


class RampIndex(_Model):
    kind: Literal["ramp"] = "ramp"
    eta1: Positive
    eta2: Positive
    axis: Annotated[int, Field(ge=0, le=2)] = 2
    center: float = 0.0
    width: Positive = 0.1


class ParabolicIndex(_Model):
    kind: Literal["parabolic"] = "parabolic"
    n0: Positive
    g: Positive
    transverse: List[Annotated[int, Field(ge=0, le=2)]] = [0, 1]


IndexSpec = Annotated[Union[UniformIndex, RampIndex, ParabolicIndex], Field(discriminator="kind")]


class SourceSpec(_Model):
    """Uniform charge and current densities."""

    rho: float = 0.0
    j: Vec3 = [0.0, 0.0, 0.0]


class ParticleSpec(_Model):
    q: Vec4 = [0.0, 0.0, 0.0, 0.0]
    p: Vec3
    mass: Optional[Positive] = None
    p0: Optional[float] = None
    q_e: float = 0.0
    q_m: float = 0.0

    @model_validator(mode="after")
    def _shell(self):
        if (self.mass is None) == (self.p0 is None):
            raise ValueError("give exactly one of 'mass' or 'p0'")
        if self.p0 is not None and self.p0**2 - sum(v * v for v in self.p) <= 0:
            raise ValueError("momentum (p0, p) must be timelike")
        return self


class RaySpec(_Model):
    q: Vec3
    direction: Vec3
    h: Positive = 1.0


class DensitySpec(_Model):
    profile: Literal["uniform", "gaussian"] = "uniform"
    amplitude: Annotated[float, Field(ge=0)] = 1.0
    center: List[float] = []
    width: Positive = 0.1


class GridSpec(_Model):
    shape: Annotated[List[Annotated[int, Field(ge=3)]], Field(min_length=1, max_length=3)]
    extent: List[Positive]
    origin: Optional[List[float]] = None
    boundary: Optional[List[Literal["periodic", "outflow"]]] = None
    axes: Optional[List[Annotated[int, Field(ge=0, le=2)]]] = None
    density: DensitySpec = DensitySpec()
    phase_k: List[float]

    @model_validator(mode="after")
    def _dims(self):
        nd = len(self.shape)
        for name in ("extent", "origin", "boundary", "axes", "phase_k"):
            v = getattr(self, name)
            if v is not None and len(v) != nd:
                raise ValueError(f"'{name}' needs {nd} entries")
        if self.density.profile == "gaussian" and len(self.density.center) != nd:
            raise ValueError(f"gaussian density center needs {nd} entries")
        return self


class ProbeSpec(_Model):
    points: Optional[List[Vec4]] = None
    count: Annotated[int, Field(ge=1)] = 8
    lo: Vec4 = [-1.0, -1.0, -1.0, -1.0]
    hi: Vec4 = [1.0, 1.0, 1.0, 1.0]


class MonopoleSpec(_Model):
    a: float


class SettingsSpec(_Model):
    """Per-scenario defaults for CLI numerics; command-line flags override."""

    h: Optional[Positive] = None
    du: Optional[Positive] = None
    steps: Optional[Annotated[int, Field(ge=1)]] = None
    tol: Optional[Positive] = None
    t_end: Optional[Positive] = None
    dt: Optional[Positive] = None
    trials: Optional[Annotated[int, Field(ge=1)]] = None


class ScenarioSpec(_Model):
    schema_version: Literal[1] = SCHEMA_VERSION
    name: str
    description: str = ""
    seed: int = 0
    constants: Constants = Constants()
    field: FieldSpec = UniformFieldSpec()
    medium: MediumSpec = MediumSpec()
    index: Optional[IndexSpec] = None
    source: Optional[SourceSpec] = None
    particles: List[ParticleSpec] = []
    rays: List[RaySpec] = []
    grid: Optional[GridSpec] = None
    probes: ProbeSpec = ProbeSpec()
    monopole: Optional[MonopoleSpec] = None
    settings: SettingsSpec = SettingsSpec()


def _loc(loc) -> str:
    return ".".join(str(p) for p in loc if not (isinstance(p, str) and p in _UNION_TAGS))


_UNION_TAGS = {
    "uniform", "plane_wave", "coulomb", "monopole_B", "from_potentials", "table", "ramp", "parabolic",
}


def validate(data) -> ScenarioSpec:
    if not isinstance(data, dict):
        raise ScenarioValidationError("scenario document must be a mapping", "")
    try:
        return ScenarioSpec.model_validate(data)
    except pydantic.ValidationError as exc:
        err = exc.errors()[0]
        raise ScenarioValidationError(err["msg"], _loc(err["loc"])) from exc


def parse(text: str) -> ScenarioSpec:
    try:
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        raise ScenarioParseError(str(exc.problem), mark.line + 1, mark.column + 1) from exc
    except yaml.YAMLError as exc:
        raise ScenarioParseError(str(exc)) from exc
    return validate(data)


def serialize(spec: ScenarioSpec) -> str:
    return yaml.safe_dump(spec.model_dump(mode="json", exclude_none=True), sort_keys=False)
