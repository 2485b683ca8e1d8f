"""Resolve a :class:`ScenarioSpec` into samplers and initial states."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .. import analytic
from ..dynamics import ExtendedState, ParticleCharges
from ..fields import EMField, EMFieldSample, Medium, SourceSample
from ..photon_flow import Boundary, Grid, IndexField, PhotonGridState, RayState
from .schema import (
    CoulombSpec,
    MonopoleBSpec,
    ParabolicIndex,
    PlaneWaveSpec,
    PotentialSpec,
    RampIndex,
    ScenarioSpec,
    TableFieldSpec,
    UniformFieldSpec,
    UniformIndex,
    parse,
)

__all__ = ["Scenario", "build", "load", "catalog_names", "EXACT_FIELD_TYPES"]

EXACT_FIELD_TYPES = {"uniform", "plane_wave", "coulomb", "monopole_B", "from_potentials"}


@dataclass
class Scenario:
    spec: ScenarioSpec
    field: EMField
    medium: Medium
    source: Optional[Callable[[np.ndarray], SourceSample]]
    particles: list
    rays: list
    index: Optional[IndexField]
    grid_state: Optional[PhotonGridState]
    probes: np.ndarray
    uniform_field: Optional[EMFieldSample] = None
    extras: dict = field(default_factory=dict)

    @property
    def c(self) -> float:
        return self.spec.constants.c

    @property
    def exact(self) -> bool:
        """Whether the field is an exact source-free (or point-source) solution."""
        return self.spec.field.type in EXACT_FIELD_TYPES

    def monopole_strength(self) -> Optional[float]:
        """``a`` for the flux checks: explicit, or from a monopole / Coulomb source.

        ``monopole_B``: ``a = q_e mu_r q_m / (4 pi h c)`` with q_e from the first
        particle. ``coulomb``: ``a = mu_r q_e' / (4 pi e)``.
        """
        s = self.spec
        if s.monopole is not None:
            return s.monopole.a
        k = s.constants
        if isinstance(s.field, MonopoleBSpec) and s.particles:
            return s.particles[0].q_e * s.medium.mu_r * s.field.q_m / (4 * np.pi * k.h * k.c)
        if isinstance(s.field, CoulombSpec):
            return s.medium.mu_r * s.field.q_e / (4 * np.pi * k.e)
        return None


def _field(spec: ScenarioSpec, medium: Medium) -> tuple[EMField, Optional[EMFieldSample]]:
    f = spec.field
    if isinstance(f, UniformFieldSpec):
        return analytic.uniform_field(f.E, f.B), EMFieldSample(f.E, f.B)
    if isinstance(f, PlaneWaveSpec):
        return analytic.plane_wave(f.amplitude, f.k, f.polarization, medium, f.phase0), None
    if isinstance(f, CoulombSpec):
        return analytic.coulomb_field(f.q_e, medium.eps_r, f.center), None
    if isinstance(f, MonopoleBSpec):
        return analytic.monopole_field(f.q_m, medium.mu_r, f.center), None
    if isinstance(f, PotentialSpec):
        if f.potential == "polynomial":
            seed = spec.seed if f.seed is None else f.seed
            pot = analytic.random_polynomial_potential(seed, f.degree, f.scale)
        else:
            exps = np.array([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
            coeffs = np.zeros((3, 4))
            if f.potential == "uniform_electric":
                # A_0 = -V = E0 . q
                coeffs[:, 0] = f.E0
            else:
                # A = B0 x q / 2: A_nu = sum_i (B0 x e_i)_nu q_i / 2
                for i in range(3):
                    coeffs[i, 1:] = 0.5 * np.cross(f.B0, np.eye(3)[i])
            pot = analytic.PolynomialPotential(exps, coeffs)
        return analytic.potential_field(pot), None
    if isinstance(f, TableFieldSpec):
        coords = np.asarray(f.coords)
        E = np.asarray(f.E)
        B = np.asarray(f.B)

        def sampler(x):
            s = x[f.axis]
            return EMFieldSample(
                [np.interp(s, coords, E[:, i]) for i in range(3)],
                [np.interp(s, coords, B[:, i]) for i in range(3)],
            )

        return EMField(sampler), None
    raise TypeError(f"unhandled field spec {type(f).__name__}")  # pragma: no cover


def _index(spec) -> Optional[IndexField]:
    if spec is None:
        return None
    if isinstance(spec, UniformIndex):
        return IndexField.uniform(spec.eta)
    if isinstance(spec, RampIndex):
        return IndexField.planar_ramp(spec.eta1, spec.eta2, spec.axis, spec.center, spec.width)
    if isinstance(spec, ParabolicIndex):
        return IndexField.parabolic(spec.n0, spec.g, spec.transverse)
    raise TypeError(type(spec).__name__)  # pragma: no cover


def _grid_state(spec: ScenarioSpec) -> Optional[PhotonGridState]:
    g = spec.grid
    if g is None:
        return None
    spacing = [L / n for L, n in zip(g.extent, g.shape)]
    grid = Grid(tuple(g.shape), tuple(spacing), g.origin and tuple(g.origin), g.boundary and tuple(g.boundary), g.axes and tuple(g.axes))
    mesh = np.meshgrid(*[grid.centers(k) for k in range(grid.ndim)], indexing="ij")
    if g.density.profile == "uniform":
        n = np.full(grid.shape, g.density.amplitude)
    else:
        r2 = sum((m - c0) ** 2 for m, c0 in zip(mesh, g.density.center))
        n = g.density.amplitude * np.exp(-r2 / g.density.width**2)
    phi = sum(k * m for k, m in zip(g.phase_k, mesh))
    jump = tuple(
        k * L if b is Boundary.PERIODIC else 0.0
        for k, L, b in zip(g.phase_k, grid.extent, grid.boundary)
    )
    return PhotonGridState(grid, n, phi, jump)


def build(spec: ScenarioSpec) -> Scenario:
    medium = Medium(spec.medium.eps_r, spec.medium.mu_r)
    field_, uniform = _field(spec, medium)
    source = None
    if spec.source is not None:
        sample = SourceSample(spec.source.rho, spec.source.j)
        source = lambda x: sample  # noqa: E731
    c = spec.constants.c
    particles = []
    for p in spec.particles:
        if p.mass is not None:
            state = ExtendedState.massive(p.q, p.p, p.mass, c)
        else:
            state = ExtendedState(p.q, [p.p0] + list(p.p))
        particles.append((state, ParticleCharges(p.q_e, p.q_m)))
    index = _index(spec.index)
    rays = []
    for r in spec.rays:
        idx = index or IndexField.uniform(medium.eta)
        rays.append(RayState.launch(r.q, r.direction, idx, r.h, c))
    pr = spec.probes
    if pr.points is not None:
        probes = np.asarray(pr.points, dtype=float)
    else:
        rng = np.random.default_rng(spec.seed)
        probes = rng.uniform(pr.lo, pr.hi, size=(pr.count, 4))
    return Scenario(spec, field_, medium, source, particles, rays, index, _grid_state(spec), probes, uniform)


_CATALOG = "catalog"


def catalog_names() -> list[str]:
    root = resources.files(__package__) / _CATALOG
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".yaml"))


def load(name_or_path: str) -> ScenarioSpec:
    """Parse a scenario file, or a catalog entry by bare name."""
    path = Path(name_or_path)
    if path.is_file():
        return parse(path.read_text())
    entry = resources.files(__package__) / _CATALOG / f"{name_or_path}.yaml"
    if entry.is_file():
        return parse(entry.read_text())
    raise FileNotFoundError(f"no scenario file or catalog entry named {name_or_path!r}")
