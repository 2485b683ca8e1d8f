"""Scenario catalog: config documents resolved into fields, media and initial states."""

from .build import EXACT_FIELD_TYPES, Scenario, build, catalog_names, load
from .schema import SCHEMA_VERSION, ScenarioSpec, parse, serialize, validate

__all__ = [
    "SCHEMA_VERSION",
    "EXACT_FIELD_TYPES",
    "Scenario",
    "ScenarioSpec",
    "build",
    "catalog_names",
    "load",
    "parse",
    "serialize",
    "validate",
]
