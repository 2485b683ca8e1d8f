"""Electromagnetic fields as 2-forms on space-time.

Subpackages and modules:

- ``geometry``: 2-form algebra and finite-difference exterior derivatives
- ``fields``: field 2-forms, duals, Maxwell and Poynting residuals
- ``analytic``: closed-form fields and polynomial potentials
- ``dynamics``: extended phase-space particle dynamics
- ``characteristic``: characteristic vectors and the eikonal
- ``photon_flow``: photon grid transport and ray tracing
- ``topology``: monopole potentials, flux and charge quantization
- ``lorentz``: proper Lorentz transformations of 2-forms
- ``scenarios``: scenario documents and the shipped catalog
- ``cli``: the ``emforms`` command
"""

from .fields import EMField, EMFieldSample, Medium, SourceSample, omega_f, omega_f_star
from .geometry import StencilConfig, ThreeForm

__version__ = "0.1.0"

__all__ = [
    "EMField",
    "EMFieldSample",
    "Medium",
    "SourceSample",
    "StencilConfig",
    "ThreeForm",
    "omega_f",
    "omega_f_star",
    "__version__",
]
