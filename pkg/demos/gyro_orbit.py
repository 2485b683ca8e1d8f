"""A charge in a uniform magnetic field traces a circle.

Integrates the gyro scenario for one full turn and compares the orbit
radius with the closed form ``|p_perp| c / |q_e B|``. The drift of the
monitored Hamiltonian is printed alongside.

    python demos/gyro_orbit.py
"""

from __future__ import annotations

import numpy as np

from emforms import scenarios
from emforms.dynamics import IntegratorConfig, charged_rhs, gyro_center, integrate, lab_frame

sc = scenarios.build(scenarios.load("gyro"))
state, charges = sc.particles[0]
B0 = sc.uniform_field.B[2]
cfg = IntegratorConfig(du=sc.spec.settings.du, steps=sc.spec.settings.steps)

traj = integrate(state, charged_rhs(sc.field, charges, sc.c), cfg, c=sc.c)
lab = lab_frame(traj)

center = gyro_center(state, B0, charges.q_e, sc.c)
radii = np.linalg.norm(lab.q[:, :2] - center, axis=1)
expected = np.linalg.norm(state.p[1:3]) * sc.c / abs(charges.q_e * B0)

print(f"guiding centre        {center}")
print(f"expected radius       {expected:.12f}")
print(f"radius range          [{radii.min():.12f}, {radii.max():.12f}]")
print(f"lab time for one turn {lab.t[-1]:.6f}")
print(f"closure |q(end)-q(0)| {np.linalg.norm(lab.q[-1] - lab.q[0]):.3e}")
print(f"Hamiltonian drift     {traj.hamiltonian_drift():.3e}")
print(f"energy change         {abs(lab.energy[-1] - lab.energy[0]):.3e}")
