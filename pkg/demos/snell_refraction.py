"""Ray tracing through a smooth index step recovers Snell's law.

Traces the snell scenario ray across the ramp using the ray Hamiltonian.
It compares the exit angle with ``n1 sin(theta1) = n2 sin(theta2)``.

    python demos/snell_refraction.py
"""

from __future__ import annotations

import numpy as np

from emforms import scenarios
from emforms.dynamics import IntegratorConfig
from emforms.photon_flow import trace_ray

sc = scenarios.build(scenarios.load("snell"))
st = sc.spec.settings
ray = sc.rays[0]
idx = sc.index
path = trace_ray(ray, idx, st.t_end, IntegratorConfig(steps=st.steps), sc.c)


def angle(p):
    return np.arctan2(np.hypot(p[0], p[1]), p[2])


n1, n2 = np.sqrt(sc.spec.index.eta1), np.sqrt(sc.spec.index.eta2)
th1, th2 = angle(path.p[0]), angle(path.p[-1])
predicted = np.arcsin(n1 * np.sin(th1) / n2)

print(f"incidence angle   {np.degrees(th1):.6f} deg")
print(f"exit angle        {np.degrees(th2):.6f} deg")
print(f"Snell prediction  {np.degrees(predicted):.6f} deg")
print(f"relative error    {abs(th2 - predicted) / predicted:.2e}")
print(f"h drift           {path.hamiltonian_drift():.2e}")
print(f"final position    {path.q[-1]}")
