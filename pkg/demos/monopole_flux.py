"""Magnetic flux through a sphere around a monopole, and charge quantisation.

Compares two quadratures for the total flux ``4 pi a`` and checks the
loop integral of the patch potentials at several latitudes. It ends with
the integer that ties the electric and magnetic charges together.

    python demos/monopole_flux.py
"""

from __future__ import annotations

import numpy as np

from emforms.topology import SphereMesh, dirac_check, flux_integral, loop_integral

a = 1.0
exact = 4 * np.pi * a

print("flux through the unit sphere, error against 4 pi a")
print(f"{'n_theta':>8} {'gauss':>12} {'midpoint':>12}")
for n in (8, 16, 32, 64, 128):
    mesh = SphereMesh(n_theta=n, n_phi=2 * n)
    g = abs(flux_integral(a, mesh, "gauss") - exact)
    m = abs(flux_integral(a, mesh, "midpoint") - exact)
    print(f"{n:>8} {g:>12.3e} {m:>12.3e}")

print("\nloop integral of alpha_N - alpha_S at latitude theta")
for theta in (np.pi / 6, np.pi / 2, 5 * np.pi / 6):
    val = loop_integral(a, theta)
    print(f"  theta = {theta:.4f}  value = {val:.12f}  error = {abs(val - exact):.2e}")

print("\ncharge products q_e q_m / (h c) and their integer")
for q_e, q_m in [(1.0, 1.0), (0.5, 4.0), (1.0, 2.5)]:
    n, dist = dirac_check(q_e, q_m)
    verdict = "quantised" if dist < 1e-12 else "not quantised"
    print(f"  q_e = {q_e}, q_m = {q_m}: n = {n}, distance {dist:.2e} ({verdict})")
