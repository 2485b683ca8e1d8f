"""Lorentz invariance of the field 2-forms.

Applies random proper Lorentz transformations to random fields. Both
scalar invariants and the vacuum dual form are unchanged. Inside a medium
the dual form is not invariant, as the stored counterexample shows.

    python demos/lorentz_invariance.py
"""

from __future__ import annotations

import numpy as np

from emforms.fields import EMFieldSample
from emforms.lorentz import (
    DUAL_COUNTEREXAMPLE,
    boost,
    dual_invariance_residual,
    random_proper_lorentz,
    scalar_invariants_check,
)

rng = np.random.default_rng(1)
worst = np.zeros(3)
for _ in range(500):
    lam = random_proper_lorentz(rng)
    f = EMFieldSample(rng.standard_normal(3), rng.standard_normal(3))
    d_det, d_wedge = scalar_invariants_check(lam, f)
    worst = np.maximum(worst, [d_det, d_wedge, dual_invariance_residual(lam, f)])

print("worst change over 500 random transformations")
print(f"  |E.B|             {worst[0]:.2e}")
print(f"  E^2 - B^2         {worst[1]:.2e}")
print(f"  dual form, vacuum {worst[2]:.2e}")

ce = DUAL_COUNTEREXAMPLE
lam = boost(ce["beta"])
f = EMFieldSample(ce["E"], ce["B"])
res = dual_invariance_residual(lam, f, ce["eta"])
print(f"\nboost {ce['beta']} on E = {ce['E']} with eta = {ce['eta']}")
print(f"  dual form residual {res:.4f} (stored value {ce['residual']})")
