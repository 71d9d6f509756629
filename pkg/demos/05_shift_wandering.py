"""Finite surrogate of the doubly infinite shift.

The twisted cyclic shift wanders for exactly d - 1 steps before the orbit
wraps around, and the overlap of the defect vector with the generating
subspace decays geometrically in d, quantifying how well the finite model
approximates the genuinely wandering infinite one.
"""

import numpy as np

from psokit import ShiftModel, shift_cayley_identity, shift_defect
from psokit.models import (
    shift_orthogonality_defect,
    shift_t_parameter,
    shift_wandering_report,
)

print("wandering profile of the twisted cyclic shift (d = 8)")
model = ShiftModel(d=8)
report = shift_wandering_report(model)
for n, defect in enumerate(report.defect_per_n, start=1):
    marker = "  <- wrap-around" if defect > 1e-10 else ""
    print(f"  n = {n}: ||L* U^n L|| = {defect:.3e}{marker}")

print("\ndefect vectors by resolvent solve and by geometric series")
z = 2j
print(f"  t(z={z}) = {shift_t_parameter(z)} (|t| = 1/3)")
for d in (8, 16):
    m = ShiftModel(d)
    gap = np.linalg.norm(shift_defect(m, z, "direct") - shift_defect(m, z, "series"))
    print(f"  d = {d}: methods agree to {gap:.2e}")

print("\ngeometric decay of the finite-size orthogonality defect at z = 2i")
print(f"  {'d':>3} {'defect':>12} {'defect / 3^-(d-1)':>18}")
for d in (10, 16, 22, 28):
    value = shift_orthogonality_defect(ShiftModel(d), z)
    print(f"  {d:>3} {value:12.3e} {value / 3.0 ** (-(d - 1)):18.3f}")

print("\nresolvent identity (A - iI)(U - I)x = 2ix on random vectors")
rng = np.random.default_rng(0)
for d in (8, 32):
    m = ShiftModel(d)
    worst = max(
        shift_cayley_identity(m, rng.normal(size=d) + 1j * rng.normal(size=d))
        for _ in range(5))
    print(f"  d = {d}: worst residual {worst:.2e}")
