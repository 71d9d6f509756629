"""Orthonormality of the dyadic dilation/translation system.

Starting from the step function psi = chi_[0,1/2) - chi_[1/2,1), the family
2^(j/2) psi(2^j x - k) is orthonormal; the Gram matrix over a finite block
of scales and shifts is the identity to machine precision, entirely through
closed-form integrals of indicator products.
"""

import numpy as np

from psokit import HaarSystem, haar_gram, inner, norm
from psokit.matops import opnorm

psi = HaarSystem.mother()
print("mother function: terms =", [(t.coeff, t.lo, t.hi) for t in psi.terms])
print("  norm =", norm(psi))

system = HaarSystem(j_range=(-3, 3), k_range=(-8, 8))
labels = system.labels()
print(f"\nblock j in [-3, 3], k in [-8, 8]: {len(labels)} elements")

gram = haar_gram(system)
print("  ||gram - identity|| =", opnorm(gram - np.eye(len(labels))))

print("\nindividual cancellations behind the identity:")
pairs = [((0, 0), (0, 1)), ((0, 0), (1, 0)), ((2, 3), (-1, 0)), ((1, 1), (1, 1))]
for (j1, k1), (j2, k2) in pairs:
    val = inner(system.element(j1, k1), system.element(j2, k2))
    print(f"  <psi_({j1},{k1}), psi_({j2},{k2})> = {val}")

e = system.element(-2, 3)
lo, hi = e.support()
print(f"\nelement (j=-2, k=3) lives on [{lo}, {hi}] with height {e.terms[0].coeff:.4f}")
