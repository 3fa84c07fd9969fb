"""
Invariant amplitudes and lower symbols
======================================

The cyclic product of inner products of unit representatives does not
depend on their phases.  Lower symbols E_p(T) = <psi, T psi> determine T.
"""

import numpy as np

from projprob import (
    amplitude,
    amplitude_via_symbol,
    geodesic_distance,
    lower_symbol_sup,
    operator_norm,
    quadratic_form,
    reconstruct_from_quadratic_form,
    state_point,
)
from projprob.random_objects import random_matrix, random_point

# three points on the Bloch sphere of C^2
# p2 is the normalized sum of the chosen representatives of p1 and p3
psi1 = np.array([1, 0])
psi3 = np.array([1j, 1]) / np.sqrt(2)
p1, p2, p3 = state_point(psi1), state_point(psi1 + psi3), state_point(psi3)

a = amplitude([p1, p2, p3])
print("A(p1, p2, p3) =", np.round(a, 12))
print("A(p1, p3, p2) =", np.round(amplitude([p1, p3, p2]), 12), "(the conjugate)")
print("via a symbol  =", np.round(amplitude_via_symbol([p1, p2, p3]), 12))

# multiplying a representative by a phase changes nothing
print("phase-rotated:", np.round(amplitude([np.exp(0.7j) * p1.vector, p2, p3]), 12))
print("Fubini-Study distance p1 to p3:", geodesic_distance(p1, p3), "=", np.pi / 4)

# recover a non-Hermitian operator from its quadratic form
rng = np.random.default_rng(3)
t = random_matrix(4, rng)
back = reconstruct_from_quadratic_form(quadratic_form(t), 4)
print("reconstruction error:", np.max(np.abs(back - t)))
samples = [random_point(4, rng) for _ in range(200)]
print(f"sup |E_p(T)| over samples = {lower_symbol_sup(t, samples):.4f}"
      f" <= ||T|| = {operator_norm(t):.4f}")
