"""
Geometric observables and density matrices
==========================================

An observable assigns a subspace to each Borel set; in finite dimension it
is a finite list of atoms.  A density matrix is a list of weights on
orthogonal subspaces whose weighted dimension count sums to one.
"""

import numpy as np

from projprob import Event, born, state_point
from projprob.observables import (
    BorelQuery,
    density_to_operator,
    evaluate,
    observable_from_hermitian,
    operator_to_density,
    prob_density,
    support,
)
from projprob.events import projective_dim

# an observable with a degenerate eigenvalue
h = np.diag([1.0, 1.0, -2.0])
obs = observable_from_hermitian(h)
print("support:", support(obs))
s = evaluate(obs, BorelQuery.closed(0, 5))
print("subspace for [0, 5] has projective dim", projective_dim(s))
print("subspace for {-2} or (3, inf):",
      evaluate(obs, BorelQuery.points(-2) | BorelQuery(intervals=((3, np.inf, False, False),))))

# a mixed density operator and its geometric form
m = np.diag([0.5, 0.25, 0.25]).astype(complex)
rho = operator_to_density(m)
for a, sub in rho.atoms:
    print(f"weight {a:.3f} on a subspace of projective dim {projective_dim(sub)}")
print("trace identity:", rho.trace())
print("round trip error:", np.max(np.abs(density_to_operator(rho).matrix - m)))

# a pure state gives back the Born rule
psi = state_point([1, 1j, 0])
pure = operator_to_density(np.outer(psi.vector, psi.vector.conj()))
e = Event.ray([1, 0, 0])
print(f"P_rho(E) = {prob_density(pure, e):.12f}, born = {born(psi, e):.12f}")
