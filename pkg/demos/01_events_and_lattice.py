"""
Events as subspaces and the projective lattice
==============================================

Events are closed subspaces of C^d, equivalently the orthogonal projections
onto them.  This script builds a few in C^3 and checks the lattice
operations against the projective dimension count.
"""

import numpy as np

from projprob import Event, join, meet, ortho, projective_dim, subspace_from_vectors

# a plane and a line in C^3, both containing the direction (1, 1, 0)
plane = subspace_from_vectors([[1, 0, 0], [0, 1, 0]])
line = subspace_from_vectors([[1, 1, 0]])
other_plane = subspace_from_vectors([[1, 1, 0], [0, 0, 1]])

print("plane:", plane, "projective dim", projective_dim(plane))
print("line: ", line, "projective dim", projective_dim(line))

# two projective lines in the projective plane always meet in a point
m = meet(plane, other_plane)
j = join(plane, other_plane)
print("meet of the two planes has projective dim", projective_dim(m))
print("join of the two planes has projective dim", projective_dim(j))
print("dim(join) + dim(meet) =", projective_dim(j) + projective_dim(m),
      "  dim(a) + dim(b) =", projective_dim(plane) + projective_dim(other_plane))

# complementation reverses the order and swaps join with meet
lhs = ortho(join(plane, line))
rhs = meet(ortho(plane), ortho(line))
print("De Morgan holds:", lhs.same_as(rhs))

# the event view: a projector, its complement, and its rank
e = Event(plane)
print("projector onto the plane:\n", np.round(e.projector.real, 3))
print("complement rank:", e.complement().rank)
