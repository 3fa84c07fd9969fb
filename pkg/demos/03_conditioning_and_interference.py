"""
Conditioning, collapse and interference
=======================================

Conditioning on an event is the same as measuring again in the collapsed
state.  Splitting an event into orthogonal parts does not split the
probability additively: cross terms appear.
"""

import numpy as np

from projprob import born, collapse, conditional, interference
from projprob.random_objects import random_event, random_orthogonal_events, random_point

rng = np.random.default_rng(11)
d = 6
psi = random_point(d, rng)
given, target = random_event(d, rng, rank=3), random_event(d, rng, rank=2)

print(f"P(target | given)           = {conditional(psi, given, target):.12f}")
print(f"born(collapse(psi), target) = {born(collapse(psi, given), target):.12f}")

# three mutually orthogonal events whose join is tested first
parts = random_orthogonal_events(d, [1, 2, 1], rng)
report = interference(psi, parts, target)
print(f"P(join, then target)  = {report.total:.6f}")
print(f"sum of diagonal terms = {sum(report.diagonal):.6f}")
print(f"sum of cross terms    = {report.cross_sum.real:.6f}")
print(f"defect (should be ~0) = {report.defect():.2e}")
