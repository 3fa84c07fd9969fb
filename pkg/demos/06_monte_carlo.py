"""
Simulating sequential measurements
==================================

Each event is tested as a yes/no measurement with collapse.  The frequency
of the all-yes path converges to the consecutive probability.
"""

import time

import numpy as np

from projprob import consecutive, estimate, sample_trajectory
from projprob.random_objects import random_event, random_point

rng = np.random.default_rng(5)
d = 5
psi = random_point(d, rng)
events = [random_event(d, rng, rank=3) for _ in range(3)]

traj = sample_trajectory(psi, events, np.random.default_rng(0))
print("one trajectory:", traj.path)

start = time.perf_counter()
report = estimate(psi, events, n=200_000, seed=123, workers=4)
print(f"exact     {report.exact:.5f}")
print(f"empirical {report.empirical:.5f} +- {report.std_error:.5f}  (z = {report.z_score():.2f})")
print(f"{report.n_samples} trajectories in {time.perf_counter() - start:.2f} s")
print("path counts:", report.path_counts)

# the result depends only on the seed, not on the worker count
again = estimate(psi, events, n=200_000, seed=123, workers=1)
print("same counts with one worker:", again.path_counts == report.path_counts)
print("check:", np.isclose(report.exact, consecutive(psi, events)))
