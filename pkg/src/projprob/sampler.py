"""Monte Carlo simulation of sequential yes/no measurements.

Each event ``E`` in a sequence is tested as the two-outcome measurement
``{E, I - E}``: the outcome "occurred" is drawn with probability
``||E psi||^2`` and the state collapses onto the branch that happened.  The
frequency of the all-"occurred" path estimates the consecutive probability
``||E_n ... E_1 psi||^2``.

Randomness comes from explicitly seeded :class:`numpy.random.Generator`
objects; nothing touches global RNG state.  :func:`estimate` splits the
samples into fixed-size batches, batch ``b`` seeded with ``seed + b``, so
the report does not depend on how many workers evaluate the batches.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .events import StatePoint, as_event, as_point, state_point
from .kernel import DEFAULT_TOL, check_same_dim
from .probability import consecutive

__all__ = ["Trajectory", "SampleReport", "sample_trajectory", "estimate", "BATCH_SIZE"]

BATCH_SIZE = 8192


@dataclass(frozen=True)
class Trajectory:
    outcomes: tuple  # one bool per event, True = the event occurred
    final_state: StatePoint

    @property
    def path(self) -> str:
        return "".join("1" if o else "0" for o in self.outcomes)


@dataclass(frozen=True)
class SampleReport:
    """Empirical path frequencies against the exact all-occurred probability.

    ``path_counts`` maps outcome strings such as ``"101"`` (event 1 occurred,
    event 2 did not, event 3 did) to counts.
    """

    n_samples: int
    path_counts: dict = field(hash=False)
    exact: float
    empirical: float
    std_error: float

    def z_score(self) -> float:
        """Deviation in units of ``sqrt(p (1 - p) / n)`` at the exact ``p``."""
        sd = math.sqrt(self.exact * (1 - self.exact) / self.n_samples)
        diff = self.empirical - self.exact
        if sd == 0:
            return 0.0 if diff == 0 else math.inf
        return diff / sd

    def to_dict(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "path_counts": dict(sorted(self.path_counts.items())),
            "exact": self.exact,
            "empirical": self.empirical,
            "std_error": self.std_error,
        }


def _simulate(psi: np.ndarray, projectors: list[np.ndarray], count: int,
              rng: np.random.Generator, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Run ``count`` independent trajectories; returns (outcomes, final states)."""
    d = psi.size
    states = np.tile(psi, (count, 1))
    outcomes = np.empty((count, len(projectors)), dtype=bool)
    eye = np.eye(d)
    for step, p in enumerate(projectors):
        hit = states @ p.T
        prob = np.clip(np.einsum("ij,ij->i", hit.conj(), hit).real, 0.0, 1.0)
        prob[prob <= tol] = 0.0
        prob[prob >= 1 - tol] = 1.0
        u = rng.random(count)
        occurred = u < prob
        outcomes[:, step] = occurred
        miss = states @ (eye - p).T
        new = np.where(occurred[:, None], hit, miss)
        states = new / np.linalg.norm(new, axis=1, keepdims=True)
    return outcomes, states


def _prepare(psi, events, tol):
    psi = as_point(psi, tol=tol)
    events = [as_event(e, tol=tol) for e in events]
    if not events:
        raise ValueError("the event sequence is empty")
    check_same_dim([psi.ambient_dim] + [e.ambient_dim for e in events], "state and events")
    return psi, events


def sample_trajectory(psi, events: Sequence, rng: np.random.Generator,
                      tol: float = DEFAULT_TOL) -> Trajectory:
    """Simulate one run of the measurement sequence.

    One uniform variate is consumed per event.  Outcomes whose probability
    is within ``tol`` of 0 or 1 are decided without randomness.
    """
    psi, events = _prepare(psi, events, tol)
    outcomes, states = _simulate(psi.vector, [e.projector for e in events], 1, rng, tol)
    return Trajectory(tuple(bool(o) for o in outcomes[0]), state_point(states[0]))


def _batch_counts(psi, projectors, count, seed, tol) -> dict:
    rng = np.random.default_rng(np.random.SeedSequence(seed & 0xFFFF_FFFF_FFFF_FFFF))
    outcomes, _ = _simulate(psi, projectors, count, rng, tol)
    codes = outcomes.astype(np.uint8) + ord("0")
    keys, counts = np.unique(codes.view(f"S{len(projectors)}").ravel(), return_counts=True)
    return {k.decode(): int(c) for k, c in zip(keys, counts)}


def estimate(psi, events: Sequence, n: int, seed: int, tol: float = DEFAULT_TOL,
             workers: int = 1) -> SampleReport:
    """Estimate the all-occurred path probability from ``n`` trajectories.

    Deterministic in ``(psi, events, n, seed)`` for any ``workers``.
    ``std_error`` is ``sqrt(p_hat (1 - p_hat) / n)``.
    """
    if n < 1:
        raise ValueError("estimate: n must be >= 1")
    psi, events = _prepare(psi, events, tol)
    projectors = [e.projector for e in events]
    sizes = [min(BATCH_SIZE, n - start) for start in range(0, n, BATCH_SIZE)]
    jobs = [(psi.vector, projectors, size, seed + b, tol) for b, size in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _batch_counts(*job), jobs))
    else:
        parts = [_batch_counts(*job) for job in jobs]

    counts: dict[str, int] = {}
    for part in parts:
        for key, c in part.items():
            counts[key] = counts.get(key, 0) + c
    p_hat = counts.get("1" * len(events), 0) / n
    return SampleReport(
        n_samples=n,
        path_counts=dict(sorted(counts.items())),
        exact=consecutive(psi, events, tol=tol),
        empirical=p_hat,
        std_error=math.sqrt(p_hat * (1 - p_hat) / n),
    )
