"""Seeded random states, subspaces, events and operators for tests and demos."""

from __future__ import annotations

import numpy as np

from .events import Event, StatePoint, Subspace, state_point
from .kernel import random_vector

__all__ = [
    "random_point",
    "random_subspace",
    "random_event",
    "random_orthogonal_events",
    "random_matrix",
    "random_hermitian",
    "random_density",
]


def random_point(dim: int, rng: np.random.Generator) -> StatePoint:
    return state_point(random_vector(dim, rng))


def random_subspace(dim: int, rank: int, rng: np.random.Generator) -> Subspace:
    """Uniformly distributed subspace of the given Hilbert rank."""
    z = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    q, _ = np.linalg.qr(z)
    return Subspace(dim, q[:, :rank])


def random_event(dim: int, rng: np.random.Generator, rank: int | None = None) -> Event:
    if rank is None:
        rank = int(rng.integers(1, dim + 1))
    return Event(random_subspace(dim, rank, rng))


def random_orthogonal_events(dim: int, ranks: list[int], rng: np.random.Generator) -> list[Event]:
    """Mutually orthogonal events of the given ranks (``sum(ranks) <= dim``)."""
    if sum(ranks) > dim:
        raise ValueError("ranks exceed the ambient dimension")
    frame = random_subspace(dim, dim, rng).basis
    out, start = [], 0
    for r in ranks:
        out.append(Event(Subspace(dim, frame[:, start:start + r])))
        start += r
    return out


def random_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    m = random_matrix(dim, rng)
    return 0.5 * (m + m.conj().T)


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random trace-one positive matrix ``G G* / Tr(G G*)``."""
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return m / np.trace(m).real
