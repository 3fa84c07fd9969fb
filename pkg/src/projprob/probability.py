"""Probabilities of events and ordered sequences of events.

All functions take a state as a :class:`~projprob.events.StatePoint` (or a
nonzero vector, which is normalized) and events as
:class:`~projprob.events.Event` objects (or projection matrices).  Results
depend only on the point and on the ranges of the events, never on the
representatives chosen for them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import PreconditionError
from .events import Event, StatePoint, Subspace, as_event, as_point, join, state_point
from .kernel import DEFAULT_TOL, as_matrix, check_same_dim, operator_norm

__all__ = [
    "born",
    "consecutive",
    "consecutive_via_bases",
    "conditional",
    "collapse",
    "independence",
    "Independence",
    "consecutive_events",
    "TimedSequence",
    "timed_operator",
    "timed_consecutive",
    "interference",
    "InterferenceReport",
    "geodesic_distance",
]

#: Propagators may exceed operator norm 1 by at most this much.
CONTRACTION_TOL = 1e-9


def _clip01(x: float) -> float:
    return min(max(float(x), 0.0), 1.0)


def _prepare(psi, events, tol) -> tuple[StatePoint, list[Event]]:
    psi = as_point(psi, tol=tol)
    events = [as_event(e, tol=tol) for e in events]
    check_same_dim([psi.ambient_dim] + [e.ambient_dim for e in events], "state and events")
    return psi, events


def _apply_sequence(psi: StatePoint, events: Sequence[Event]) -> np.ndarray:
    v = psi.vector
    for e in events:
        v = e.projector @ v
    return v


def born(psi, e, tol: float = DEFAULT_TOL) -> float:
    """Probability ``||E psi||^2`` of a single event."""
    psi, (e,) = _prepare(psi, [e], tol)
    v = e.projector @ psi.vector
    return _clip01(np.vdot(v, v).real)


def consecutive(psi, events: Sequence, tol: float = DEFAULT_TOL) -> float:
    """Wigner's rule ``||E_n ... E_2 E_1 psi||^2``.

    ``events`` is in time order: ``events[0]`` occurs first.  The product is
    applied right to left as matrix-vector products.
    """
    if len(events) == 0:
        raise ValueError("consecutive: the event sequence is empty")
    psi, events = _prepare(psi, events, tol)
    v = _apply_sequence(psi, events)
    return _clip01(np.vdot(v, v).real)


def _check_basis(basis, e: Event, name: str) -> np.ndarray:
    b = as_matrix(basis)
    d = e.ambient_dim
    if b.shape[0] != d:
        raise PreconditionError(f"{name}: basis has {b.shape[0]} rows, expected {d}")
    if b.shape[1] != e.rank:
        raise PreconditionError(f"{name}: {b.shape[1]} vectors for a range of dimension {e.rank}")
    if b.shape[1] and np.max(np.abs(b.conj().T @ b - np.eye(b.shape[1]))) > 1e-9:
        raise PreconditionError(f"{name}: basis is not orthonormal")
    if np.max(np.abs(b @ b.conj().T - e.projector), initial=0.0) > 1e-9:
        raise PreconditionError(f"{name}: basis does not span the range of the event")
    return b


def consecutive_via_bases(psi, e1, e2, basis1, basis2, tol: float = DEFAULT_TOL) -> float:
    """Two-event consecutive probability as an explicit sum over basis vectors.

    With ``beta_k`` the columns of ``basis1`` (a basis of Ran e1) and
    ``alpha_j`` those of ``basis2`` (Ran e2) this returns::

        sum_{j,k,m} <psi, beta_k> <beta_k, alpha_j> <alpha_j, beta_m> <beta_m, psi>

    term by term, so that each summand is a product of four inner products.
    It is slow on purpose; it serves as an oracle for :func:`consecutive`,
    and the result must not depend on the bases chosen.
    """
    psi, (e1, e2) = _prepare(psi, [e1, e2], tol)
    beta = _check_basis(basis1, e1, "basis1")
    alpha = _check_basis(basis2, e2, "basis2")
    x = psi.vector
    total = 0j
    for j in range(alpha.shape[1]):
        a_j = alpha[:, j]
        for k in range(beta.shape[1]):
            b_k = beta[:, k]
            left = np.vdot(x, b_k) * np.vdot(b_k, a_j)
            for m in range(beta.shape[1]):
                b_m = beta[:, m]
                total += left * np.vdot(a_j, b_m) * np.vdot(b_m, x)
    return float(total.real)


def conditional(psi, e1, e2, tol: float = DEFAULT_TOL) -> float:
    """Probability of ``e2`` given the prior occurrence of ``e1``.

    Returns ``P(e1, e2) / P(e1)``, or exactly 0 when ``P(e1) <= tol``.
    """
    psi, (e1, e2) = _prepare(psi, [e1, e2], tol)
    p1 = born(psi, e1)
    if p1 <= tol:
        return 0.0
    return _clip01(consecutive(psi, [e1, e2]) / p1)


def collapse(psi, e, tol: float = DEFAULT_TOL) -> StatePoint:
    """State ``E psi / ||E psi||`` after the event ``e`` has occurred.

    Raises
    ------
    PreconditionError
        If ``born(psi, e) <= tol``; the event cannot occur in this state.
    """
    psi, (e,) = _prepare(psi, [e], tol)
    v = e.projector @ psi.vector
    if np.vdot(v, v).real <= tol:
        raise PreconditionError("collapse: the event annihilates the state")
    return state_point(v)


class Independence(NamedTuple):
    independent: bool
    lhs: float
    rhs: float

    @property
    def entangled(self) -> bool:
        return not self.independent


def independence(psi, e1, e2, tol: float = DEFAULT_TOL) -> Independence:
    """Quantum independence of the ordered pair ``(e1, e2)`` in state ``psi``.

    ``lhs = P(e1, e2)`` and ``rhs = P(e1) P(e2)``; the pair is independent
    when they agree within ``tol``, entangled otherwise.  The test is
    order dependent.
    """
    psi, (e1, e2) = _prepare(psi, [e1, e2], tol)
    lhs = consecutive(psi, [e1, e2])
    rhs = born(psi, e1) * born(psi, e2)
    return Independence(abs(lhs - rhs) <= tol, lhs, rhs)


def consecutive_events(events: Sequence, tol: float = DEFAULT_TOL) -> float:
    """State-free consecutive probability ``||E_n ... E_1 E_0||_op^2``.

    ``events[0]`` is the initial event ``E_0``.  A single nonzero event has
    probability 1.
    """
    if len(events) == 0:
        raise ValueError("consecutive_events: the event sequence is empty")
    events = [as_event(e, tol=tol) for e in events]
    check_same_dim([e.ambient_dim for e in events], "events")
    m = events[0].projector
    for e in events[1:]:
        m = e.projector @ m
    return _clip01(operator_norm(m) ** 2)


@dataclass(frozen=True)
class TimedSequence:
    """Events interleaved with time evolutions.

    Represents the operator ``post E_n U_n ... E_1 U_1 E_0 pre`` where
    ``steps = [(U_1, E_1), ..., (U_n, E_n)]``.  ``pre`` and ``post`` are
    optional evolutions before the initial and after the final event; they
    are ``None`` when absent.  Every propagator must be a contraction.
    """

    initial: Event
    steps: tuple = ()
    pre: np.ndarray | None = field(default=None, repr=False)
    post: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "initial", as_event(self.initial))
        steps = tuple((as_matrix(u), as_event(e)) for u, e in self.steps)
        object.__setattr__(self, "steps", steps)
        d = self.initial.ambient_dim
        for u, e in steps:
            if u.shape != (d, d) or e.ambient_dim != d:
                raise PreconditionError("timed sequence: propagator or event of wrong dimension")
        for name in ("pre", "post"):
            u = getattr(self, name)
            if u is not None:
                u = as_matrix(u)
                if u.shape != (d, d):
                    raise PreconditionError(f"timed sequence: {name} has shape {u.shape}")
                object.__setattr__(self, name, u)

    def propagators(self) -> list[np.ndarray]:
        out = [u for u, _ in self.steps]
        out += [u for u in (self.pre, self.post) if u is not None]
        return out

    @property
    def ambient_dim(self) -> int:
        return self.initial.ambient_dim


def timed_operator(t: TimedSequence) -> np.ndarray:
    """The operator product whose squared norm is the timed probability."""
    m = t.initial.projector
    if t.pre is not None:
        m = m @ t.pre
    for u, e in t.steps:
        m = e.projector @ (u @ m)
    if t.post is not None:
        m = t.post @ m
    return m


def timed_consecutive(t: TimedSequence, contraction_tol: float = CONTRACTION_TOL) -> float:
    """Time-dependent Wigner rule ``||E_n U_n ... E_1 U_1 E_0||_op^2``.

    Raises
    ------
    PreconditionError
        If some propagator has operator norm above ``1 + contraction_tol``.
    """
    for i, u in enumerate(t.propagators()):
        nu = operator_norm(u)
        if nu > 1 + contraction_tol:
            raise PreconditionError(f"propagator {i} is not a contraction (norm {nu:.12g})")
    return _clip01(operator_norm(timed_operator(t)) ** 2)


@dataclass(frozen=True)
class InterferenceReport:
    """Decomposition of ``P(sum_j E_j, E)`` into diagonal and interference terms."""

    total: float
    diagonal: tuple
    cross_terms: tuple  # (j, k, <E E_j psi, E E_k psi>) for every ordered j != k

    @property
    def cross_sum(self) -> complex:
        return complex(sum((c for _, _, c in self.cross_terms), 0j))

    def defect(self) -> float:
        """``|total - sum(diagonal) - sum(cross)|``; zero up to rounding."""
        return abs(self.total - sum(self.diagonal) - self.cross_sum)


def interference(psi, parts: Sequence, e, tol: float = DEFAULT_TOL) -> InterferenceReport:
    """Quantum sigma-additivity for mutually orthogonal ``parts`` followed by ``e``.

    Raises
    ------
    PreconditionError
        If two parts are not orthogonal (``||E_j E_k||_op > tol``).
    """
    if len(parts) == 0:
        raise ValueError("interference: no parts given")
    psi, events = _prepare(psi, list(parts) + [e], tol)
    parts, e = events[:-1], events[-1]
    for j in range(len(parts)):
        for k in range(j + 1, len(parts)):
            if operator_norm(parts[j].projector @ parts[k].projector) > tol:
                raise PreconditionError(f"interference: parts {j} and {k} are not orthogonal")

    whole = Subspace.zero(psi.ambient_dim)
    for p in parts:
        whole = join(whole, p.subspace, tol=tol)
    total = consecutive(psi, [Event(whole), e])

    branches = [e.projector @ (p.projector @ psi.vector) for p in parts]
    diagonal = tuple(consecutive(psi, [p, e]) for p in parts)
    cross = tuple(
        (j, k, complex(np.vdot(branches[j], branches[k])))
        for j in range(len(parts))
        for k in range(len(parts))
        if j != k
    )
    return InterferenceReport(total, diagonal, cross)


def geodesic_distance(p, q, tol: float = DEFAULT_TOL) -> float:
    """Fubini-Study distance ``arccos |<psi_p, psi_q>|``, in ``[0, pi/2]``.

    Evaluated as ``atan2(sin, cos)`` with the sine taken from the component
    of ``q`` orthogonal to ``p``; plain ``arccos`` loses half the digits
    near coincident points.
    """
    p = as_point(p, tol=tol)
    q = as_point(q, tol=tol)
    check_same_dim([p.ambient_dim, q.ambient_dim], "geodesic_distance")
    c = np.vdot(p.vector, q.vector)
    s = np.linalg.norm(q.vector - c * p.vector)
    return float(np.arctan2(s, abs(c)))
