"""Subspaces, events (orthogonal projections) and points of projective space.

A :class:`Subspace` stores an orthonormal basis and doubles as the
projective subspace it determines.  Its *projective* dimension is one less
than the Hilbert-space rank, so the zero subspace (the empty projective
subspace) has dimension -1.

An :class:`Event` stores the projector onto a subspace.  The two are
interconvertible through :func:`event_of` and :func:`range_of`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DimensionMismatchError, PreconditionError
from .kernel import (
    DEFAULT_TOL,
    as_matrix,
    as_vector,
    check_same_dim,
    hermitian_eig,
    orthonormalize,
)

__all__ = [
    "Subspace",
    "Event",
    "StatePoint",
    "subspace_from_vectors",
    "event_of",
    "range_of",
    "join",
    "meet",
    "ortho",
    "projective_dim",
    "state_point",
    "as_event",
    "as_point",
]

# Tolerance for projector validation (P^2 = P = P*), entry-wise.
PROJECTOR_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Subspace:
    """Closed subspace of C^d given by an orthonormal basis (columns)."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        b = as_matrix(self.basis)
        if b.shape[0] != self.ambient_dim:
            raise DimensionMismatchError(
                f"basis has {b.shape[0]} rows, ambient dimension is {self.ambient_dim}"
            )
        if b.shape[1] > self.ambient_dim:
            raise ValueError("more basis vectors than the ambient dimension")
        gram = b.conj().T @ b
        if gram.size and np.max(np.abs(gram - np.eye(b.shape[1]))) > 1e-8:
            raise PreconditionError("basis columns are not orthonormal")
        b = b.copy()
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls(dim, np.zeros((dim, 0), dtype=complex))

    @classmethod
    def full(cls, dim: int) -> "Subspace":
        return cls(dim, np.eye(dim, dtype=complex))

    @property
    def rank(self) -> int:
        """Hilbert-space dimension (number of basis vectors)."""
        return self.basis.shape[1]

    @property
    def projective_dim(self) -> int:
        return self.rank - 1

    @cached_property
    def projector(self) -> np.ndarray:
        p = self.basis @ self.basis.conj().T
        p.setflags(write=False)
        return p

    def contains(self, v, tol: float = DEFAULT_TOL) -> bool:
        v = as_vector(v)
        r = v - self.projector @ v
        return float(np.linalg.norm(r)) <= tol * max(1.0, float(np.linalg.norm(v)))

    def same_as(self, other: "Subspace", tol: float = 1e-9) -> bool:
        """Equality of subspaces, compared through their projectors."""
        if self.ambient_dim != other.ambient_dim:
            return False
        return float(np.max(np.abs(self.projector - other.projector), initial=0.0)) <= tol

    def __repr__(self):
        return f"<Subspace rank {self.rank} of C^{self.ambient_dim}>"

    def to_dict(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "columns": _columns_to_json(self.basis)}

    @classmethod
    def from_dict(cls, data: dict, tol: float = DEFAULT_TOL) -> "Subspace":
        d = int(data["ambient_dim"])
        cols = _columns_from_json(data["columns"], d)
        return subspace_from_vectors(cols, dim=d, tol=tol)


@dataclass(frozen=True, eq=False)
class Event:
    """Orthogonal projection ``P = P^2 = P*`` together with its range."""

    subspace: Subspace
    projector: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "projector", self.subspace.projector)

    @classmethod
    def from_projector(cls, p, tol: float = DEFAULT_TOL) -> "Event":
        """Build an event from an explicit projection matrix.

        Raises :class:`PreconditionError` if ``p`` is not Hermitian and
        idempotent to within ``PROJECTOR_TOL`` entry-wise.
        """
        p = as_matrix(p)
        if p.shape[0] != p.shape[1]:
            raise PreconditionError(f"projector of shape {p.shape} is not square")
        if p.size and (
            np.max(np.abs(p - p.conj().T)) > PROJECTOR_TOL
            or np.max(np.abs(p @ p - p)) > PROJECTOR_TOL
        ):
            raise PreconditionError("matrix is not an orthogonal projection")
        w, v = hermitian_eig(p, tol=PROJECTOR_TOL)
        return cls(Subspace(p.shape[0], v[:, w > 0.5]))

    @classmethod
    def from_vectors(cls, vectors, dim: int | None = None, tol: float = DEFAULT_TOL) -> "Event":
        return cls(subspace_from_vectors(vectors, dim=dim, tol=tol))

    @classmethod
    def ray(cls, v) -> "Event":
        """Rank-one projector ``|psi><psi|`` onto the line through ``v``."""
        return cls(subspace_from_vectors([v]))

    @classmethod
    def identity(cls, dim: int) -> "Event":
        return cls(Subspace.full(dim))

    @classmethod
    def zero(cls, dim: int) -> "Event":
        return cls(Subspace.zero(dim))

    @property
    def ambient_dim(self) -> int:
        return self.subspace.ambient_dim

    @property
    def rank(self) -> int:
        return self.subspace.rank

    def complement(self) -> "Event":
        return Event(ortho(self.subspace))

    def __repr__(self):
        return f"<Event rank {self.rank} on C^{self.ambient_dim}>"

    def to_dict(self) -> dict:
        return self.subspace.to_dict()

    @classmethod
    def from_dict(cls, data: dict, tol: float = DEFAULT_TOL) -> "Event":
        return cls(Subspace.from_dict(data, tol=tol))


def _canonical_phase(v: np.ndarray) -> np.ndarray:
    mags = np.abs(v)
    # first index within a relative 1e-9 of the maximum, so rounding noise
    # cannot flip the choice between equal-magnitude entries
    k = int(np.argmax(mags >= mags.max() * (1 - 1e-9)))
    out = v * (np.conj(v[k]) / mags[k])
    out[k] = mags[k]
    return out


@dataclass(frozen=True, eq=False)
class StatePoint:
    """Point of complex projective space, held as a canonical unit vector.

    The representative has unit norm and its largest-magnitude entry (the
    first one, on ties) is real and positive.  Use :func:`state_point` to
    build one from an arbitrary nonzero vector.
    """

    vector: np.ndarray

    def __post_init__(self):
        v = as_vector(self.vector).copy()
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)

    @property
    def ambient_dim(self) -> int:
        return self.vector.size

    def __repr__(self):
        return f"StatePoint({np.array2string(self.vector, precision=6)})"

    def to_dict(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "columns": _columns_to_json(self.vector[:, None])}

    @classmethod
    def from_dict(cls, data: dict, tol: float = DEFAULT_TOL) -> "StatePoint":
        d = int(data["ambient_dim"])
        cols = _columns_from_json(data["columns"], d)
        if len(cols) != 1:
            raise ValueError("a state point is serialized as exactly one column")
        return state_point(cols[0], tol=tol)


def subspace_from_vectors(vectors, dim: int | None = None, tol: float = DEFAULT_TOL) -> Subspace:
    """Subspace spanned by ``vectors`` (possibly empty, then ``dim`` is required)."""
    basis = orthonormalize(vectors, tol=tol, dim=dim)
    return Subspace(basis.shape[0], basis)


def event_of(s: Subspace) -> Event:
    return Event(s)


def range_of(e: Event) -> Subspace:
    return e.subspace


def join(a: Subspace, b: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    """Smallest subspace containing both ``a`` and ``b`` (span of the union)."""
    d = check_same_dim([a.ambient_dim, b.ambient_dim], "join")
    return subspace_from_vectors(np.hstack([a.basis, b.basis]), dim=d, tol=tol)


def meet(a: Subspace, b: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    """Intersection of ``a`` and ``b``.

    Computed as the eigenspace of ``P_a P_b P_a`` for eigenvalues at least
    ``1 - tol``; vectors at principal angle below roughly ``sqrt(tol)`` are
    treated as common.
    """
    d = check_same_dim([a.ambient_dim, b.ambient_dim], "meet")
    if a.rank == 0 or b.rank == 0:
        return Subspace.zero(d)
    pa = a.projector
    w, v = hermitian_eig(pa @ b.projector @ pa, tol=1e-8)
    return Subspace(d, orthonormalize(v[:, w >= 1 - tol], tol=tol, dim=d))


def ortho(a: Subspace) -> Subspace:
    """Orthogonal complement: the kernel of the projector onto ``a``."""
    d = a.ambient_dim
    w, v = hermitian_eig(np.eye(d) - a.projector, tol=1e-8)
    return Subspace(d, v[:, w > 0.5])


def projective_dim(s: Subspace) -> int:
    """Projective dimension: Hilbert rank minus one (-1 for the zero subspace)."""
    return s.rank - 1


def state_point(v, tol: float = DEFAULT_TOL) -> StatePoint:
    """Image of a nonzero vector under the quotient map to projective space."""
    v = as_vector(v)
    n = float(np.linalg.norm(v))
    if n <= tol:
        raise PreconditionError("the zero vector does not determine a point of projective space")
    return StatePoint(_canonical_phase(v / n))


def as_point(p, tol: float = DEFAULT_TOL) -> StatePoint:
    """Coerce a :class:`StatePoint` or a nonzero vector to a :class:`StatePoint`."""
    if isinstance(p, StatePoint):
        return p
    return state_point(p, tol=tol)


def as_event(e, tol: float = DEFAULT_TOL) -> Event:
    """Coerce an :class:`Event`, :class:`Subspace` or projection matrix to an :class:`Event`."""
    if isinstance(e, Event):
        return e
    if isinstance(e, Subspace):
        return Event(e)
    return Event.from_projector(e, tol=tol)


def _columns_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in m[:, j]] for j in range(m.shape[1])]


def _columns_from_json(cols, dim: int) -> list[np.ndarray]:
    out = []
    for col in cols:
        v = np.array([complex(re, im) for re, im in col], dtype=complex)
        if v.size != dim:
            raise DimensionMismatchError(f"column of length {v.size}, ambient dimension {dim}")
        out.append(v)
    return out
