"""Geometric observables and geometric density matrices.

In finite dimension a projective-subspace-valued measure on the real line
is determined by finitely many atoms ``(value, subspace)`` with mutually
orthogonal subspaces whose join is the whole space.  A geometric density
matrix is the analogous list of positive eigenvalues ``a_k`` with
eigenspaces ``S_k`` satisfying ``sum_k (1 + dim S_k) a_k = 1``, with ``dim``
the projective dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, PreconditionError
from .events import Subspace, as_event, join, projective_dim
from .kernel import DEFAULT_TOL, as_matrix, hermitian_eig, is_hermitian

__all__ = [
    "GeometricObservable",
    "BorelQuery",
    "GeometricDensityMatrix",
    "DensityOperator",
    "evaluate",
    "support",
    "observable_from_hermitian",
    "density_to_operator",
    "operator_to_density",
    "prob_density",
]

#: Eigenvalues closer than this are merged into one atom.
MERGE_TOL = 1e-8
TRACE_TOL = 1e-9
ORTHO_TOL = 1e-9


def _check_orthogonal(subspaces: list[Subspace]):
    for j in range(len(subspaces)):
        for k in range(j + 1, len(subspaces)):
            overlap = subspaces[j].basis.conj().T @ subspaces[k].basis
            if overlap.size and np.max(np.abs(overlap)) > ORTHO_TOL:
                raise PreconditionError(f"atom subspaces {j} and {k} are not orthogonal")


def _check_dims(dim: int, subspaces: list[Subspace]):
    for s in subspaces:
        if s.ambient_dim != dim:
            raise DimensionMismatchError(f"atom subspace in C^{s.ambient_dim}, expected C^{dim}")


@dataclass(frozen=True)
class GeometricObservable:
    """Finitely supported projective-subspace-valued measure.

    Atoms are sorted by value on construction.  Values must be distinct,
    subspaces mutually orthogonal, and their join the full space.
    """

    ambient_dim: int
    atoms: tuple

    def __post_init__(self):
        atoms = tuple(sorted(((float(v), s) for v, s in self.atoms), key=lambda a: a[0]))
        values = [v for v, _ in atoms]
        if any(not math.isfinite(v) for v in values):
            raise ValueError("atom values must be finite")
        if len(set(values)) != len(values):
            raise ValueError("atom values must be distinct")
        subspaces = [s for _, s in atoms]
        _check_dims(self.ambient_dim, subspaces)
        _check_orthogonal(subspaces)
        if sum(s.rank for s in subspaces) != self.ambient_dim:
            raise PreconditionError("atom subspaces do not join to the full space")
        object.__setattr__(self, "atoms", atoms)

    @property
    def values(self) -> tuple:
        return tuple(v for v, _ in self.atoms)

    def to_dict(self) -> dict:
        return {"atoms": [{"value": v, "subspace": s.to_dict()} for v, s in self.atoms]}

    @classmethod
    def from_dict(cls, data: dict) -> "GeometricObservable":
        atoms = [(a["value"], Subspace.from_dict(a["subspace"])) for a in data["atoms"]]
        if not atoms:
            raise ValueError("an observable needs at least one atom")
        return cls(atoms[0][1].ambient_dim, tuple(atoms))


@dataclass(frozen=True)
class BorelQuery:
    """Finite union of intervals and single points of the real line.

    ``intervals`` holds tuples ``(lo, hi, lo_closed, hi_closed)``; use
    ``-inf``/``inf`` for unbounded ends (an infinite end is never included).
    """

    intervals: tuple = ()
    singletons: tuple = ()

    def __post_init__(self):
        ivs = []
        for iv in self.intervals:
            lo, hi, lo_closed, hi_closed = iv
            lo, hi = float(lo), float(hi)
            if math.isnan(lo) or math.isnan(hi) or lo > hi:
                raise ValueError(f"malformed interval {iv!r}")
            ivs.append((lo, hi, bool(lo_closed), bool(hi_closed)))
        pts = []
        for x in self.singletons:
            x = float(x)
            if not math.isfinite(x):
                raise ValueError(f"malformed singleton {x!r}")
            pts.append(x)
        object.__setattr__(self, "intervals", tuple(ivs))
        object.__setattr__(self, "singletons", tuple(pts))

    @classmethod
    def empty(cls) -> "BorelQuery":
        return cls()

    @classmethod
    def real_line(cls) -> "BorelQuery":
        return cls(intervals=((-math.inf, math.inf, False, False),))

    @classmethod
    def closed(cls, lo: float, hi: float) -> "BorelQuery":
        return cls(intervals=((lo, hi, True, True),))

    @classmethod
    def points(cls, *xs: float) -> "BorelQuery":
        return cls(singletons=xs)

    def __or__(self, other: "BorelQuery") -> "BorelQuery":
        return BorelQuery(self.intervals + other.intervals, self.singletons + other.singletons)

    def __contains__(self, x: float) -> bool:
        if x in self.singletons:
            return True
        for lo, hi, lo_closed, hi_closed in self.intervals:
            above = x > lo or (lo_closed and x == lo)
            below = x < hi or (hi_closed and x == hi)
            if above and below:
                return True
        return False


def evaluate(obs: GeometricObservable, b: BorelQuery, tol: float = DEFAULT_TOL) -> Subspace:
    """Subspace assigned to the set ``b``: join of atoms with value in ``b``."""
    out = Subspace.zero(obs.ambient_dim)
    for v, s in obs.atoms:
        if v in b:
            out = join(out, s, tol=tol)
    return out


def support(obs: GeometricObservable) -> tuple:
    """Sorted atom values carrying a nonzero subspace."""
    return tuple(v for v, s in obs.atoms if s.rank > 0)


def _cluster(w: np.ndarray, v: np.ndarray, merge_tol: float) -> list[tuple[float, np.ndarray]]:
    # w ascending; chain together eigenvalues whose neighbours are within merge_tol
    groups: list[list[int]] = []
    for i in range(w.size):
        if groups and w[i] - w[groups[-1][-1]] <= merge_tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return [(float(np.mean(w[g])), v[:, g]) for g in groups]


def _ascending_eig(t) -> tuple[np.ndarray, np.ndarray]:
    w, v = hermitian_eig(t)
    return w[::-1], v[:, ::-1]


def observable_from_hermitian(t, merge_tol: float = MERGE_TOL) -> GeometricObservable:
    """Spectral measure of a Hermitian matrix as a geometric observable."""
    t = as_matrix(t)
    w, v = _ascending_eig(t)
    d = t.shape[0]
    atoms = tuple((val, Subspace(d, vecs)) for val, vecs in _cluster(w, v, merge_tol))
    return GeometricObservable(d, atoms)


@dataclass(frozen=True)
class DensityOperator:
    """Positive semidefinite Hermitian matrix of trace one."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape[0] != m.shape[1] or not is_hermitian(m):
            raise PreconditionError("density operator must be a Hermitian square matrix")
        if abs(np.trace(m).real - 1) > TRACE_TOL:
            raise PreconditionError(f"density operator has trace {np.trace(m).real!r}")
        if m.size and np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min() < -1e-10:
            raise PreconditionError("density operator has a negative eigenvalue")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def ambient_dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class GeometricDensityMatrix:
    """Atoms ``(a_k, S_k)``: distinct positive weights on orthogonal subspaces.

    Atoms are sorted by weight.  Construction checks
    ``sum_k (1 + projective_dim(S_k)) * a_k == 1`` within ``TRACE_TOL``.
    """

    ambient_dim: int
    atoms: tuple

    def __post_init__(self):
        atoms = tuple(sorted(((float(a), s) for a, s in self.atoms), key=lambda x: x[0]))
        weights = [a for a, _ in atoms]
        if any(not (a > 0) or not math.isfinite(a) for a in weights):
            raise PreconditionError("density weights must be strictly positive")
        if len(set(weights)) != len(weights):
            raise PreconditionError("density weights must be distinct")
        subspaces = [s for _, s in atoms]
        if any(s.rank == 0 for s in subspaces):
            raise PreconditionError("density atoms must carry nonzero subspaces")
        _check_dims(self.ambient_dim, subspaces)
        _check_orthogonal(subspaces)
        if abs(self.trace() - 1) > TRACE_TOL:
            raise PreconditionError(f"trace condition violated: sum = {self.trace()!r}")
        object.__setattr__(self, "atoms", atoms)

    def trace(self) -> float:
        return float(sum((1 + projective_dim(s)) * a for a, s in self.atoms))

    def to_dict(self) -> dict:
        return {"atoms": [{"a": a, "subspace": s.to_dict()} for a, s in self.atoms]}

    @classmethod
    def from_dict(cls, data: dict) -> "GeometricDensityMatrix":
        atoms = [(a["a"], Subspace.from_dict(a["subspace"])) for a in data["atoms"]]
        if not atoms:
            raise ValueError("a density matrix needs at least one atom")
        return cls(atoms[0][1].ambient_dim, tuple(atoms))


def density_to_operator(rho: GeometricDensityMatrix) -> DensityOperator:
    """``sum_k a_k P_{S_k}``."""
    m = np.zeros((rho.ambient_dim, rho.ambient_dim), dtype=complex)
    for a, s in rho.atoms:
        m += a * s.projector
    return DensityOperator(m)


def operator_to_density(d: DensityOperator | np.ndarray, tol: float = DEFAULT_TOL,
                        merge_tol: float = MERGE_TOL) -> GeometricDensityMatrix:
    """Spectral atoms of a density operator; eigenvalues ``<= tol`` are dropped."""
    if not isinstance(d, DensityOperator):
        d = DensityOperator(d)
    w, v = _ascending_eig(d.matrix)
    dim = d.ambient_dim
    atoms = tuple(
        (val, Subspace(dim, vecs)) for val, vecs in _cluster(w, v, merge_tol) if val > tol
    )
    return GeometricDensityMatrix(dim, atoms)


def prob_density(rho, e, tol: float = DEFAULT_TOL) -> float:
    """``Tr(E rho)`` for a geometric density matrix or density operator."""
    if isinstance(rho, GeometricDensityMatrix):
        m = density_to_operator(rho).matrix
    elif isinstance(rho, DensityOperator):
        m = rho.matrix
    else:
        m = DensityOperator(rho).matrix
    e = as_event(e, tol=tol)
    if e.ambient_dim != m.shape[0]:
        raise DimensionMismatchError(f"event on C^{e.ambient_dim}, density on C^{m.shape[0]}")
    return min(max(float(np.trace(e.projector @ m).real), 0.0), 1.0)

