"""Dense complex linear algebra used throughout the package.

Vectors are 1-d ``complex128`` arrays and matrices are 2-d ``complex128``
arrays.  The inner product is conjugate-linear in its *first* argument,
``inner(a, b) = sum(conj(a) * b)``, and every other module relies on that.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import DimensionMismatchError, PreconditionError

#: Default absolute tolerance, scaled by ``max(1, norm)`` where relevant.
DEFAULT_TOL = 1e-10

#: Maximum entry-wise deviation from Hermitian symmetry accepted by
#: :func:`hermitian_eig`.
HERMITIAN_TOL = 1e-10


def as_vector(v) -> np.ndarray:
    """Return ``v`` as a 1-d complex array (no copy if already one)."""
    arr = np.asarray(v, dtype=complex)
    if arr.ndim != 1:
        raise ValueError(f"expected a vector, got array of shape {arr.shape}")
    return arr


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a 2-d complex array (no copy if already one)."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"expected a matrix, got array of shape {arr.shape}")
    return arr


def inner(a, b) -> complex:
    """Inner product ``<a, b>``, conjugate-linear in ``a``, linear in ``b``.

    >>> inner([1j, 0], [1, 0])
    -1j
    """
    a = as_vector(a)
    b = as_vector(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"inner: dimensions {a.size} and {b.size} differ")
    return complex(np.vdot(a, b))


def norm(v) -> float:
    return float(np.linalg.norm(as_vector(v)))


def orthonormalize(vectors, tol: float = DEFAULT_TOL, dim: int | None = None) -> np.ndarray:
    """Orthonormal basis for the span of ``vectors``.

    Modified Gram-Schmidt with one reorthogonalization pass.  A vector is
    dropped when its residual norm after projecting out the accepted
    columns is at most ``tol * max(1, largest input norm)``.

    Parameters
    ----------
    vectors : sequence of vectors, or a 2-d array whose columns are the vectors
    tol : float
        Rank-decision tolerance.
    dim : int, optional
        Ambient dimension; only needed when ``vectors`` is an empty list.

    Returns
    -------
    ndarray of shape (d, r)
        Columns are orthonormal and span the same subspace; ``r`` is the
        numerical rank.
    """
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        cols = [vectors[:, j] for j in range(vectors.shape[1])]
        d = vectors.shape[0]
    else:
        cols = [as_vector(v) for v in vectors]
        if cols:
            d = cols[0].size
        elif dim is not None:
            d = dim
        else:
            raise ValueError("orthonormalize: empty input needs an explicit dim")
    if dim is not None and d != dim:
        raise DimensionMismatchError(f"orthonormalize: vectors have dimension {d}, expected {dim}")
    for c in cols:
        if c.size != d:
            raise DimensionMismatchError("orthonormalize: vectors of unequal dimension")

    scale = max([1.0] + [float(np.linalg.norm(c)) for c in cols])
    cutoff = tol * scale
    basis: list[np.ndarray] = []
    for c in cols:
        w = np.array(c, dtype=complex)
        for _ in range(2):
            for q in basis:
                w -= np.vdot(q, w) * q
        r = np.linalg.norm(w)
        if r > cutoff:
            basis.append(w / r)
    if not basis:
        return np.zeros((d, 0), dtype=complex)
    return np.column_stack(basis)


def operator_norm(m) -> float:
    """Largest singular value of ``m``; 0 for empty matrices."""
    m = as_matrix(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False)[0])


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    if m.size == 0:
        return True
    return float(np.max(np.abs(m - m.conj().T))) <= tol


def hermitian_eig(m, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending.

    Raises
    ------
    PreconditionError
        If ``m`` is not square or deviates from Hermitian by more than
        ``tol`` in some entry.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise PreconditionError(f"hermitian_eig: matrix of shape {m.shape} is not square")
    if not is_hermitian(m, tol):
        raise PreconditionError("hermitian_eig: matrix is not Hermitian")
    h = 0.5 * (m + m.conj().T)
    w, v = np.linalg.eigh(h)
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def _seed_sequence(seed: int) -> np.random.SeedSequence:
    # SeedSequence rejects negative entropy; fold into the unsigned 64-bit range.
    return np.random.SeedSequence(int(seed) & 0xFFFF_FFFF_FFFF_FFFF)


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-distributed unitary, deterministic in ``(dim, seed)``.

    Complex Gaussian columns are orthonormalized with a QR decomposition
    whose diagonal phases are fixed so the result is Haar distributed.
    """
    if dim < 1:
        raise ValueError("random_unitary: dim must be >= 1")
    rng = np.random.default_rng(_seed_sequence(seed))
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases[np.newaxis, :]


def random_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Uniformly distributed unit vector in C^dim."""
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def check_same_dim(dims: Iterable[int], what: str = "operands") -> int:
    dims = list(dims)
    if not dims:
        raise ValueError(f"{what}: nothing to compare")
    if any(d != dims[0] for d in dims):
        raise DimensionMismatchError(f"{what}: dimensions {sorted(set(dims))} differ")
    return dims[0]

