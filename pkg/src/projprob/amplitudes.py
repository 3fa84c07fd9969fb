"""Invariant amplitudes of point sequences and lower symbols of operators.

The amplitude of points ``p_1, ..., p_n`` with unit representatives
``psi_k`` is the cyclic product

    A_n = <psi_1, psi_2> <psi_2, psi_3> ... <psi_{n-1}, psi_n> <psi_n, psi_1>.

Each representative appears once conjugated and once not, so ``A_n`` does
not depend on phases.  Points may be given as :class:`StatePoint` objects
or as raw vectors; raw vectors are normalized but not re-phased, which lets
tests exercise phase independence directly.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import PreconditionError
from .events import StatePoint
from .kernel import DEFAULT_TOL, as_matrix, check_same_dim, hermitian_eig, is_hermitian

__all__ = [
    "amplitude",
    "amplitude_via_symbol",
    "expected_value",
    "lower_symbol_sup",
    "reconstruct_from_quadratic_form",
    "quadratic_form",
]


def _unit(p, tol: float) -> np.ndarray:
    if isinstance(p, StatePoint):
        return p.vector
    v = np.asarray(p, dtype=complex)
    n = np.linalg.norm(v)
    if v.ndim != 1 or n <= tol:
        raise PreconditionError("points must be StatePoints or nonzero vectors")
    return v / n


def _units(points: Sequence, tol: float) -> list[np.ndarray]:
    if len(points) == 0:
        raise ValueError("a point sequence must be non-empty")
    vs = [_unit(p, tol) for p in points]
    check_same_dim([v.size for v in vs], "point sequence")
    return vs


def amplitude(points: Sequence, tol: float = DEFAULT_TOL) -> complex:
    """Cyclic amplitude ``A_n(p_1, ..., p_n)``; lies in the closed unit disc.

    >>> amplitude([[1, 0]])
    (1+0j)
    >>> round(abs(amplitude([[1, 0], [1, 1]])), 12)
    0.5
    """
    vs = _units(points, tol)
    a = 1 + 0j
    for k in range(len(vs)):
        a *= np.vdot(vs[k], vs[(k + 1) % len(vs)])
    return complex(a)


def expected_value(p, t, tol: float = DEFAULT_TOL) -> complex:
    """``E_p(T) = <psi, T psi>`` for the point ``p = pi(psi)``."""
    t = as_matrix(t)
    v = _unit(p, tol)
    if t.shape != (v.size, v.size):
        raise PreconditionError(f"operator of shape {t.shape} on C^{v.size}")
    return complex(np.vdot(v, t @ v))


def amplitude_via_symbol(points: Sequence, tol: float = DEFAULT_TOL) -> complex:
    """``A_n`` computed as ``E_{p_1}(|psi_2><psi_2| ... |psi_n><psi_n|)``.

    An independent route to :func:`amplitude`; needs at least two points.
    """
    if len(points) < 2:
        raise ValueError("amplitude_via_symbol needs at least two points; use amplitude")
    vs = _units(points, tol)
    d = vs[0].size
    prod = np.eye(d, dtype=complex)
    for v in vs[1:]:
        prod = prod @ np.outer(v, v.conj())
    return expected_value(vs[0], prod, tol)


def lower_symbol_sup(t, sample_points: Sequence = (), exact: bool = False,
                     tol: float = DEFAULT_TOL) -> float:
    """Sup of ``|E_p(T)|`` over the sample points.

    The result never exceeds the operator norm of ``t``.  With
    ``exact=True`` and Hermitian ``t`` the true supremum over all points,
    the spectral radius, is returned instead and the samples are ignored.
    """
    t = as_matrix(t)
    if exact:
        if not is_hermitian(t):
            raise PreconditionError("exact lower symbol sup requires a Hermitian operator")
        w, _ = hermitian_eig(t)
        return float(np.max(np.abs(w), initial=0.0))
    if len(sample_points) == 0:
        raise ValueError("lower_symbol_sup: no sample points")
    return max(abs(expected_value(p, t, tol)) for p in sample_points)


def quadratic_form(t) -> Callable[[np.ndarray], complex]:
    """Return ``v -> <v, T v>`` for the matrix ``t``."""
    t = as_matrix(t)
    return lambda v: complex(np.vdot(v, t @ v))


def reconstruct_from_quadratic_form(q: Callable[[np.ndarray], complex], dim: int) -> np.ndarray:
    """Recover ``T`` from its quadratic form ``q(v) = <v, T v>``.

    Polarization for a form conjugate-linear in its first slot gives::

        <x, T y> = (q(x+y) - q(x-y) - i q(x+iy) + i q(x-iy)) / 4

    and ``T[j, k] = <e_j, T e_k>``.  Works for non-Hermitian ``T``.
    """
    eye = np.eye(dim, dtype=complex)
    t = np.empty((dim, dim), dtype=complex)
    for j in range(dim):
        t[j, j] = q(eye[j])
        for k in range(dim):
            if k == j:
                continue
            x, y = eye[j], eye[k]
            t[j, k] = (q(x + y) - q(x - y) - 1j * q(x + 1j * y) + 1j * q(x - 1j * y)) / 4
    return t
