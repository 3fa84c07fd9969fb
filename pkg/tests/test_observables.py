import json
import math

import numpy as np
import pytest

from projprob import (
    BorelQuery,
    DensityOperator,
    Event,
    GeometricDensityMatrix,
    GeometricObservable,
    Subspace,
    born,
    density_to_operator,
    evaluate,
    join,
    observable_from_hermitian,
    operator_to_density,
    prob_density,
    subspace_from_vectors,
    support,
)
from projprob.errors import PreconditionError
from projprob.random_objects import random_density, random_event, random_hermitian, random_point

from conftest import E1, E2, PLUS

SPAN_E1 = subspace_from_vectors([E1])
SPAN_E2 = subspace_from_vectors([E2])
QUBIT_OBS = GeometricObservable(2, ((1.0, SPAN_E2), (0.0, SPAN_E1)))


def test_observable_invariants():
    assert QUBIT_OBS.values == (0.0, 1.0)
    with pytest.raises(ValueError):
        GeometricObservable(2, ((0.0, SPAN_E1), (0.0, SPAN_E2)))
    with pytest.raises(PreconditionError):
        GeometricObservable(2, ((0.0, SPAN_E1), (1.0, subspace_from_vectors([PLUS]))))
    with pytest.raises(PreconditionError):
        GeometricObservable(2, ((0.0, SPAN_E1),))


def test_evaluate_examples():
    assert evaluate(QUBIT_OBS, BorelQuery.empty()).rank == 0
    assert evaluate(QUBIT_OBS, BorelQuery.real_line()).same_as(Subspace.full(2))
    assert evaluate(QUBIT_OBS, BorelQuery.closed(0.5, 2)).same_as(SPAN_E2)
    assert evaluate(QUBIT_OBS, BorelQuery.points(0.0)).same_as(SPAN_E1)
    half_open = BorelQuery(intervals=((0.0, 1.0, False, True),))
    assert evaluate(QUBIT_OBS, half_open).same_as(SPAN_E2)


def test_malformed_query():
    with pytest.raises(ValueError):
        BorelQuery(intervals=((2.0, 1.0, True, True),))
    with pytest.raises(ValueError):
        BorelQuery(intervals=((math.nan, 1.0, True, True),))
    with pytest.raises(ValueError):
        BorelQuery(singletons=(math.inf,))


def test_query_membership_endpoints():
    q = BorelQuery(intervals=((-math.inf, 0.0, False, False), (1.0, 2.0, True, False)))
    assert -1e300 in q and 0.0 not in q and 1.0 in q and 2.0 not in q and 1.5 in q


def test_support_examples():
    assert support(QUBIT_OBS) == (0.0, 1.0)
    with_empty = GeometricObservable(2, ((0.0, Subspace.full(2)), (5.0, Subspace.zero(2))))
    assert support(with_empty) == (0.0,)
    assert support(GeometricObservable(3, ((0.0, Subspace.full(3)),))) == (0.0,)


def test_from_hermitian_examples():
    obs = observable_from_hermitian(np.eye(3))
    assert len(obs.atoms) == 1 and obs.atoms[0][0] == pytest.approx(1)
    assert obs.atoms[0][1].same_as(Subspace.full(3))

    obs = observable_from_hermitian(np.diag([0.0, 1.0]))
    assert [s.rank for _, s in obs.atoms] == [1, 1]

    obs = observable_from_hermitian(np.outer(PLUS, PLUS))
    (v0, s0), (v1, s1) = obs.atoms
    assert v0 == pytest.approx(0, abs=1e-15) and v1 == pytest.approx(1)
    assert s0.same_as(subspace_from_vectors([[1, -1]]))
    assert s1.same_as(subspace_from_vectors([[1, 1]]))
    with pytest.raises(PreconditionError):
        observable_from_hermitian(np.array([[0, 1], [0, 0]]))


def test_from_hermitian_merges_close_eigenvalues():
    obs = observable_from_hermitian(np.diag([1.0, 1.0 + 1e-9, 2.0]))
    assert [s.rank for _, s in obs.atoms] == [2, 1]


def test_measure_additivity_and_completeness(rng):
    for _ in range(30):
        d = int(rng.integers(1, 9))
        obs = observable_from_hermitian(np.round(random_hermitian(d, rng)))
        assert evaluate(obs, BorelQuery.real_line()).same_as(Subspace.full(d))
        assert len(support(obs)) >= 1
        cut = float(rng.normal())
        left = BorelQuery(intervals=((-math.inf, cut, False, False),))
        right = BorelQuery(intervals=((cut, math.inf, True, False),))
        whole = evaluate(obs, left | right)
        assert whole.same_as(join(evaluate(obs, left), evaluate(obs, right)))
        assert whole.same_as(Subspace.full(d))


def test_density_examples():
    mixed = GeometricDensityMatrix(2, ((0.5, Subspace.full(2)),))
    assert mixed.trace() == pytest.approx(1)
    m = density_to_operator(mixed).matrix
    np.testing.assert_allclose(m, np.eye(2) / 2)
    assert np.trace(m).real == pytest.approx(1)

    pure = GeometricDensityMatrix(2, ((1.0, subspace_from_vectors([PLUS])),))
    np.testing.assert_allclose(density_to_operator(pure).matrix, np.outer(PLUS, PLUS), atol=1e-15)


def test_density_validation():
    with pytest.raises(PreconditionError):
        GeometricDensityMatrix(2, ((1.0, Subspace.full(2)),))  # (1+1)*1 = 2
    with pytest.raises(PreconditionError):
        GeometricDensityMatrix(2, ((-0.5, SPAN_E1), (1.5, SPAN_E2)))
    with pytest.raises(PreconditionError):
        GeometricDensityMatrix(2, ((0.5, SPAN_E1), (0.5, SPAN_E2)))
    with pytest.raises(PreconditionError):
        DensityOperator(np.diag([1.5, -0.5]))
    with pytest.raises(PreconditionError):
        DensityOperator(np.eye(2))


def _gapped_density(d, rng):
    w = rng.dirichlet(np.ones(d))
    while np.min(np.diff(np.sort(w))) <= 1e-6:
        w = rng.dirichlet(np.ones(d))
    u = np.linalg.qr(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))[0]
    return (u * w) @ u.conj().T


def test_density_roundtrip(rng):
    for _ in range(20):
        m = _gapped_density(6, rng)
        rho = operator_to_density(m)
        assert abs(rho.trace() - 1) <= 1e-9
        assert len(rho.atoms) == 6
        back = density_to_operator(rho).matrix
        assert np.max(np.abs(back - m)) <= 1e-8


def test_degenerate_density_roundtrip(rng):
    u = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))[0]
    m = (u * np.array([0.25, 0.25, 0.5, 0.0])) @ u.conj().T
    rho = operator_to_density(m)
    assert [(round(a, 9), s.rank) for a, s in rho.atoms] == [(0.25, 2), (0.5, 1)]
    assert rho.trace() == pytest.approx(1)
    np.testing.assert_allclose(density_to_operator(rho).matrix, m, atol=1e-12)
    obs = observable_from_hermitian(density_to_operator(rho).matrix)
    assert [round(v, 9) for v in obs.values] == [0.0, 0.25, 0.5]


def test_prob_density(rng):
    mixed = GeometricDensityMatrix(2, ((0.5, Subspace.full(2)),))
    assert prob_density(mixed, Event.ray(E1)) == pytest.approx(0.5)
    assert prob_density(mixed, Event.identity(2)) == pytest.approx(1)
    assert prob_density(mixed, Event.zero(2)) == 0
    for _ in range(30):
        d = int(rng.integers(2, 7))
        rho = operator_to_density(random_density(d, rng))
        e = random_event(d, rng)
        assert abs(prob_density(rho, e) + prob_density(rho, e.complement()) - 1) <= 1e-9
        psi = random_point(d, rng)
        pure = GeometricDensityMatrix(d, ((1.0, subspace_from_vectors([psi.vector])),))
        assert abs(prob_density(pure, e) - born(psi, e)) <= 1e-10


def test_json_roundtrip(rng):
    obs = observable_from_hermitian(random_hermitian(3, rng))
    back = GeometricObservable.from_dict(json.loads(json.dumps(obs.to_dict())))
    assert back.values == pytest.approx(obs.values)
    assert all(a.same_as(b) for (_, a), (_, b) in zip(back.atoms, obs.atoms))
    rho = operator_to_density(random_density(3, rng))
    data = json.loads(json.dumps(rho.to_dict()))
    assert set(data["atoms"][0]) == {"a", "subspace"}
    assert GeometricDensityMatrix.from_dict(data).trace() == pytest.approx(1)
