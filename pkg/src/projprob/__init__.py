"""Quantum probability of events realized on complex projective space.

Events are orthogonal projections (equivalently, projective subspaces),
states are points of projective space, and every probability below depends
only on those geometric objects.
"""

from .errors import DimensionMismatchError, PreconditionError, ProjprobError
from .kernel import (
    DEFAULT_TOL,
    hermitian_eig,
    inner,
    operator_norm,
    orthonormalize,
    random_unitary,
)
from .events import (
    Event,
    StatePoint,
    Subspace,
    event_of,
    join,
    meet,
    ortho,
    projective_dim,
    range_of,
    state_point,
    subspace_from_vectors,
)
from .probability import (
    InterferenceReport,
    TimedSequence,
    born,
    collapse,
    conditional,
    consecutive,
    consecutive_events,
    consecutive_via_bases,
    geodesic_distance,
    independence,
    interference,
    timed_consecutive,
)
from .amplitudes import (
    amplitude,
    amplitude_via_symbol,
    expected_value,
    lower_symbol_sup,
    quadratic_form,
    reconstruct_from_quadratic_form,
)
from .observables import (
    BorelQuery,
    DensityOperator,
    GeometricDensityMatrix,
    GeometricObservable,
    density_to_operator,
    evaluate,
    observable_from_hermitian,
    operator_to_density,
    prob_density,
    support,
)
from .sampler import SampleReport, Trajectory, estimate, sample_trajectory

__version__ = "0.1.0"
