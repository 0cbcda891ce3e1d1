"""Complex coordinates on the Birkhoff polytopes of order 3 and 4, one-parameter
Markov semigroups inside them, and divisibility classification of symmetric
bistochastic 3x3 matrices."""
from .classifier import Classification, MarkovClass, classify, classify_matrix, theta_of
from .errors import DomainError
from .polytope3 import (
    CoordUW,
    HalfPlaneCoord,
    bistochastic_extreme_points,
    boundary_f,
    compose,
    from_coords,
    half_plane_of,
    is_bistochastic,
    is_positive_semidefinite,
    rep2,
    spectrum,
    to_coords,
)
from .semigroups import SemigroupSpec, expm, general_point, generator, neutral_family_point, sym_point

__version__ = "0.1.0"
