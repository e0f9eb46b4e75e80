"""Maximum-directivity beamforming for uniform rectangular arrays with mutual coupling."""

__version__ = "0.1.0"

from .array_model import (
    BROADSIDE,
    ArrayGeometry,
    Direction,
    ElementIndex,
    array_output,
    element_index,
    flat_index,
    spatial_frequencies,
    steering_vector,
)
from .coupling import CouplingMatrix, coupling_entries, coupling_entry_oracle, coupling_matrix, sinc
from .directivity import (
    DirectivityResult,
    OptimalExcitation,
    average_max_directivity,
    directivity,
    directivity_quadrature_oracle,
    eigen_crosscheck,
    max_directivity,
    optimal_excitation,
    to_db,
)
from .errors import (
    ConfigError,
    DimensionMismatch,
    FactorizationFailure,
    PowerIterationStalled,
    QuadratureNotConverged,
    SuperdirectivityError,
    ZeroExcitation,
)
from .patterns import (
    PatternGrid,
    SweepResult,
    endfire_plane_cut,
    fixed_excitation_grid,
    pattern_grid,
    spacing_sweep,
    uncoupled_reference_db,
)
