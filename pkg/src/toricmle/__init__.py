"""Maximum likelihood estimation on scaled toric models."""

from .errors import ToricError
from .model import (
    DataVector,
    MleResult,
    ToricModel,
    birch_residual,
    evaluate_map,
    jacobian,
    likelihood_residual,
    log_likelihood,
    sufficient_statistics,
    validate_model,
)
from .ips import IpsConfig, gis_precondition, ips_solve, recover_theta
from .homotopy import (
    PathTrace,
    TrackerConfig,
    davidenko_tangent,
    homotopy_residual,
    newton_correct,
    solve_homotopy,
    track,
)
from .polynomial import RationalPoly, distinct_root_count

__version__ = "0.1.0"
