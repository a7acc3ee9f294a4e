"""Pointwise tensor checks for real hypersurfaces of complex projective space.

Model shape operators, the structure Jacobi operator, the k-th generalized
Tanaka-Webster torsion tensors and residual scans of the symmetric,
skew-symmetric and vanishing conditions built from them.
"""

from .contact_frame import AlmostContactFrame, DomainError, adapted_frame, contact_residuals
from .curvature import JacobiOperator, gauss_curvature, structure_jacobi
from .gtw import (
    PredictorInapplicable,
    ResidualReport,
    TorsionFamily,
    cho_operator,
    condition_residuals,
    gtw_parallelism_residuals,
    rxit,
    torsion_operator,
    typeA_residual_predictor,
)
from .hypersurface_models import (
    HypersurfaceModel,
    MaedaSingularity,
    ModelKind,
    classify_type_a,
    geodesic_sphere,
    hopf_model,
    nonhopf_model,
    tube_a2,
)

__version__ = "0.1.0"
