"""Root frames and eigenframes in R^d."""

from .closure import (
    ClosureResult,
    GroupEnumeration,
    RootFrameVerdict,
    group_enumerate,
    is_root_frame_closure,
    reflection_closure,
)
from .errors import (
    DegenerateFunctionalError,
    DocumentError,
    DocumentParseError,
    DocumentValidationError,
    DocumentVersionError,
    InternalError,
    InvalidInputError,
    InvalidParameterError,
    InvalidWeightError,
    NotAFrameError,
    NotAnEigenframeError,
    RootFrameError,
)
from .frame_analysis import (
    EigenframeDecomposition,
    Frame,
    SpectralReport,
    commutation_check,
    eigenframe_decomposition,
    frame_bounds,
    frame_operator,
    gram_analysis,
    lambda_by_sum,
    multiplicity_bound_check,
    parseval_scaling,
    root_frame_invariants,
    spark_obstruction,
    spectral_analysis,
)
from .geometry import reflect
from .io_formats import emit_report, load_frame, save_frame
from .root_systems import (
    OrbitPartition,
    PositiveSystem,
    RootSystem,
    construct_classical,
    direct_sum,
    orbit_partition,
    positive_subsystem,
    validate_parameter_function,
    verify_root_system,
)
from .tolerances import DEFAULT_TOL, Tolerances

__version__ = "0.1.0"

__all__ = [
    "ClosureResult",
    "commutation_check",
    "construct_classical",
    "DEFAULT_TOL",
    "DegenerateFunctionalError",
    "direct_sum",
    "DocumentError",
    "DocumentParseError",
    "DocumentValidationError",
    "DocumentVersionError",
    "eigenframe_decomposition",
    "EigenframeDecomposition",
    "emit_report",
    "Frame",
    "frame_bounds",
    "frame_operator",
    "gram_analysis",
    "group_enumerate",
    "GroupEnumeration",
    "InternalError",
    "InvalidInputError",
    "InvalidParameterError",
    "InvalidWeightError",
    "is_root_frame_closure",
    "lambda_by_sum",
    "load_frame",
    "multiplicity_bound_check",
    "NotAFrameError",
    "NotAnEigenframeError",
    "orbit_partition",
    "OrbitPartition",
    "parseval_scaling",
    "positive_subsystem",
    "PositiveSystem",
    "reflect",
    "reflection_closure",
    "root_frame_invariants",
    "RootFrameError",
    "RootFrameVerdict",
    "RootSystem",
    "save_frame",
    "spark_obstruction",
    "spectral_analysis",
    "SpectralReport",
    "Tolerances",
    "validate_parameter_function",
    "verify_root_system",
]
