"""Tripartite qubit states near black-hole horizons: dressing, reduction,
entanglement and teleportation measures."""

from .errors import (
    ConfigurationError,
    ContractError,
    DomainError,
    HorizonQIError,
    LabelError,
    NotPSDError,
    NumericError,
    ShapeError,
    UnsupportedError,
)
from .numkernel import hermitian_eig, override_tolerances, psd_sqrt, tolerances
from .qstate import (
    DensityOp,
    PureState,
    dumps_state,
    loads_state,
    make_family,
    make_ghz,
    make_w,
    make_w1,
    partial_trace,
    permute_to_weight_order,
    to_density,
)
from .horizon import (
    BlackHoleModel,
    ModeAmplitudes,
    Scenario,
    build_reduced,
    dress_state,
    hawking_temperature,
    mode_amplitudes,
)
from .entanglement import concurrence, one_tangle, residual_tangle
from .teleport import correlation_matrix, fully_entangled_fraction, n_value, teleportation_fidelity

__version__ = "0.1.0"
