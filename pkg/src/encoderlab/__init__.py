"""Quantum-encoder explainability workbench.

Simulate small quantum registers, encode 2-feature datasets through a
catalog of ten encoder circuits, train a fixed 7-parameter ansatz with
parameter-shift gradients, and analyze encoded states with expectation
heatmaps and PCA comparison maps, headless via the CLI or live over a
streaming HTTP session service.
"""

__version__ = "0.1.0"

from .core import (
    DensityMatrix,
    GateOp,
    StateVector,
    apply_gate,
    density_matrix,
    expectation_z0,
    qubit0_probs,
    run_circuit,
    zero_state,
)
from .datasets import LabeledGrid, generate, grid_features, list_datasets
from .encoders import (
    EncoderTemplate,
    ExpectationGrid,
    bind_angles,
    encode_point,
    encoder_map,
    evolution,
    get_encoder,
    list_encoders,
)
from .errors import (
    CircuitError,
    ConfigurationError,
    ContractError,
    EncoderLabError,
    NotFoundError,
    TransportError,
)

__all__ = [
    "__version__",
    "DensityMatrix",
    "GateOp",
    "StateVector",
    "apply_gate",
    "density_matrix",
    "expectation_z0",
    "qubit0_probs",
    "run_circuit",
    "zero_state",
    "LabeledGrid",
    "generate",
    "grid_features",
    "list_datasets",
    "EncoderTemplate",
    "ExpectationGrid",
    "bind_angles",
    "encode_point",
    "encoder_map",
    "evolution",
    "get_encoder",
    "list_encoders",
    "CircuitError",
    "ConfigurationError",
    "ContractError",
    "EncoderLabError",
    "NotFoundError",
    "TransportError",
]
