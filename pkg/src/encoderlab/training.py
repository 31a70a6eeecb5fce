"""Fixed-ansatz QNN training: forward model, MSE loss, parameter-shift gradients,
and the epoch loop with live pause/resume/stop control.

The trainable circuit is a fixed 7-parameter layout appended to the encoder:
three layers of (RY on q0, RY on q1, CNOT q0→q1) followed by a final RY on
q0, 10 gates total. The model output is ⟨Z⟩ on qubit 0 in [−1, 1], trained
against ±1 labels with full-batch gradient descent.

Gradients use the parameter-shift rule, which is exact for this gate set:
∂f/∂θ = [f(θ+π/2) − f(θ−π/2)] / 2, composed through the MSE chain rule.
Given a seed, a run is bit-reproducible; pausing and resuming never touches
the math, so interrupted and uninterrupted runs emit identical records.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _kernels
from .core import GateOp
from .datasets import generate
from .encoders import EncoderTemplate, ExpectationGrid, bind_angles, encode_batch, get_encoder
from .errors import ConfigurationError, ContractError, TransportError

NUM_PARAMS = 7

MIN_EPOCHS, MAX_EPOCHS = 1, 10_000
MIN_LR, MAX_LR = 1e-5, 10.0


@dataclass(frozen=True)
class TrainingConfig:
    """One run's full recipe; immutable, and with the seed it pins every record."""

    dataset_id: str
    encoder_id: str
    epochs: int = 100
    learning_rate: float = 0.5
    seed: int = 7
    resolution: int = 16

    def validate(self) -> None:
        if not MIN_EPOCHS <= self.epochs <= MAX_EPOCHS:
            raise ConfigurationError(f"epochs must be in [{MIN_EPOCHS}, {MAX_EPOCHS}]")
        if not MIN_LR <= self.learning_rate <= MAX_LR:
            raise ConfigurationError(f"learning_rate must be in [{MIN_LR}, {MAX_LR}]")
        if self.seed < 0:
            raise ConfigurationError("seed must be nonnegative")
        from .datasets import MAX_RESOLUTION, MIN_RESOLUTION

        if not MIN_RESOLUTION <= self.resolution <= MAX_RESOLUTION:
            raise ConfigurationError(
                f"resolution must be in [{MIN_RESOLUTION}, {MAX_RESOLUTION}]"
            )

    def to_json(self) -> dict:
        return {
            "dataset_id": self.dataset_id,
            "encoder_id": self.encoder_id,
            "epochs": self.epochs,
            "learning_rate": self.learning_rate,
            "seed": self.seed,
            "resolution": self.resolution,
        }


@dataclass(frozen=True)
class EpochRecord:
    """State after one gradient step: metrics plus the full decision surface."""

    epoch: int
    loss: float
    accuracy: float
    params: np.ndarray = field(repr=False)
    trained_map: ExpectationGrid = field(repr=False)

    def to_json(self, include_params: bool = False) -> dict:
        doc = {
            "epoch": self.epoch,
            "loss": self.loss,
            "accuracy": self.accuracy,
            "trained_map": [float(v) for v in self.trained_map.values_flat()],
        }
        if include_params:
            doc["params"] = [float(p) for p in self.params]
        return doc


class RunControl:
    """Thread-safe pause/resume/stop switchboard, observed between epochs.

    The training loop calls checkpoint() at each epoch boundary: it blocks
    while paused and reports whether a stop was requested. Controllers call
    the request_* methods from any thread.
    """

    def __init__(self) -> None:
        self._cond = threading.Condition()
        self._paused = False
        self._stopped = False

    def request_pause(self) -> None:
        with self._cond:
            self._paused = True

    def request_resume(self) -> None:
        with self._cond:
            self._paused = False
            self._cond.notify_all()

    def request_stop(self) -> None:
        with self._cond:
            self._stopped = True
            self._cond.notify_all()

    @property
    def paused(self) -> bool:
        with self._cond:
            return self._paused

    @property
    def stopped(self) -> bool:
        with self._cond:
            return self._stopped

    def checkpoint(self) -> bool:
        """Block while paused; return True when the run should stop."""
        with self._cond:
            while self._paused and not self._stopped:
                self._cond.wait()
            return self._stopped


def ansatz_gates(params: np.ndarray) -> list[GateOp]:
    """The fixed 10-gate trainable layout as object-API gates."""
    params = _check_params(params)
    gates = []
    for layer in range(3):
        gates.append(GateOp.ry(0, float(params[2 * layer])))
        gates.append(GateOp.ry(1, float(params[2 * layer + 1])))
        gates.append(GateOp.cnot(0, 1))
    gates.append(GateOp.ry(0, float(params[6])))
    return gates


def _check_params(params) -> np.ndarray:
    arr = np.asarray(params, dtype=np.float64)
    if arr.shape != (NUM_PARAMS,):
        raise ContractError(f"expected {NUM_PARAMS} parameters, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ContractError("parameters must be finite")
    return arr


def _packed_ansatz(params: np.ndarray, n_states: int):
    spec = []
    for layer in range(3):
        spec.append(("RY", 0, None, params[2 * layer]))
        spec.append(("RY", 1, None, params[2 * layer + 1]))
        spec.append(("CNOT", 1, 0, 0.0))
    spec.append(("RY", 0, None, params[6]))
    return _kernels.pack_circuit(spec, n_states)


def _eval_batch(encoded: np.ndarray, params: np.ndarray) -> np.ndarray:
    """Model outputs over pre-encoded states: apply the ansatz, read ⟨Z⟩ on q0."""
    ops, angles = _packed_ansatz(params, encoded.shape[0])
    return _kernels.expectation_z0_batch(_kernels.apply_batch(encoded, ops, angles))


def predict(values) -> np.ndarray:
    """Class decision per output: +1 when the value is ≥ 0, else −1."""
    return np.where(np.asarray(values, dtype=np.float64) >= 0, 1.0, -1.0)


def _check_pair(outputs, labels) -> tuple[np.ndarray, np.ndarray]:
    out = np.asarray(outputs, dtype=np.float64)
    lab = np.asarray(labels, dtype=np.float64)
    if out.shape != lab.shape or out.ndim != 1 or out.size == 0:
        raise ContractError("outputs and labels must be equal-length nonempty vectors")
    return out, lab


def loss(outputs, labels) -> float:
    """Mean squared error between model outputs and ±1 labels."""
    out, lab = _check_pair(outputs, labels)
    return float(np.mean((out - lab) ** 2))


def accuracy(outputs, labels) -> float:
    """Fraction of outputs whose sign decision matches the label."""
    out, lab = _check_pair(outputs, labels)
    return float(np.mean(predict(out) == lab))


def forward(encoder: EncoderTemplate, params, features: tuple[float, float]) -> float:
    """Model output for a single feature pair, via the object API."""
    from .core import expectation_z0, run_circuit

    gates = bind_angles(encoder, features) + ansatz_gates(params)
    return expectation_z0(run_circuit(gates, 2))


def trained_map(encoder: EncoderTemplate, params, grid_or_resolution) -> ExpectationGrid:
    """The decision surface: forward evaluated at every grid cell."""
    from .datasets import LabeledGrid, grid_features

    params = _check_params(params)
    resolution = (
        grid_or_resolution.resolution
        if isinstance(grid_or_resolution, LabeledGrid)
        else int(grid_or_resolution)
    )
    f0, f1 = grid_features(resolution)
    encoded = encode_batch(encoder, f0, f1)
    values = _eval_batch(encoded, params)
    return ExpectationGrid(resolution, values.reshape(resolution, resolution))


def _grad_from_states(
    encoded: np.ndarray, labels: np.ndarray, params: np.ndarray, outputs: np.ndarray
) -> np.ndarray:
    """∂(MSE)/∂θ via the shift rule: (2/N)·Σ residual · [f(θ+π/2) − f(θ−π/2)]/2."""
    n = labels.size
    residual = outputs - labels
    grad = np.empty(NUM_PARAMS)
    for k in range(NUM_PARAMS):
        shifted = params.copy()
        shifted[k] += np.pi / 2
        plus = _eval_batch(encoded, shifted)
        shifted[k] -= np.pi
        minus = _eval_batch(encoded, shifted)
        grad[k] = (2.0 / n) * np.sum(residual * (plus - minus) / 2.0)
    return grad


def parameter_shift_grad(encoder: EncoderTemplate, params, grid) -> np.ndarray:
    """Exact MSE gradient over a labeled grid with respect to each ansatz parameter."""
    params = _check_params(params)
    f0, f1 = grid.features()
    encoded = encode_batch(encoder, f0, f1)
    outputs = _eval_batch(encoded, params)
    return _grad_from_states(encoded, grid.labels_flat(), params, outputs)


def initial_params(seed: int) -> np.ndarray:
    """Seeded uniform [0, 2π) draw for the 7 ansatz angles."""
    return np.random.default_rng(seed).uniform(0.0, 2.0 * np.pi, NUM_PARAMS)


def train(
    config: TrainingConfig,
    control: RunControl | None = None,
    emit: Callable[[EpochRecord], None] | None = None,
) -> EpochRecord | None:
    """Full-batch gradient descent; emits an EpochRecord after every epoch.

    Control signals are honored at epoch boundaries: pause blocks progress,
    resume continues with unchanged params, stop ends the run. Returns the
    last record, or None if stopped before the first epoch completed.

    Raises:
        NotFoundError: unknown dataset or encoder id.
        ConfigurationError: hyperparameters out of range.
        TransportError: the emit sink raised; the run aborts.
    """
    config.validate()
    encoder = get_encoder(config.encoder_id)
    grid = generate(config.dataset_id, config.resolution)
    f0, f1 = grid.features()
    labels = grid.labels_flat()
    encoded = encode_batch(encoder, f0, f1)

    params = initial_params(config.seed)
    outputs = _eval_batch(encoded, params)
    resolution = config.resolution
    last: EpochRecord | None = None

    for epoch in range(1, config.epochs + 1):
        if control is not None and control.checkpoint():
            break
        grad = _grad_from_states(encoded, labels, params, outputs)
        params = params - config.learning_rate * grad
        outputs = _eval_batch(encoded, params)
        record = EpochRecord(
            epoch=epoch,
            loss=loss(outputs, labels),
            accuracy=accuracy(outputs, labels),
            params=params.copy(),
            trained_map=ExpectationGrid(resolution, outputs.reshape(resolution, resolution)),
        )
        last = record
        if emit is not None:
            try:
                emit(record)
            except Exception as exc:
                raise TransportError(f"per-epoch sink failed at epoch {epoch}") from exc
    return last
