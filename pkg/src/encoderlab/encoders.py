"""The encoder catalog: ten 2-qubit templates mapping features to rotation angles.

Each template is an ordered gate list whose rotation angles are bound to one
of the two input features with a fixed scale of π, so the feature range [0,1]
sweeps the full rotation range [0, π]. The catalog spans rotation axes,
entanglement placement, cross-feature binding, and re-uploading.

Grid evaluation (the Encoder Map and the stepwise evolution frames) runs on
the batched kernel; single points go through the object API in `core`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .core import GateOp
from .datasets import LabeledGrid, grid_features
from .errors import CircuitError, NotFoundError

ANGLE_SCALE = math.pi

_MAX_GATES = 8


@dataclass(frozen=True)
class FeatureBinding:
    """Which feature feeds a rotation and the radians-per-unit multiplier."""

    feature_index: int
    scale: float = ANGLE_SCALE

    def __post_init__(self) -> None:
        if self.feature_index not in (0, 1):
            raise CircuitError(f"feature_index must be 0 or 1, got {self.feature_index}")
        if not math.isfinite(self.scale) or self.scale == 0:
            raise CircuitError("binding scale must be finite and nonzero")


@dataclass(frozen=True)
class EncoderGate:
    """A template gate: rotations carry a FeatureBinding, CNOTs a control qubit."""

    kind: str
    target: int
    control: int | None = None
    binding: FeatureBinding | None = None

    def __post_init__(self) -> None:
        if self.kind == "CNOT":
            if self.control is None or self.binding is not None:
                raise CircuitError("CNOT takes a control and no binding")
            if self.control == self.target:
                raise CircuitError("control and target must differ")
        else:
            if self.kind not in ("RX", "RY", "RZ"):
                raise CircuitError(f"unknown gate kind {self.kind!r}")
            if self.binding is None or self.control is not None:
                raise CircuitError(f"{self.kind} takes a binding and no control")

    def label(self) -> str:
        if self.kind == "CNOT":
            return f"CNOT q{self.control}->q{self.target}"
        scale = self.binding.scale
        prefix = "π" if abs(scale - math.pi) < 1e-12 else f"{scale:.3g}"
        return f"{self.kind}({prefix}·f{self.binding.feature_index}) q{self.target}"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "target": self.target,
            "control": self.control,
            "feature_index": None if self.binding is None else self.binding.feature_index,
            "scale": None if self.binding is None else self.binding.scale,
        }


@dataclass(frozen=True)
class EncoderTemplate:
    """An ordered, feature-bound gate sequence from the catalog.

    Templates that deliberately ignore a feature must say so by setting
    degenerate=True; the shipped catalog contains none.
    """

    id: str
    display_name: str
    gates: tuple[EncoderGate, ...]
    description: str
    degenerate: bool = False

    def __post_init__(self) -> None:
        if not 1 <= len(self.gates) <= _MAX_GATES:
            raise CircuitError(f"encoder must have 1..{_MAX_GATES} gates")
        used = {g.binding.feature_index for g in self.gates if g.binding is not None}
        if used != {0, 1} and not self.degenerate:
            raise CircuitError("both features must influence the state")

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "display_name": self.display_name,
            "description": self.description,
            "gates": [g.to_json() for g in self.gates],
        }


@dataclass(frozen=True)
class ExpectationGrid:
    """G×G expectation values in [−1, 1], indexed [row = f1 bin][col = f0 bin]."""

    resolution: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (self.resolution, self.resolution):
            raise CircuitError(f"expected {self.resolution}x{self.resolution} grid")
        if np.max(np.abs(v)) > 1 + 1e-9:
            raise CircuitError("expectation values must lie in [-1, 1]")
        object.__setattr__(self, "values", np.clip(v, -1.0, 1.0))

    def values_flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    def to_json(self) -> dict:
        return {
            "resolution": self.resolution,
            "values": [[float(x) for x in row] for row in self.values],
        }


@dataclass(frozen=True)
class EvolutionFrame:
    """Grid snapshot after the first step_index encoder gates."""

    step_index: int
    gate_label: str
    expectation: ExpectationGrid
    prob0: np.ndarray = field(repr=False)
    prob1: np.ndarray = field(repr=False)

    def to_json(self) -> dict:
        return {
            "step_index": self.step_index,
            "gate_label": self.gate_label,
            "expectation": self.expectation.to_json(),
            "prob0": [[float(x) for x in row] for row in self.prob0],
            "prob1": [[float(x) for x in row] for row in self.prob1],
        }


def _rot(kind: str, target: int, feature: int) -> EncoderGate:
    return EncoderGate(kind, target, binding=FeatureBinding(feature))


def _cnot(control: int, target: int) -> EncoderGate:
    return EncoderGate("CNOT", target, control=control)


_CATALOG = (
    EncoderTemplate(
        "E01", "RY-RY",
        (_rot("RY", 0, 0), _rot("RY", 1, 1)),
        "independent RY angle encoding per qubit",
    ),
    EncoderTemplate(
        "E02", "RX-RX",
        (_rot("RX", 0, 0), _rot("RX", 1, 1)),
        "independent RX angle encoding per qubit",
    ),
    EncoderTemplate(
        "E03", "RY-RY-CNOT",
        (_rot("RY", 0, 0), _rot("RY", 1, 1), _cnot(0, 1)),
        "RY encoding entangled by a CNOT",
    ),
    EncoderTemplate(
        "E04", "RX-RY-RY-CNOT",
        (_rot("RX", 0, 0), _rot("RY", 0, 1), _rot("RY", 1, 1), _cnot(0, 1)),
        "stacked RX/RY on q0 sharing f1, then CNOT",
    ),
    EncoderTemplate(
        "E05", "RY-RZ-RY-RZ",
        (_rot("RY", 0, 0), _rot("RZ", 0, 1), _rot("RY", 1, 1), _rot("RZ", 1, 0)),
        "RY per qubit plus cross-feature RZ phases",
    ),
    EncoderTemplate(
        "E06", "RX-RX-CNOT-RY",
        (_rot("RX", 0, 0), _rot("RX", 1, 1), _cnot(0, 1), _rot("RY", 1, 0)),
        "RX encoding, CNOT, then an f0 re-upload on q1",
    ),
    EncoderTemplate(
        "E07", "RY-RY-CNOT-RY-RY",
        (_rot("RY", 0, 0), _rot("RY", 1, 1), _cnot(0, 1), _rot("RY", 0, 0), _rot("RY", 1, 1)),
        "RY encoding re-uploaded after a CNOT",
    ),
    EncoderTemplate(
        "E08", "RY-RY-CNOT crossed",
        (_rot("RY", 0, 1), _rot("RY", 1, 0), _cnot(0, 1)),
        "cross-bound RY encoding: q0 reads f1, q1 reads f0",
    ),
    EncoderTemplate(
        "E09", "RX-RY-RX-RY-CNOT",
        (_rot("RX", 0, 0), _rot("RY", 0, 0), _rot("RX", 1, 1), _rot("RY", 1, 1), _cnot(1, 0)),
        "two-axis encoding per qubit, CNOT driven by q1",
    ),
    EncoderTemplate(
        "E10", "RY-CNOT-RY-CNOT",
        (_rot("RY", 0, 0), _cnot(0, 1), _rot("RY", 1, 1), _cnot(1, 0)),
        "alternating RY and CNOT layers",
    ),
)

_BY_ID = {t.id: t for t in _CATALOG}

ENCODER_IDS = tuple(t.id for t in _CATALOG)


def get_encoder(encoder_id: str) -> EncoderTemplate:
    if encoder_id not in _BY_ID:
        raise NotFoundError(f"unknown encoder {encoder_id!r}")
    return _BY_ID[encoder_id]


def list_encoders() -> list[dict]:
    """Catalog as JSON-ready dicts, stable order."""
    return [t.to_json() for t in _CATALOG]


def _clamp_features(values: np.ndarray) -> np.ndarray:
    if values.size and (values.min() < 0.0 or values.max() > 1.0):
        warnings.warn("features outside [0, 1] were clamped", stacklevel=3)
        return np.clip(values, 0.0, 1.0)
    return values


def bind_angles(template: EncoderTemplate, features: tuple[float, float]) -> list[GateOp]:
    """Instantiate the template's gates for one feature pair.

    Features outside [0, 1] are clamped with a warning rather than rejected.
    """
    feats = _clamp_features(np.asarray(features, dtype=np.float64))
    ops = []
    for gate in template.gates:
        if gate.kind == "CNOT":
            ops.append(GateOp.cnot(gate.control, gate.target))
        else:
            angle = gate.binding.scale * float(feats[gate.binding.feature_index])
            ops.append(GateOp(gate.kind, gate.target, angle=angle))
    return ops


def encode_point(template: EncoderTemplate, features: tuple[float, float]):
    """Encode one feature pair into a 2-qubit StateVector via the object API."""
    from .core import run_circuit

    return run_circuit(bind_angles(template, features), 2)


def packed_circuit(template: EncoderTemplate, f0: np.ndarray, f1: np.ndarray):
    """Kernel-ready (ops, angles) arrays for a whole feature batch."""
    f0 = _clamp_features(np.asarray(f0, dtype=np.float64))
    f1 = _clamp_features(np.asarray(f1, dtype=np.float64))
    feats = (f0, f1)
    spec = []
    for gate in template.gates:
        if gate.kind == "CNOT":
            spec.append(("CNOT", gate.target, gate.control, 0.0))
        else:
            spec.append(
                (gate.kind, gate.target, None, gate.binding.scale * feats[gate.binding.feature_index])
            )
    return _kernels.pack_circuit(spec, len(f0))


def encode_batch(template: EncoderTemplate, f0: np.ndarray, f1: np.ndarray) -> np.ndarray:
    """Encoded statevectors for a feature batch, shape (n, 4)."""
    ops, angles = packed_circuit(template, f0, f1)
    return _kernels.simulate_batch(ops, angles)


def _resolution_of(grid: LabeledGrid | int) -> int:
    return grid.resolution if isinstance(grid, LabeledGrid) else int(grid)


def encoder_map(template: EncoderTemplate, grid: LabeledGrid | int) -> ExpectationGrid:
    """The Encoder Map: ⟨Z⟩ on q0 of the encoded state, per grid cell.

    Accepts a LabeledGrid or a bare resolution; only the cell geometry is used.
    """
    resolution = _resolution_of(grid)
    f0, f1 = grid_features(resolution)
    states = encode_batch(template, f0, f1)
    values = _kernels.expectation_z0_batch(states).reshape(resolution, resolution)
    return ExpectationGrid(resolution, values)


def evolution(template: EncoderTemplate, grid: LabeledGrid | int) -> list[EvolutionFrame]:
    """Stepwise grid snapshots: frame k covers the first k gates; frame 0 is |00⟩."""
    resolution = _resolution_of(grid)
    f0, f1 = grid_features(resolution)
    ops, angles = packed_circuit(template, f0, f1)
    frames = []
    for k in range(len(template.gates) + 1):
        states = _kernels.simulate_batch(ops[:k], angles[:k])
        p0, p1 = _kernels.prob_q0_batch(states)
        expect = _kernels.expectation_z0_batch(states)
        frames.append(
            EvolutionFrame(
                step_index=k,
                gate_label="initial" if k == 0 else template.gates[k - 1].label(),
                expectation=ExpectationGrid(resolution, expect.reshape(resolution, resolution)),
                prob0=p0.reshape(resolution, resolution),
                prob1=p1.reshape(resolution, resolution),
            )
        )
    return frames
