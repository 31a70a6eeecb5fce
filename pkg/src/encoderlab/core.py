"""Exact statevector and density-matrix simulation for small registers.

Gate set is {RX, RY, RZ, CNOT} with the standard half-angle convention
(RX(t) = cos(t/2)·I − i·sin(t/2)·X, and so on). Qubit 0 is the MOST
significant bit of the basis index, so a 2-qubit register is ordered
|q0 q1⟩: index = 2·bit(q0) + bit(q1).

Everything here is a pure function on immutable values; the batched fast
path used by training and the grid maps lives in `_kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CircuitError, ConfigurationError, ContractError

MAX_QUBITS = 10

ROTATION_KINDS = ("RX", "RY", "RZ")
GATE_KINDS = ROTATION_KINDS + ("CNOT",)

NORM_TOL = 1e-10

# 2x2 rotation matrices, half-angle convention
_ROTATION_MATRIX = {
    "RX": lambda t: np.array(
        [[np.cos(t / 2), -1j * np.sin(t / 2)], [-1j * np.sin(t / 2), np.cos(t / 2)]],
        dtype=np.complex128,
    ),
    "RY": lambda t: np.array(
        [[np.cos(t / 2), -np.sin(t / 2)], [np.sin(t / 2), np.cos(t / 2)]],
        dtype=np.complex128,
    ),
    "RZ": lambda t: np.array(
        [[np.exp(-1j * t / 2), 0], [0, np.exp(1j * t / 2)]], dtype=np.complex128
    ),
}


@dataclass(frozen=True)
class GateOp:
    """One gate: a Pauli rotation (kind, target, angle) or a CNOT (control, target).

    Invariants are enforced at construction: rotations carry an angle and no
    control, CNOT carries a control and no angle, control never equals target.
    """

    kind: str
    target: int
    control: int | None = None
    angle: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        if self.kind == "CNOT":
            if self.control is None:
                raise CircuitError("CNOT requires a control qubit")
            if self.angle is not None:
                raise CircuitError("CNOT takes no angle")
            if self.control == self.target:
                raise CircuitError("control and target must differ")
        else:
            if self.control is not None:
                raise CircuitError(f"{self.kind} takes no control qubit")
            if self.angle is None:
                raise CircuitError(f"{self.kind} requires an angle")
            if not np.isfinite(self.angle):
                raise CircuitError(f"{self.kind} angle must be finite")

    @staticmethod
    def rx(target: int, angle: float) -> "GateOp":
        return GateOp("RX", target, angle=angle)

    @staticmethod
    def ry(target: int, angle: float) -> "GateOp":
        return GateOp("RY", target, angle=angle)

    @staticmethod
    def rz(target: int, angle: float) -> "GateOp":
        return GateOp("RZ", target, angle=angle)

    @staticmethod
    def cnot(control: int, target: int) -> "GateOp":
        return GateOp("CNOT", target, control=control)


@dataclass(frozen=True)
class StateVector:
    """Normalized amplitude vector of an n-qubit register, |0...0⟩ first.

    Attributes:
        num_qubits: register width n.
        amplitudes: complex vector of length 2**n; qubit 0 is the most
            significant bit of the basis index.
    """

    num_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        object.__setattr__(self, "amplitudes", amps)
        if amps.shape != (2**self.num_qubits,):
            raise ContractError(
                f"expected {2**self.num_qubits} amplitudes, got {amps.shape}"
            )
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise ContractError(f"state not normalized: |psi|^2 = {norm}")
        if not np.all(np.isfinite(amps.view(np.float64))):
            raise ContractError("amplitudes must be finite")

    def probabilities(self) -> np.ndarray:
        """Measurement probabilities per basis state: |amplitude|²."""
        return np.abs(self.amplitudes) ** 2

    def density_matrix(self) -> "DensityMatrix":
        return density_matrix(self)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian trace-1 matrix ρ; for the pure states built here, ρ = |ψ⟩⟨ψ|."""

    num_qubits: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=np.complex128)
        object.__setattr__(self, "entries", m)
        dim = 2**self.num_qubits
        if m.shape != (dim, dim):
            raise ContractError(f"expected {dim}x{dim} matrix, got {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > 1e-10:
            raise ContractError("density matrix must be Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-10:
            raise ContractError("density matrix must have trace 1")

    def purity_defect(self) -> float:
        """max |ρ² − ρ|; 0 (within 1e-9) for pure states."""
        return float(np.max(np.abs(self.entries @ self.entries - self.entries)))


def zero_state(num_qubits: int) -> StateVector:
    """The all-|0⟩ register.

    Raises:
        ConfigurationError: if num_qubits is outside [1, 10].
    """
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise ConfigurationError(
            f"num_qubits must be in [1, {MAX_QUBITS}], got {num_qubits}"
        )
    amps = np.zeros(2**num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


def _check_index(q: int, num_qubits: int) -> None:
    if not 0 <= q < num_qubits:
        raise CircuitError(f"qubit index {q} out of range for {num_qubits} qubits")


def apply_gate(state: StateVector, gate: GateOp) -> StateVector:
    """Apply one gate, acting as identity on every other qubit."""
    n = state.num_qubits
    _check_index(gate.target, n)
    tensor = state.amplitudes.reshape((2,) * n)
    if gate.kind == "CNOT":
        _check_index(gate.control, n)
        moved = np.moveaxis(tensor, (gate.control, gate.target), (0, 1)).copy()
        moved[1] = moved[1, ::-1]  # flip target where control = 1
        out = np.moveaxis(moved, (0, 1), (gate.control, gate.target))
    else:
        m = _ROTATION_MATRIX[gate.kind](gate.angle)
        moved = np.moveaxis(tensor, gate.target, 0)
        out = np.moveaxis(np.tensordot(m, moved, axes=([1], [0])), 0, gate.target)
    return StateVector(n, np.ascontiguousarray(out).reshape(-1))


def run_circuit(gates: list[GateOp], num_qubits: int) -> StateVector:
    """Fold apply_gate over gates starting from zero_state(num_qubits)."""
    state = zero_state(num_qubits)
    for gate in gates:
        state = apply_gate(state, gate)
    return state


def density_matrix(state: StateVector) -> DensityMatrix:
    """ρ = |ψ⟩⟨ψ| of a pure state."""
    psi = state.amplitudes
    return DensityMatrix(state.num_qubits, np.outer(psi, psi.conj()))


def qubit0_probs(state: StateVector) -> tuple[float, float]:
    """(Pr(q0 = 0), Pr(q0 = 1)): probability mass split by the first qubit's bit."""
    probs = state.probabilities().reshape(2, -1)
    p0 = float(np.sum(probs[0]))
    p1 = float(np.sum(probs[1]))
    return p0, p1


def expectation_z0(state: StateVector) -> float:
    """⟨Z⟩ on qubit 0: the sum of basis probabilities with q0 = 0 minus those with q0 = 1."""
    p0, p1 = qubit0_probs(state)
    return p0 - p1
