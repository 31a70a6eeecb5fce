"""Batched 2-qubit circuit evaluation: the hot path behind grid maps and training.

A packed circuit is an int32 ops array of rows [kind_code, target, control]
plus a float64 angles array of shape (num_ops, n_states), one angle per op
per state, so feature-bound encoder gates and fixed ansatz gates share one
representation. States are (n_states, 4) complex with qubit 0 as the most
significant bit (amplitude order |00⟩, |01⟩, |10⟩, |11⟩).

Two interchangeable implementations of the simulation kernel exist: a numba
@njit version (default when numba imports) and a vectorized numpy version.
Set ENCODERLAB_NO_NUMBA=1 to force the numpy path; the selection happens once
at import. `benchmarks/bench_kernels.py` times both.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    NUMBA_AVAILABLE = False

RX, RY, RZ, CNOT = 0, 1, 2, 3
KIND_CODE = {"RX": RX, "RY": RY, "RZ": RZ, "CNOT": CNOT}


def pack_circuit(gates, n_states: int):
    """Pack (kind, target, control, angle) tuples into kernel arrays.

    angle may be a scalar (broadcast across states) or an (n_states,) array;
    it is ignored for CNOT rows.
    """
    ops = np.empty((len(gates), 3), dtype=np.int32)
    angles = np.zeros((len(gates), n_states), dtype=np.float64)
    for i, (kind, target, control, angle) in enumerate(gates):
        code = KIND_CODE[kind]
        ops[i, 0] = code
        ops[i, 1] = target
        ops[i, 2] = -1 if control is None else control
        if code != CNOT:
            angles[i, :] = angle
    return ops, angles


def _apply_loop(states, ops, angles):
    # scalar per-state loop; compiled by numba below
    n_ops = ops.shape[0]
    n = states.shape[0]
    out = np.empty((n, 4), dtype=np.complex128)
    for s in range(n):
        v0 = states[s, 0]
        v1 = states[s, 1]
        v2 = states[s, 2]
        v3 = states[s, 3]
        for i in range(n_ops):
            kind = ops[i, 0]
            target = ops[i, 1]
            if kind == 3:
                if ops[i, 2] == 0:  # control q0: flip q1 where q0 = 1
                    v2, v3 = v3, v2
                else:  # control q1: flip q0 where q1 = 1
                    v1, v3 = v3, v1
                continue
            half = angles[i, s] / 2.0
            c = np.cos(half)
            sn = np.sin(half)
            if kind == 0:  # RX
                if target == 0:
                    v0, v2 = c * v0 - 1j * sn * v2, -1j * sn * v0 + c * v2
                    v1, v3 = c * v1 - 1j * sn * v3, -1j * sn * v1 + c * v3
                else:
                    v0, v1 = c * v0 - 1j * sn * v1, -1j * sn * v0 + c * v1
                    v2, v3 = c * v2 - 1j * sn * v3, -1j * sn * v2 + c * v3
            elif kind == 1:  # RY
                if target == 0:
                    v0, v2 = c * v0 - sn * v2, sn * v0 + c * v2
                    v1, v3 = c * v1 - sn * v3, sn * v1 + c * v3
                else:
                    v0, v1 = c * v0 - sn * v1, sn * v0 + c * v1
                    v2, v3 = c * v2 - sn * v3, sn * v2 + c * v3
            else:  # RZ
                lo = c - 1j * sn
                hi = c + 1j * sn
                if target == 0:
                    v0 = lo * v0
                    v1 = lo * v1
                    v2 = hi * v2
                    v3 = hi * v3
                else:
                    v0 = lo * v0
                    v1 = hi * v1
                    v2 = lo * v2
                    v3 = hi * v3
        out[s, 0] = v0
        out[s, 1] = v1
        out[s, 2] = v2
        out[s, 3] = v3
    return out


def apply_batch_numpy(states, ops, angles):
    """Vectorized reference implementation of the same kernel."""
    v = states.copy()
    for i in range(ops.shape[0]):
        kind, target, control = int(ops[i, 0]), int(ops[i, 1]), int(ops[i, 2])
        if kind == CNOT:
            if control == 0:
                v[:, [2, 3]] = v[:, [3, 2]]
            else:
                v[:, [1, 3]] = v[:, [3, 1]]
            continue
        half = angles[i] / 2.0
        c = np.cos(half)
        sn = np.sin(half)
        base0, base1, stride = (0, 1, 2) if target == 0 else (0, 2, 1)
        for base in (base0, base1):
            a = v[:, base].copy()
            b = v[:, base + stride].copy()
            if kind == RX:
                v[:, base] = c * a - 1j * sn * b
                v[:, base + stride] = -1j * sn * a + c * b
            elif kind == RY:
                v[:, base] = c * a - sn * b
                v[:, base + stride] = sn * a + c * b
            else:
                v[:, base] = (c - 1j * sn) * a
                v[:, base + stride] = (c + 1j * sn) * b
    return v


if NUMBA_AVAILABLE:
    apply_batch_numba = njit(cache=True, nogil=True)(_apply_loop)
else:  # pragma: no cover
    apply_batch_numba = None

_FORCED_OFF = os.environ.get("ENCODERLAB_NO_NUMBA", "") not in ("", "0")
USING_NUMBA = NUMBA_AVAILABLE and not _FORCED_OFF

apply_batch = apply_batch_numba if USING_NUMBA else apply_batch_numpy


def zero_batch(n_states: int) -> np.ndarray:
    """(n, 4) batch of |00⟩ registers."""
    out = np.zeros((n_states, 4), dtype=np.complex128)
    out[:, 0] = 1.0
    return out


def simulate_batch(ops, angles) -> np.ndarray:
    """Run a packed circuit on a fresh |00⟩ batch."""
    return apply_batch(zero_batch(angles.shape[1]), ops, angles)


def active_backend() -> str:
    """Which kernel implementation this process selected at import."""
    return "numba" if USING_NUMBA else "numpy"


def expectation_z0_batch(states: np.ndarray) -> np.ndarray:
    """⟨Z⟩ on q0 per state: Pr(q0=0) − Pr(q0=1)."""
    p = np.abs(states) ** 2
    return (p[:, 0] + p[:, 1]) - (p[:, 2] + p[:, 3])


def prob_q0_batch(states: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(Pr(q0=0), Pr(q0=1)) per state."""
    p = np.abs(states) ** 2
    return p[:, 0] + p[:, 1], p[:, 2] + p[:, 3]
