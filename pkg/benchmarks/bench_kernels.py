"""Time the numba kernel against the vectorized numpy fallback.

The workload is the hot path of one training forward pass: a 15-op packed
circuit (a 5-gate encoder followed by the 10-gate ansatz) applied to a fresh
|00> batch, one state per grid cell. Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import argparse
import statistics
import time

import numpy as np

from encoderlab._kernels import (
    NUMBA_AVAILABLE,
    apply_batch_numba,
    apply_batch_numpy,
    pack_circuit,
    zero_batch,
)

CIRCUIT = [
    ("RY", 0, -1, None), ("RZ", 0, -1, None), ("RY", 1, -1, None),
    ("RZ", 1, -1, None), ("CNOT", 1, 0, 0.0),
    ("RY", 0, -1, None), ("RY", 1, -1, None), ("CNOT", 1, 0, 0.0),
    ("RY", 0, -1, None), ("RY", 1, -1, None), ("CNOT", 1, 0, 0.0),
    ("RY", 0, -1, None), ("RY", 1, -1, None), ("CNOT", 1, 0, 0.0),
    ("RY", 0, -1, None),
]


def packed_workload(n_states: int, rng):
    gates = [
        (kind, target, control, 0.0 if angle is not None else rng.uniform(0, 2 * np.pi, n_states))
        for kind, target, control, angle in CIRCUIT
    ]
    return pack_circuit(gates, n_states)


def best_of(fn, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        times.append(time.perf_counter() - started)
    return statistics.median(times)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[256, 1024, 4096, 16384, 65536],
                        help="batch sizes to time (states = grid cells)")
    parser.add_argument("--repeats", type=int, default=9, help="timed runs per size (median wins)")
    args = parser.parse_args()

    if not NUMBA_AVAILABLE:
        print("numba is not importable here; only the numpy kernel exists to time")
        return 1

    rng = np.random.default_rng(99)
    warm_ops, warm_angles = packed_workload(8, rng)
    apply_batch_numba(zero_batch(8), warm_ops, warm_angles)  # pay the JIT cost outside timing

    print(f"{'states':>8}  {'numpy':>12}  {'numba':>12}  {'speedup':>8}")
    for n_states in args.sizes:
        ops, angles = packed_workload(n_states, rng)
        ref = apply_batch_numpy(zero_batch(n_states), ops, angles)
        jit = apply_batch_numba(zero_batch(n_states), ops, angles)
        drift = float(np.max(np.abs(ref - jit)))
        if drift > 1e-12:
            print(f"kernels disagree at n={n_states}: max |diff| = {drift:.3e}")
            return 1
        t_numpy = best_of(lambda: apply_batch_numpy(zero_batch(n_states), ops, angles), args.repeats)
        t_numba = best_of(lambda: apply_batch_numba(zero_batch(n_states), ops, angles), args.repeats)
        print(f"{n_states:>8}  {t_numpy * 1e3:>10.3f}ms  {t_numba * 1e3:>10.3f}ms  {t_numpy / t_numba:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
