"""Wall-clock benchmark suite: TLP timings, random-circuit calibration,
and the HHL methodology.

Calibration works in quarter-millisecond units: circuit time T and the
hash rate are converted so the chosen mu targets a solve time of about
T^(1+eps) in those units, which exceeds T whenever T > 0.25 ms.  (In
straight seconds the exponent would shrink sub-second times instead of
growing them.)  Wall-clock columns are machine-dependent; medians are
used to resist scheduler noise.
"""

from __future__ import annotations

import statistics
import time

from . import qsim, tlp

CALIBRATION_UNIT_MS = 0.25
DEFAULT_MU_LIST = (2**10, 2**12, 2**14, 2**16)
DEFAULT_QUBITS = (5, 10, 15)
DEFAULT_DEPTHS = (10, 20, 50, 100, 200, 300)
DEFAULT_HHL_SIZES = (2, 4, 8, 16)

_HEADER = ("# wall-clock columns (*_ms, *_s, hash_rate) are machine-dependent; "
           "mu and fidelity are deterministic given seeds")


def _median_time(fn, repetitions: int) -> float:
    """Median wall-clock seconds of fn() over repetitions."""
    samples = []
    for _ in range(repetitions):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def measure_hash_rate(sample_steps: int = 20000) -> float:
    """Sequential chain steps per second on this machine."""
    seed = bytes(32)
    start = time.perf_counter()
    s = seed
    for i in range(sample_steps):
        s = tlp.chain_step(s, i)
    return sample_steps / (time.perf_counter() - start)


def report_to_text(rows: list[dict]) -> str:
    lines = [_HEADER]
    for row in rows:
        lines.append(" ".join(f"{k}={v}" for k, v in row.items()))
    return "\n".join(lines) + "\n"


def bench_tlp(mu_list=DEFAULT_MU_LIST, repetitions: int = 5) -> list[dict]:
    """Setup/GenPuzzle/Solve timings per mu; setup amortized over the
    puzzle generations as in the batch-use model."""
    rows = []
    message = bytes(64)
    for mu in mu_list:
        start = time.perf_counter()
        tpk, tsk = tlp.setup(256, mu)
        setup_s = time.perf_counter() - start
        gen_s = _median_time(lambda: tlp.gen_puzzle(message, tpk, tsk), repetitions)
        puzzle = tlp.gen_puzzle(message, tpk, tsk)
        solve_s = _median_time(lambda: tlp.solve(tpk, puzzle), max(1, repetitions // 2))
        rows.append({
            "row": "tlp", "mu": mu,
            "solve_ms": round(solve_s * 1e3, 4),
            "genpuzzle_ms": round(gen_s * 1e3, 4),
            "setup_ms": round(setup_s * 1e3, 4),
            "amortized_setup_ms": round(setup_s * 1e3 / repetitions, 4),
        })
    return rows


def calibrate_cell(t_ms: float, epsilon: float, hash_rate: float) -> int:
    """Mu for a measured circuit time, in millisecond calibration units."""
    return tlp.calibrate_mu(t_ms / CALIBRATION_UNIT_MS, epsilon,
                            hash_rate * CALIBRATION_UNIT_MS / 1e3)


def bench_circuits(qubits=DEFAULT_QUBITS, depths=DEFAULT_DEPTHS, trials: int = 3,
                   epsilon: float = 0.5, seed: int = 1,
                   hash_rate: float | None = None,
                   closed_loop: bool = False) -> list[dict]:
    """Median simulation time per (qubits, depth) cell and the mu the
    calibration would choose.  With closed_loop, also measure the solve
    time for that mu."""
    if hash_rate is None:
        hash_rate = measure_hash_rate()
    rows = []
    for n in qubits:
        for depth in depths:
            circuit = qsim.random_circuit(n, depth, seed + 1000 * n + depth)
            x = [0] * n
            t_s = _median_time(lambda: qsim.accept_prob(circuit, x), trials)
            t_ms = t_s * 1e3
            mu = calibrate_cell(t_ms, epsilon, hash_rate)
            row = {
                "row": "circuit", "qubits": n, "depth": depth,
                "t_ms": round(t_ms, 4), "mu": mu,
                "hash_rate": round(hash_rate, 1),
            }
            if closed_loop:
                tpk, tsk = tlp.setup(256, mu)
                puzzle = tlp.gen_puzzle(bytes(64), tpk, tsk)
                start = time.perf_counter()
                tlp.solve(tpk, puzzle)
                row["solve_ms"] = round((time.perf_counter() - start) * 1e3, 4)
                start = time.perf_counter()
                tlp.gen_puzzle(bytes(64), tpk, tsk)
                row["genpuzzle_ms"] = round((time.perf_counter() - start) * 1e3, 4)
            rows.append(row)
    return rows


def bench_hhl(sizes=DEFAULT_HHL_SIZES, clock_qubits: int = 6, seed: int = 7,
              epsilon: float = 0.5, hash_rate: float | None = None) -> list[dict]:
    """Depth estimate, execution time, calibrated mu, and fidelity for
    well-conditioned Hermitian instances of each size."""
    import numpy as np

    if hash_rate is None:
        hash_rate = measure_hash_rate()
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        a = (m + m.conj().T) / 2 + 2.0 * n * np.eye(n)   # well-conditioned
        b = rng.normal(size=n) + 1j * rng.normal(size=n)
        b = b / np.linalg.norm(b)
        inst = qsim.HhlInstance(a=a, b=b, clock_qubits=clock_qubits)
        circuit = qsim.build_hhl(inst)
        start = time.perf_counter()
        fidelity = qsim.hhl_fidelity(inst)
        elapsed = time.perf_counter() - start
        rows.append({
            "row": "hhl", "n": n,
            "depth_estimate": qsim.circuit_depth(circuit),
            "time_s": round(elapsed, 4),
            "mu": calibrate_cell(elapsed * 1e3, epsilon, hash_rate),
            "fidelity": round(fidelity, 6),
        })
    return rows
