"""Deterministic circuit corpus used by the test suite and experiments."""

from __future__ import annotations

from . import qsim

# 20 accepting shapes spanning 5-15 qubits and depth 10-300.
CORPUS_SHAPES = (
    (5, 10), (5, 50), (5, 100), (5, 300), (6, 200),
    (7, 20), (7, 150), (8, 60), (8, 250), (9, 100),
    (10, 10), (10, 80), (11, 50), (12, 30), (12, 120),
    (13, 70), (14, 25), (14, 90), (15, 10), (15, 40),
)

CORPUS_SEED = 20240811


def accepting_corpus(seed: int = CORPUS_SEED):
    """20 accepting circuits (Pr[output=1] = 1) with all-zero inputs."""
    return [(qsim.random_accepting_circuit(n, depth, seed + i), [0] * n)
            for i, (n, depth) in enumerate(CORPUS_SHAPES)]


def small_accepting_circuit() -> tuple[qsim.Circuit, list[int]]:
    """Three qubits, accepts with probability exactly 1."""
    gates = (qsim.Gate("H", (1,)), qsim.Gate("CNOT", (1, 2)), qsim.Gate("X", (0,)))
    return qsim.Circuit(n_qubits=3, gates=gates, output_qubit=0), [0, 0, 0]


def small_rejecting_circuit() -> tuple[qsim.Circuit, list[int]]:
    """Three qubits, accepts with probability exactly 0."""
    gates = (qsim.Gate("H", (1,)), qsim.Gate("CNOT", (1, 2)))
    return qsim.Circuit(n_qubits=3, gates=gates, output_qubit=0), [0, 0, 0]
