#!/usr/bin/env python3
"""Run the soundness experiment for every built-in strategy and print
one aggregate report per strategy.

Usage: run_soundness_experiments.py [--trials N] [--seed S] [--large]

With --large the statement is a random accepting circuit (8 qubits,
depth 60) instead of the small three-qubit fixture.
"""

import argparse

from pvqc import harness, qsim
from pvqc.compiler import CostModel
from pvqc.fixtures import small_accepting_circuit


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--large", action="store_true")
    args = parser.parse_args()

    if args.large:
        circuit = qsim.random_accepting_circuit(8, 60, args.seed + 1)
        x = [0] * 8
    else:
        circuit, x = small_accepting_circuit()
    cost = CostModel.from_circuit(circuit)
    print(f"statement: {circuit.n_qubits} qubits, depth "
          f"{qsim.circuit_depth(circuit)}, delta={cost.delta()}")

    for strategy in harness.STRATEGIES:
        report = harness.run_experiment(
            harness.AdversarySpec(strategy=strategy), circuit, x,
            cost=cost, trials=args.trials, seed=args.seed)
        print()
        print(report.to_text(), end="")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
