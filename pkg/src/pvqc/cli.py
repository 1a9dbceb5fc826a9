"""Command-line surface for the protocol phases, the soundness
experiments, and the benchmark suite.

Exit codes: 0 accept/success, 1 reject, 2 usage or runtime error.
A logical-clock file is kept next to the ledger so successive
invocations share one global timeline (reveal-then-prove stamps late).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import bench, compiler, dvproof, harness, qsim, timestamp
from .compiler import CostModel
from .errors import ProofRefused
from .meter import MeteredClock

EXIT_ACCEPT = 0
EXIT_REJECT = 1
EXIT_ERROR = 2

_STRATEGY_ALIASES = {
    "honest": harness.HONEST,
    "a1": harness.A1_GUESS_KEY,
    "a2": harness.A2_SOLVE_THEN_FORGE,
    "a3": harness.A3_ALT_OPENING,
    "a4": harness.A4_RANDOM_TAG,
}


def _default_seed() -> int:
    return int(os.environ.get("PVQC_SEED", "0"))


def _read_circuit(path) -> qsim.Circuit:
    return qsim.circuit_from_text(Path(path).read_text())


def _read_input(path) -> list[int]:
    text = Path(path).read_text().strip()
    if any(ch not in "01" for ch in text):
        raise ValueError("input file must contain only 0/1 characters")
    return [int(ch) for ch in text]


def _key_path(ledger_path) -> Path:
    return Path(str(ledger_path) + ".key")


def _clock_path(ledger_path) -> Path:
    return Path(str(ledger_path) + ".clock")


def _open_ledger(path) -> timestamp.Ledger:
    path = Path(path)
    key_path = _key_path(path)
    if path.exists():
        return timestamp.Ledger.load(path, key_path.read_bytes())
    key = timestamp.new_mac_key()
    key_path.write_bytes(key)
    ledger = timestamp.Ledger(key)
    ledger.save(path)
    return ledger


def _open_clock(ledger_path) -> MeteredClock:
    path = _clock_path(ledger_path)
    start = int(path.read_text()) if path.exists() else 0
    return MeteredClock(start=start)


def _save_clock(ledger_path, clock: MeteredClock) -> None:
    _clock_path(ledger_path).write_text(str(clock.now))


def _cmd_setup(args) -> int:
    circuit = _read_circuit(args.circuit)
    x = _read_input(args.input)
    cost = CostModel.from_circuit(circuit, epsilon=args.epsilon)
    crs, token = compiler.vc_setup(args.security, circuit, x, cost)
    Path(args.crs).write_bytes(compiler.serialize_crs(crs))
    Path(args.oracle).write_bytes(dvproof.serialize_token(token))
    print(f"crs written: delta={crs.delta} t_units={cost.t_units}")
    return EXIT_ACCEPT


def _cmd_prove(args) -> int:
    crs = compiler.parse_crs(Path(args.crs).read_bytes())
    circuit = _read_circuit(args.circuit)
    x = _read_input(args.input)
    token = dvproof.parse_token(Path(args.oracle).read_bytes())
    ledger = _open_ledger(args.ledger)
    clock = _open_clock(args.ledger)
    cost = CostModel.from_circuit(circuit, epsilon=args.epsilon)
    try:
        pi_tau = compiler.vc_prove(crs, circuit, x, token, ledger, clock, cost)
    except ProofRefused as exc:
        print(f"cannot prove false statement: {exc}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        ledger.save(args.ledger)
        _save_clock(args.ledger, clock)
    Path(args.proof).write_bytes(compiler.serialize_timestamped_proof(pi_tau))
    print(f"proof stamped at tau={pi_tau.tau} (deadline delta={crs.delta})")
    return EXIT_ACCEPT


def _cmd_reveal(args) -> int:
    crs = compiler.parse_crs(Path(args.crs).read_bytes())
    clock = _open_clock(args.ledger) if args.ledger else MeteredClock()

    def progress(step):
        print(f"solved {step}/{crs.tpk.mu} steps", file=sys.stderr)

    opening = compiler.vc_reveal(crs, clock, progress=progress)
    if args.ledger:
        _save_clock(args.ledger, clock)
    Path(args.opening).write_bytes(compiler.serialize_opening(opening))
    print(f"opening recovered after {crs.tpk.mu} sequential steps")
    return EXIT_ACCEPT


def _cmd_verify(args) -> int:
    crs = compiler.parse_crs(Path(args.crs).read_bytes())
    circuit = _read_circuit(args.circuit)
    x = _read_input(args.input)
    pi_tau = compiler.parse_timestamped_proof(Path(args.proof).read_bytes())
    opening = compiler.parse_opening_record(Path(args.opening).read_bytes())
    ledger = _open_ledger(args.ledger)
    verdict, site = compiler.vc_verify_explain(crs, circuit, x, pi_tau, opening, ledger)
    if verdict:
        print("accept")
        return EXIT_ACCEPT
    print(f"reject (site={site})")
    return EXIT_REJECT


def _cmd_experiment(args) -> int:
    circuit = _read_circuit(args.circuit)
    x = _read_input(args.input)
    spec = harness.AdversarySpec(strategy=_STRATEGY_ALIASES[args.strategy],
                                 step_budget=args.budget)
    cost = CostModel.from_circuit(circuit, epsilon=args.epsilon)
    report = harness.run_experiment(spec, circuit, x, lam=args.security,
                                    cost=cost, trials=args.trials, seed=args.seed)
    text = report.to_text()
    print(text, end="")
    if args.summary:
        Path(args.summary).write_text(text)
    return EXIT_ACCEPT if report.wins == 0 or spec.strategy == harness.HONEST \
        else EXIT_REJECT


def _cmd_bench(args) -> int:
    if args.suite == "tlp":
        rows = bench.bench_tlp(repetitions=args.repetitions)
    elif args.suite == "circuits":
        rows = bench.bench_circuits(trials=args.repetitions, seed=args.seed,
                                    closed_loop=args.closed_loop)
    else:
        rows = bench.bench_hhl(seed=args.seed)
    text = bench.report_to_text(rows)
    print(text, end="")
    if args.out:
        Path(args.out).write_text(text)
    return EXIT_ACCEPT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pvqc",
        description="time-delayed publicly verifiable delegation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_statement(p):
        p.add_argument("--circuit", required=True, help="circuit text file")
        p.add_argument("--input", required=True, help="input bit-string file")
        p.add_argument("--epsilon", type=float, default=compiler.DEFAULT_EPSILON)

    p = sub.add_parser("setup", help="generate CRS and prover oracle token")
    add_statement(p)
    p.add_argument("--crs", required=True)
    p.add_argument("--oracle", required=True)
    p.add_argument("--security", type=int, default=256)
    p.set_defaults(fn=_cmd_setup)

    p = sub.add_parser("prove", help="run the prover and timestamp the proof")
    add_statement(p)
    p.add_argument("--crs", required=True)
    p.add_argument("--oracle", required=True)
    p.add_argument("--ledger", required=True)
    p.add_argument("--proof", required=True)
    p.set_defaults(fn=_cmd_prove)

    p = sub.add_parser("reveal", help="solve the puzzle and write the opening")
    p.add_argument("--crs", required=True)
    p.add_argument("--opening", required=True)
    p.add_argument("--ledger", help="advance this ledger's logical clock")
    p.set_defaults(fn=_cmd_reveal)

    p = sub.add_parser("verify", help="publicly verify a timestamped proof")
    add_statement(p)
    p.add_argument("--crs", required=True)
    p.add_argument("--proof", required=True)
    p.add_argument("--opening", required=True)
    p.add_argument("--ledger", required=True)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("experiment", help="run the soundness experiment")
    add_statement(p)
    p.add_argument("--strategy", choices=sorted(_STRATEGY_ALIASES), required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--security", type=int, default=256)
    p.add_argument("--summary", help="write machine-readable summary here")
    p.set_defaults(fn=_cmd_experiment)

    p = sub.add_parser("bench", help="benchmark suites")
    p.add_argument("suite", choices=("tlp", "circuits", "hhl"))
    p.add_argument("--repetitions", type=int, default=5)
    p.add_argument("--seed", type=int, default=_default_seed() or 1)
    p.add_argument("--closed-loop", action="store_true",
                   help="also measure solve time for each calibrated mu")
    p.add_argument("--out", help="write the report here")
    p.set_defaults(fn=_cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except Exception as exc:  # noqa: BLE001 -- CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
