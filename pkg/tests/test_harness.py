"""Experiment harness tests: the metered clock, the win formula, and
per-strategy outcomes with their designated rejection sites."""

import pytest

from pvqc import harness
from pvqc.compiler import (CostModel, REJECT_CLAIMED_BIT, REJECT_COMMITMENT,
                           REJECT_MAC_TAG, REJECT_TIMESTAMP)
from pvqc.errors import BudgetExceeded, ParameterError
from pvqc.fixtures import small_accepting_circuit, small_rejecting_circuit
from pvqc.meter import MeteredClock


# ------------------------------------------------------------ metered clock

def test_clock_charges_accumulate():
    clock = MeteredClock()
    clock.charge(3)
    clock.charge()
    assert clock.now == 4


def test_clock_budget_enforced():
    clock = MeteredClock()
    with clock.phase_budget(5):
        clock.charge(5)
        with pytest.raises(BudgetExceeded):
            clock.charge(1)
    # Outside the phase the budget is lifted.
    clock.charge(100)
    assert clock.now == 105


def test_clock_budget_none_is_unlimited():
    clock = MeteredClock()
    with clock.phase_budget(None):
        clock.charge(10**6)
    assert clock.now == 10**6


def test_clock_validation():
    with pytest.raises(ValueError):
        MeteredClock(start=-1)
    with pytest.raises(ValueError):
        MeteredClock().charge(-1)


# ------------------------------------------------------------- win formula

def test_report_win_formula_enforced():
    harness.ExperimentReport(b1=1, b2=0, c_of_x=0, y_matches_sk=0, win=1,
                             tau=3, steps_used=3)
    with pytest.raises(ParameterError):
        harness.ExperimentReport(b1=1, b2=0, c_of_x=0, y_matches_sk=0, win=0,
                                 tau=3, steps_used=3)
    with pytest.raises(ParameterError):
        harness.ExperimentReport(b1=1, b2=1, c_of_x=1, y_matches_sk=1, win=1,
                                 tau=3, steps_used=3)


def test_spec_validation():
    with pytest.raises(ParameterError):
        harness.AdversarySpec(strategy="A9")
    with pytest.raises(ParameterError):
        harness.AdversarySpec(strategy=harness.HONEST, step_budget=-1)


# ---------------------------------------------------------------- strategies

def _run(strategy, trials=20, circuit=None, x=None, budget=None, seed=0):
    if circuit is None:
        circuit, x = small_accepting_circuit()
    spec = harness.AdversarySpec(strategy=strategy, step_budget=budget)
    return harness.run_experiment(spec, circuit, x, lam=256,
                                  cost=CostModel.from_circuit(circuit),
                                  trials=trials, seed=seed)


def test_honest_never_wins():
    report = _run(harness.HONEST)
    assert report.wins == 0
    assert report.rejection_sites == {}
    assert report.mean_tau > 0


def test_honest_on_rejecting_circuit_is_bottom():
    circuit, x = small_rejecting_circuit()
    report = _run(harness.HONEST, circuit=circuit, x=x)
    assert report.wins == 0
    assert report.mean_tau == -1.0    # the prover refused: no proof exists


def test_a1_guess_key_loses_at_mac_tag():
    report = _run(harness.A1_GUESS_KEY)
    assert report.wins == 0
    assert report.rejection_sites.get(REJECT_MAC_TAG, 0) > 0
    assert report.mean_steps == 0.0   # guessing is not sequential work


def test_a2_solve_then_forge_loses_at_timestamp():
    report = _run(harness.A2_SOLVE_THEN_FORGE)
    assert report.wins == 0
    assert report.rejection_sites.get(REJECT_TIMESTAMP, 0) > 0


def test_a2_with_generous_budget_still_loses():
    circuit, x = small_accepting_circuit()
    delta = CostModel.from_circuit(circuit).delta()
    report = _run(harness.A2_SOLVE_THEN_FORGE, trials=5, budget=delta + 10)
    assert report.wins == 0
    assert report.rejection_sites.get(REJECT_TIMESTAMP, 0) > 0


def test_a3_alt_opening_loses_at_commitment():
    report = _run(harness.A3_ALT_OPENING)
    assert report.wins == 0
    assert report.rejection_sites.get(REJECT_COMMITMENT, 0) > 0


def test_a4_random_tag_loses_at_claimed_bit():
    report = _run(harness.A4_RANDOM_TAG)
    assert report.wins == 0
    assert report.rejection_sites.get(REJECT_CLAIMED_BIT, 0) > 0


def test_budgeted_adversaries_stay_within_budget():
    for strategy in (harness.A1_GUESS_KEY, harness.A3_ALT_OPENING,
                     harness.A4_RANDOM_TAG):
        report = _run(strategy, trials=10)
        circuit, _ = small_accepting_circuit()
        assert report.mean_steps < CostModel.from_circuit(circuit).delta()


def test_experiment_is_deterministic():
    a = _run(harness.A1_GUESS_KEY, trials=10, seed=5)
    b = _run(harness.A1_GUESS_KEY, trials=10, seed=5)
    assert a == b


def test_aggregate_report_text_is_parseable():
    report = _run(harness.A4_RANDOM_TAG, trials=5)
    pairs = dict(line.split("=", 1) for line in report.to_text().splitlines())
    assert pairs["strategy"] == harness.A4_RANDOM_TAG
    assert int(pairs["trials"]) == 5
    assert int(pairs["wins"]) == 0
    assert "claimed_bit" in pairs["rejection_sites"]


def test_run_experiment_validation():
    circuit, x = small_accepting_circuit()
    spec = harness.AdversarySpec(strategy=harness.HONEST)
    with pytest.raises(ParameterError):
        harness.run_experiment(spec, circuit, x, trials=0)
