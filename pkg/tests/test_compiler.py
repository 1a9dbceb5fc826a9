"""Compiler tests: the four protocol phases end to end, deadline math,
every rejection site, serialization, and verifier frugality."""

import pytest

from pvqc import commit, compiler, dvproof, qsim, tlp
from pvqc.commit import Opening
from pvqc.compiler import CostModel, TimestampedProof
from pvqc.errors import FormatError, ParameterError, ProofRefused
from pvqc.fixtures import small_accepting_circuit, small_rejecting_circuit
from pvqc.meter import MeteredClock
from pvqc.timestamp import Ledger, new_mac_key


def _pipeline(circuit=None, x=None, lam=256):
    if circuit is None:
        circuit, x = small_accepting_circuit()
    cost = CostModel.from_circuit(circuit)
    crs, token = compiler.vc_setup(lam, circuit, x, cost)
    ledger = Ledger(new_mac_key())
    clock = MeteredClock()
    return circuit, x, cost, crs, token, ledger, clock


def test_cost_model_delta():
    assert CostModel(t_units=18, epsilon=0.5).delta() == 78
    assert CostModel(t_units=1, epsilon=0.5).delta() == 2
    assert CostModel(t_units=100, epsilon=1.0).delta() == 10001


def test_cost_model_from_circuit():
    c, _ = small_accepting_circuit()
    cost = CostModel.from_circuit(c)
    assert cost.t_units == qsim.circuit_depth(c) + compiler.PROOF_OVERHEAD_UNITS


def test_cost_model_validation():
    with pytest.raises(ParameterError):
        CostModel(t_units=0)
    with pytest.raises(ParameterError):
        CostModel(t_units=1, epsilon=0.0)


def test_honest_pipeline_accepts():
    c, x, cost, crs, token, ledger, clock = _pipeline()
    pi_tau = compiler.vc_prove(crs, c, x, token, ledger, clock, cost)
    assert pi_tau.tau == cost.t_units
    assert pi_tau.tau < crs.delta
    opening = compiler.vc_reveal(crs, clock)
    verdict, site = compiler.vc_verify_explain(crs, c, x, pi_tau, opening, ledger)
    assert verdict and site is None


def test_reveal_charges_exactly_delta():
    _, _, _, crs, _, _, clock = _pipeline()
    compiler.vc_reveal(crs, clock)
    assert clock.now == crs.delta
    assert crs.tpk.mu == crs.delta


def test_reveal_matches_commitment():
    _, _, _, crs, _, _, clock = _pipeline()
    opening = compiler.vc_reveal(crs, clock)
    assert commit.verify_opening(crs.commitment, opening.sk_bytes, opening.r)


def test_prove_refuses_rejecting_circuit():
    c, x = small_rejecting_circuit()
    _, _, cost, crs, token, ledger, clock = _pipeline(c, x)
    with pytest.raises(ProofRefused):
        compiler.vc_prove(crs, c, x, token, ledger, clock, cost)


def test_prove_rejects_foreign_token():
    c, x, cost, crs, _, ledger, clock = _pipeline()
    _, _, _, _, other_token, _, _ = _pipeline()
    with pytest.raises(ParameterError):
        compiler.vc_prove(crs, c, x, other_token, ledger, clock, cost)


def _honest_artifacts():
    c, x, cost, crs, token, ledger, clock = _pipeline()
    pi_tau = compiler.vc_prove(crs, c, x, token, ledger, clock, cost)
    opening = compiler.vc_reveal(crs, clock)
    return c, x, crs, pi_tau, opening, ledger


def test_reject_site_timestamp():
    c, x, cost, crs, token, ledger, clock = _pipeline()
    opening = compiler.vc_reveal(crs, clock)     # clock is now at delta
    proof = dvproof.forge_proof(dvproof.DvSecretKey(mac_key=opening.sk_bytes),
                                crs.pk, 1)
    stamp = ledger.stamp(dvproof.serialize_proof(proof), clock)
    late = TimestampedProof(proof=proof, tau=stamp.tau, stamp_tag=stamp.auth_tag)
    assert late.tau >= crs.delta
    verdict, site = compiler.vc_verify_explain(crs, c, x, late, opening, ledger)
    assert not verdict and site == compiler.REJECT_TIMESTAMP


def test_reject_site_statement():
    c, x, crs, pi_tau, opening, ledger = _honest_artifacts()
    other_c, _ = small_rejecting_circuit()
    verdict, site = compiler.vc_verify_explain(crs, other_c, x, pi_tau, opening, ledger)
    assert not verdict and site == compiler.REJECT_STATEMENT
    verdict, site = compiler.vc_verify_explain(crs, c, [1, 0, 0], pi_tau, opening, ledger)
    assert not verdict and site == compiler.REJECT_STATEMENT


def test_reject_site_stamp():
    c, x, crs, pi_tau, opening, ledger = _honest_artifacts()
    forged = TimestampedProof(proof=pi_tau.proof, tau=pi_tau.tau, stamp_tag=bytes(32))
    verdict, site = compiler.vc_verify_explain(crs, c, x, forged, opening, ledger)
    assert not verdict and site == compiler.REJECT_STAMP


def test_reject_site_commitment():
    c, x, crs, pi_tau, opening, ledger = _honest_artifacts()
    wrong = Opening(sk_bytes=bytes(32), r=opening.r)
    verdict, site = compiler.vc_verify_explain(crs, c, x, pi_tau, wrong, ledger)
    assert not verdict and site == compiler.REJECT_COMMITMENT


def test_reject_site_claimed_bit():
    c, x, cost, crs, token, ledger, clock = _pipeline()
    opening_clock = MeteredClock()
    opening = compiler.vc_reveal(crs, opening_clock)
    proof = dvproof.forge_proof(dvproof.DvSecretKey(mac_key=opening.sk_bytes),
                                crs.pk, claimed_bit=0)
    stamp = ledger.stamp(dvproof.serialize_proof(proof), clock)
    pi_tau = TimestampedProof(proof=proof, tau=stamp.tau, stamp_tag=stamp.auth_tag)
    verdict, site = compiler.vc_verify_explain(crs, c, x, pi_tau, opening, ledger)
    assert not verdict and site == compiler.REJECT_CLAIMED_BIT


def test_reject_site_mac_tag():
    c, x, cost, crs, token, ledger, clock = _pipeline()
    opening = compiler.vc_reveal(crs, MeteredClock())
    proof = dvproof.DvProof(claimed_bit=1, tag=bytes(32))
    stamp = ledger.stamp(dvproof.serialize_proof(proof), clock)
    pi_tau = TimestampedProof(proof=proof, tau=stamp.tau, stamp_tag=stamp.auth_tag)
    verdict, site = compiler.vc_verify_explain(crs, c, x, pi_tau, opening, ledger)
    assert not verdict and site == compiler.REJECT_MAC_TAG


def test_verify_is_frugal():
    c, x, crs, pi_tau, opening, ledger = _honest_artifacts()
    runs_before, chain_before = qsim.run_calls(), tlp.chain_calls()
    assert compiler.vc_verify(crs, c, x, pi_tau, opening, ledger)
    assert qsim.run_calls() == runs_before
    assert tlp.chain_calls() == chain_before


def test_parse_opening_suffix_split():
    plaintext = b"K" * 32 + bytes(range(32))
    opening = compiler.parse_opening(plaintext)
    assert opening.sk_bytes == b"K" * 32
    assert opening.r == bytes(range(32))
    with pytest.raises(FormatError):
        compiler.parse_opening(bytes(32))


def test_crs_serialization_roundtrip():
    _, _, crs, _, _, _ = _honest_artifacts()
    blob = compiler.serialize_crs(crs)
    assert compiler.parse_crs(blob) == crs
    assert compiler.serialize_crs(compiler.parse_crs(blob)) == blob
    with pytest.raises(FormatError):
        compiler.parse_crs(blob[:-1])
    with pytest.raises(FormatError):
        compiler.parse_crs(b"XXXX" + blob[4:])


def test_timestamped_proof_serialization_roundtrip():
    _, _, _, pi_tau, _, _ = _honest_artifacts()
    blob = compiler.serialize_timestamped_proof(pi_tau)
    assert compiler.parse_timestamped_proof(blob) == pi_tau
    with pytest.raises(FormatError):
        compiler.parse_timestamped_proof(blob + b"\x00")


def test_opening_serialization_roundtrip():
    opening = Opening(sk_bytes=b"\x42" * 32, r=bytes(range(32)))
    blob = compiler.serialize_opening(opening)
    assert compiler.parse_opening_record(blob) == opening
    with pytest.raises(FormatError):
        compiler.parse_opening_record(blob[:-1])
    with pytest.raises(FormatError):
        compiler.parse_opening_record(b"")
