"""The time-delayed publicly verifiable compiler.

Setup locks the designated-verifier secret key (with commitment
randomness) inside a time-lock puzzle and publishes the CRS; Prove runs
the backend prover and timestamps the proof; Reveal solves the puzzle;
Verify gates acceptance on the timestamp deadline, the commitment, and
the backend tag check, and never executes the delegated circuit.

One CRS is single-use: one TLP instance and one backend session per
setup.
"""

from __future__ import annotations

import math
import secrets
import struct
from dataclasses import dataclass

from . import commit, dvproof, qsim, tlp
from .commit import Commitment, Opening
from .dvproof import DvProof, DvPublicKey, DvSecretKey, OracleToken
from .errors import FormatError, ParameterError
from .meter import MeteredClock
from .timestamp import Ledger, Stamp
from .tlp import Puzzle, TlpPublicParams

_MAGIC = b"PVQC"
_VERSION = 0x01

DEFAULT_EPSILON = 0.5
PROOF_OVERHEAD_UNITS = 16

# Verify rejection sites, in check order.
REJECT_TIMESTAMP = "timestamp"
REJECT_STATEMENT = "statement"
REJECT_STAMP = "stamp"
REJECT_COMMITMENT = "commitment"
REJECT_CLAIMED_BIT = "claimed_bit"
REJECT_MAC_TAG = "mac_tag"


@dataclass(frozen=True)
class CostModel:
    """Charged cost T of computing the circuit plus its proof, in logical
    step units, and the deadline exponent."""

    t_units: int
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        if self.t_units < 1:
            raise ParameterError("t_units must be >= 1")
        if self.epsilon <= 0:
            raise ParameterError("epsilon must be > 0")

    @classmethod
    def from_circuit(cls, c: qsim.Circuit, epsilon: float = DEFAULT_EPSILON,
                     proof_overhead: int = PROOF_OVERHEAD_UNITS) -> "CostModel":
        return cls(t_units=qsim.circuit_depth(c) + proof_overhead, epsilon=epsilon)

    def delta(self) -> int:
        """Deadline strictly above t_units^(1+epsilon)."""
        return math.ceil(self.t_units ** (1.0 + self.epsilon)) + 1


@dataclass(frozen=True)
class Crs:
    tpk: TlpPublicParams
    pk: DvPublicKey
    puzzle: Puzzle
    commitment: Commitment
    delta: int

    def __post_init__(self):
        if self.delta < 1:
            raise ParameterError("delta must be >= 1")


@dataclass(frozen=True)
class TimestampedProof:
    proof: DvProof
    tau: int
    stamp_tag: bytes

    def stamp(self) -> Stamp:
        return Stamp(tau=self.tau, auth_tag=self.stamp_tag)


def vc_setup(lam: int, c: qsim.Circuit, x, cost: CostModel
             ) -> tuple[Crs, OracleToken]:
    """Setup phase.  The chain walk inside the TLP setup is the dominant
    cost; the oracle token is emitted separately, never inside the CRS."""
    delta = cost.delta()
    tpk, tsk = tlp.setup(lam, delta)
    pk, sk = dvproof.keygen(lam, c, x)
    r = secrets.token_bytes(commit.RAND_LEN)
    d = commit.commit(sk.mac_key, r)
    puzzle = tlp.gen_puzzle(sk.mac_key + r, tpk, tsk)
    crs = Crs(tpk=tpk, pk=pk, puzzle=puzzle, commitment=d, delta=delta)
    return crs, dvproof.make_token(sk, pk)


def vc_prove(crs: Crs, c: qsim.Circuit, x, token: OracleToken, ledger: Ledger,
             clock: MeteredClock, cost: CostModel | None = None) -> TimestampedProof:
    """Prove phase: charge the computation cost, obtain the backend proof,
    and timestamp it."""
    if token.session_nonce != crs.pk.session_nonce:
        raise ParameterError("oracle token does not match this CRS")
    if cost is None:
        cost = CostModel.from_circuit(c)
    clock.charge(cost.t_units)
    pi = dvproof.prove_oracle(token, crs.pk, c, x)
    stamp = ledger.stamp(dvproof.serialize_proof(pi), clock)
    return TimestampedProof(proof=pi, tau=stamp.tau, stamp_tag=stamp.auth_tag)


def parse_opening(plaintext: bytes) -> Opening:
    """Split the puzzle solution into (sk, r): the randomness is the fixed
    32-byte suffix."""
    if len(plaintext) < commit.RAND_LEN + 1:
        raise FormatError("puzzle plaintext too short to parse as (sk, r)")
    return Opening(sk_bytes=plaintext[:-commit.RAND_LEN],
                   r=plaintext[-commit.RAND_LEN:])


def vc_reveal(crs: Crs, clock: MeteredClock, progress=None) -> Opening:
    """Reveal phase: solve the puzzle (charging exactly delta = mu steps)
    and parse the solution."""
    plaintext = tlp.solve(crs.tpk, crs.puzzle, meter=clock, progress=progress)
    return parse_opening(plaintext)


def vc_verify_explain(crs: Crs, c: qsim.Circuit, x, pi_tau: TimestampedProof,
                      y: Opening, ledger: Ledger) -> tuple[bool, str | None]:
    """Verify phase with the rejection site reported (None on accept).

    Total: all failures are reject verdicts.  Late proofs (tau >= delta)
    are rejected; the deadline window is [0, delta).  Never simulates C.
    """
    if pi_tau.tau >= crs.delta:
        return False, REJECT_TIMESTAMP
    if (dvproof.circuit_digest(c) != crs.pk.circuit_digest
            or dvproof.input_digest(x) != crs.pk.input_digest):
        return False, REJECT_STATEMENT
    if not ledger.verify(dvproof.serialize_proof(pi_tau.proof), pi_tau.stamp()):
        return False, REJECT_STAMP
    if not commit.verify_opening(crs.commitment, y.sk_bytes, y.r):
        return False, REJECT_COMMITMENT
    if pi_tau.proof.claimed_bit != 1:
        return False, REJECT_CLAIMED_BIT
    if not dvproof.verify(crs.pk, DvSecretKey(mac_key=y.sk_bytes), pi_tau.proof):
        return False, REJECT_MAC_TAG
    return True, None


def vc_verify(crs: Crs, c: qsim.Circuit, x, pi_tau: TimestampedProof,
              y: Opening, ledger: Ledger) -> bool:
    verdict, _ = vc_verify_explain(crs, c, x, pi_tau, y, ledger)
    return verdict


def serialize_crs(crs: Crs) -> bytes:
    return (_MAGIC + bytes([_VERSION])
            + crs.tpk.seed + struct.pack(">QQ", crs.tpk.mu, crs.tpk.delta_steps)
            + crs.pk.circuit_digest + crs.pk.input_digest + crs.pk.session_nonce
            + tlp.serialize_puzzle(crs.puzzle)
            + crs.commitment.digest + struct.pack(">Q", crs.delta))


def parse_crs(data: bytes) -> Crs:
    if len(data) < 5 or data[:4] != _MAGIC or data[4] != _VERSION:
        raise FormatError("bad CRS header")
    body = data[5:]
    if len(body) < 48 + 80:
        raise FormatError("truncated CRS record")
    seed = body[:32]
    mu, delta_steps = struct.unpack(">QQ", body[32:48])
    tpk = TlpPublicParams(seed=seed, mu=mu, delta_steps=delta_steps)
    pk = DvPublicKey(circuit_digest=body[48:80], input_digest=body[80:112],
                     session_nonce=body[112:128])
    puzzle, rest = tlp.parse_puzzle_prefix(body[128:])
    if len(rest) != 40:
        raise FormatError("truncated CRS tail")
    d = Commitment(digest=rest[:32])
    (delta,) = struct.unpack(">Q", rest[32:])
    return Crs(tpk=tpk, pk=pk, puzzle=puzzle, commitment=d, delta=delta)


def serialize_timestamped_proof(pi_tau: TimestampedProof) -> bytes:
    return (dvproof.serialize_proof(pi_tau.proof)
            + struct.pack(">Q", pi_tau.tau) + pi_tau.stamp_tag)


def parse_timestamped_proof(data: bytes) -> TimestampedProof:
    proof, rest = dvproof.parse_proof_prefix(data)
    if len(rest) != 40:
        raise FormatError("bad timestamped proof record")
    (tau,) = struct.unpack(">Q", rest[:8])
    return TimestampedProof(proof=proof, tau=tau, stamp_tag=rest[8:])


def serialize_opening(y: Opening) -> bytes:
    return struct.pack(">I", len(y.sk_bytes)) + y.sk_bytes + y.r


def parse_opening_record(data: bytes) -> Opening:
    if len(data) < 4:
        raise FormatError("bad opening record")
    (sk_len,) = struct.unpack(">I", data[:4])
    if len(data) != 4 + sk_len + commit.RAND_LEN:
        raise FormatError("bad opening record length")
    return Opening(sk_bytes=data[4:4 + sk_len], r=data[4 + sk_len:])
