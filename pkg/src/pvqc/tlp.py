"""Sequential hash-chain time-lock puzzle.

The sequential function is iterated, domain-separated SHA-256: step i maps
chain value s to SHA-256("TLPCHAINv1" || u64be(i) || s).  Binding the step
index into each hash prevents short cycles and cross-instance reuse.

Setup walks the chain once (its one-time sequential cost), derives a batch
key from the endpoint, and every puzzle of the instance is sealed under a
fresh nonce-bound subkey.  Generating a puzzle therefore costs zero chain
steps; solving one costs exactly mu of them.  Caveat: solving any puzzle
of a batch reveals the batch key, so the compiler uses one TLP instance
per CRS.
"""

from __future__ import annotations

import hashlib
import hmac
import math
import secrets
import struct
from dataclasses import dataclass

from .errors import FormatError, ParameterError, PuzzleIntegrityError

_CHAIN_DOMAIN = b"TLPCHAINv1"
_KEY_DOMAIN = b"TLPKEYv1"
_SUB_DOMAIN = b"TLPSUBv1"
_KS_DOMAIN = b"TLPKSv1"

_MAGIC = b"PVQ1"
_VERSION = 0x01
_RECORD_PUZZLE = 0x02

MAX_MESSAGE_LEN = 2**32 - 1
PROGRESS_INTERVAL = 2**16

# Instrumentation: total chain-step invocations in this process.
_chain_calls = 0


def chain_calls() -> int:
    return _chain_calls


def reset_chain_calls() -> None:
    global _chain_calls
    _chain_calls = 0


@dataclass(frozen=True)
class TlpPublicParams:
    seed: bytes          # chain start s0, 32 bytes
    mu: int              # sequential steps to the key
    delta_steps: int     # declared solve budget, >= mu

    def __post_init__(self):
        if len(self.seed) != 32:
            raise ParameterError("seed must be 32 bytes")
        if self.mu < 1:
            raise ParameterError("mu must be >= 1")
        if self.delta_steps < self.mu:
            raise ParameterError("delta_steps must be >= mu")


@dataclass(frozen=True)
class TlpSecretParams:
    key: bytes           # batch key derived from the chain endpoint

    def __post_init__(self):
        if len(self.key) != 32:
            raise ParameterError("key must be 32 bytes")


@dataclass(frozen=True)
class Puzzle:
    nonce: bytes         # 16 bytes, fresh per puzzle
    ciphertext: bytes
    tag: bytes           # 32-byte HMAC over nonce || ciphertext

    def __post_init__(self):
        if len(self.nonce) != 16:
            raise ParameterError("nonce must be 16 bytes")
        if len(self.tag) != 32:
            raise ParameterError("tag must be 32 bytes")


def chain_step(s: bytes, i: int) -> bytes:
    """One application of the sequential function. Bit-exact everywhere."""
    global _chain_calls
    _chain_calls += 1
    return hashlib.sha256(_CHAIN_DOMAIN + struct.pack(">Q", i) + s).digest()


def _walk_chain(seed: bytes, mu: int, meter=None, progress=None) -> bytes:
    s = seed
    for i in range(mu):
        s = chain_step(s, i)
        if meter is not None:
            meter.charge(1)
        if progress is not None and (i + 1) % PROGRESS_INTERVAL == 0:
            progress(i + 1)
    return s


def _derive_key(endpoint: bytes) -> bytes:
    return hashlib.sha256(_KEY_DOMAIN + endpoint).digest()


def _subkey(key: bytes, nonce: bytes) -> bytes:
    return hashlib.sha256(_SUB_DOMAIN + key + nonce).digest()


def _keystream(subkey: bytes, length: int) -> bytes:
    out = bytearray()
    for block in range((length + 31) // 32):
        out += hashlib.sha256(_KS_DOMAIN + subkey + struct.pack(">Q", block)).digest()
    return bytes(out[:length])


def _tag(subkey: bytes, nonce: bytes, ciphertext: bytes) -> bytes:
    return hmac.new(subkey, nonce + ciphertext, hashlib.sha256).digest()


def setup(lam: int, delta_steps: int, *, seed: bytes | None = None
          ) -> tuple[TlpPublicParams, TlpSecretParams]:
    """Sample a chain seed and pay the one-time sequential setup cost.

    `seed` is a test override; production callers let it default to fresh
    randomness.
    """
    if delta_steps < 1:
        raise ParameterError("delta_steps must be >= 1")
    if lam < 1:
        raise ParameterError("lambda must be >= 1")
    if seed is None:
        seed = secrets.token_bytes(32)
    tpk = TlpPublicParams(seed=seed, mu=delta_steps, delta_steps=delta_steps)
    endpoint = _walk_chain(seed, tpk.mu)
    tsk = TlpSecretParams(key=_derive_key(endpoint))
    return tpk, tsk


def gen_puzzle(m: bytes, tpk: TlpPublicParams, tsk: TlpSecretParams) -> Puzzle:
    """Seal m under a fresh nonce-bound subkey. Costs zero chain steps."""
    if len(m) > MAX_MESSAGE_LEN:
        raise ParameterError("message too long")
    nonce = secrets.token_bytes(16)
    sub = _subkey(tsk.key, nonce)
    ciphertext = bytes(a ^ b for a, b in zip(m, _keystream(sub, len(m))))
    return Puzzle(nonce=nonce, ciphertext=ciphertext, tag=_tag(sub, nonce, ciphertext))


def solve(tpk: TlpPublicParams, o: Puzzle, meter=None, progress=None) -> bytes:
    """Recompute the chain (exactly mu sequential steps), check, decrypt."""
    endpoint = _walk_chain(tpk.seed, tpk.mu, meter=meter, progress=progress)
    sub = _subkey(_derive_key(endpoint), o.nonce)
    if not hmac.compare_digest(_tag(sub, o.nonce, o.ciphertext), o.tag):
        raise PuzzleIntegrityError("corrupt puzzle or wrong parameters")
    return bytes(a ^ b for a, b in zip(o.ciphertext, _keystream(sub, len(o.ciphertext))))


def calibrate_mu(t_seconds: float, epsilon: float, hash_rate: float) -> int:
    """Steps needed so expected solve wall-clock exceeds t_seconds^(1+eps)."""
    if t_seconds <= 0 or hash_rate <= 0 or epsilon <= 0:
        raise ParameterError("t_seconds, epsilon and hash_rate must be positive")
    return math.ceil(hash_rate * t_seconds ** (1.0 + epsilon)) + 1


def serialize_puzzle(o: Puzzle) -> bytes:
    return (_MAGIC + bytes([_VERSION, _RECORD_PUZZLE]) + o.nonce
            + struct.pack(">I", len(o.ciphertext)) + o.ciphertext + o.tag)


def parse_puzzle(data: bytes) -> Puzzle:
    o, rest = parse_puzzle_prefix(data)
    if rest:
        raise FormatError("trailing bytes after puzzle record")
    return o


def parse_puzzle_prefix(data: bytes) -> tuple[Puzzle, bytes]:
    """Parse a puzzle record off the front of `data`; return the remainder."""
    if len(data) < 26 or data[:4] != _MAGIC:
        raise FormatError("bad puzzle magic")
    if data[4] != _VERSION or data[5] != _RECORD_PUZZLE:
        raise FormatError("unsupported puzzle version or record type")
    nonce = data[6:22]
    (clen,) = struct.unpack(">I", data[22:26])
    if len(data) < 26 + clen + 32:
        raise FormatError("truncated puzzle record")
    ciphertext = data[26:26 + clen]
    tag = data[26 + clen:26 + clen + 32]
    return Puzzle(nonce=nonce, ciphertext=ciphertext, tag=tag), data[26 + clen + 32:]
