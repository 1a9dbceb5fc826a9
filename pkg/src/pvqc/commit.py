"""Hash commitment pinning the verification key inside the puzzle.

digest = SHA-256("COMMITv1" || u32be(|m|) || m || r) with |r| = 32 bytes.
The length prefix removes any (m, r) boundary ambiguity.  Binding rests on
SHA-256 collision resistance; hiding is a random-oracle-model assumption.
"""

from __future__ import annotations

import hashlib
import hmac
import struct
from dataclasses import dataclass

from .errors import ParameterError

_DOMAIN = b"COMMITv1"

RAND_LEN = 32


@dataclass(frozen=True)
class Commitment:
    digest: bytes

    def __post_init__(self):
        if len(self.digest) != 32:
            raise ParameterError("digest must be 32 bytes")


@dataclass(frozen=True)
class Opening:
    """Committed message (the verification key) plus its randomness."""

    sk_bytes: bytes
    r: bytes

    def __post_init__(self):
        if len(self.r) != RAND_LEN:
            raise ParameterError("opening randomness must be 32 bytes")


def commit(m: bytes, r: bytes) -> Commitment:
    if len(r) != RAND_LEN:
        raise ParameterError("commitment randomness must be 32 bytes")
    digest = hashlib.sha256(_DOMAIN + struct.pack(">I", len(m)) + m + r).digest()
    return Commitment(digest=digest)


def verify_opening(d: Commitment, m: bytes, r: bytes) -> bool:
    """Accept iff (m, r) recommits to d. Reject is a value, not an error."""
    if len(r) != RAND_LEN:
        return False
    return hmac.compare_digest(commit(m, r).digest, d.digest)
