"""Trusted timestamping service as a signed, append-only, file-backed ledger.

Timestamps are logical: tau is the global sequential-step count at
submission, so deadline comparisons are deterministic.  Tags are symmetric
HMACs under the service's key; the service is a trusted role (think of a
public blockchain) and verification replays the tag check.
The ledger never escrows secrets.
"""

from __future__ import annotations

import hashlib
import hmac
import secrets
import struct
import threading
from dataclasses import dataclass

from .errors import LedgerError, ParameterError
from .meter import MeteredClock

_DOMAIN = b"STAMPv1"
_MAGIC = b"PVQL"
_VERSION = 0x01
_RECORD_LEN = 32 + 8 + 32


@dataclass(frozen=True)
class Stamp:
    tau: int
    auth_tag: bytes

    def __post_init__(self):
        if self.tau < 0:
            raise ParameterError("tau must be non-negative")
        if len(self.auth_tag) != 32:
            raise ParameterError("auth tag must be 32 bytes")


def new_mac_key() -> bytes:
    return secrets.token_bytes(32)


def _tag(mac_key: bytes, blob_digest: bytes, tau: int) -> bytes:
    return hmac.new(mac_key, _DOMAIN + blob_digest + struct.pack(">Q", tau),
                    hashlib.sha256).digest()


class Ledger:
    """Append-only record list (blob digest, tau, tag) under one MAC key.

    Single writer; concurrent readers of a saved file are safe.
    """

    def __init__(self, mac_key: bytes):
        if len(mac_key) != 32:
            raise ParameterError("mac key must be 32 bytes")
        self._mac_key = mac_key
        self._records: list[tuple[bytes, int, bytes]] = []
        self._lock = threading.Lock()

    @property
    def records(self) -> tuple[tuple[bytes, int, bytes], ...]:
        return tuple(self._records)

    def stamp(self, blob: bytes, clock: MeteredClock) -> Stamp:
        """Append a record at the clock's current logical time.

        tau is bumped past the previous record when the clock has not
        advanced, keeping the sequence strictly increasing.
        """
        digest = hashlib.sha256(blob).digest()
        with self._lock:
            tau = clock.now
            if self._records and tau <= self._records[-1][1]:
                tau = self._records[-1][1] + 1
            tag = _tag(self._mac_key, digest, tau)
            self._records.append((digest, tau, tag))
        return Stamp(tau=tau, auth_tag=tag)

    def verify(self, blob: bytes, stamp: Stamp) -> bool:
        digest = hashlib.sha256(blob).digest()
        return hmac.compare_digest(_tag(self._mac_key, digest, stamp.tau),
                                   stamp.auth_tag)

    def save(self, path) -> None:
        try:
            with open(path, "wb") as fh:
                fh.write(_MAGIC + bytes([_VERSION]))
                for digest, tau, tag in self._records:
                    fh.write(digest + struct.pack(">Q", tau) + tag)
        except OSError as exc:
            raise LedgerError(f"cannot write ledger: {exc}") from exc

    @classmethod
    def load(cls, path, mac_key: bytes) -> "Ledger":
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise LedgerError(f"cannot read ledger: {exc}") from exc
        if len(data) < 5 or data[:4] != _MAGIC or data[4] != _VERSION:
            raise LedgerError("bad ledger header")
        body = data[5:]
        if len(body) % _RECORD_LEN:
            raise LedgerError("truncated ledger record")
        ledger = cls(mac_key)
        last_tau = -1
        for off in range(0, len(body), _RECORD_LEN):
            digest = body[off:off + 32]
            (tau,) = struct.unpack(">Q", body[off + 32:off + 40])
            tag = body[off + 40:off + 72]
            if tau <= last_tau:
                raise LedgerError("ledger tau sequence not strictly increasing")
            last_tau = tau
            ledger._records.append((digest, tau, tag))
        return ledger
