"""Session signing: ECDSA over secp256k1 with public-key recovery.

The signed message is keccak256(session_id) with no personal-message prefix.
Nonces are deterministic (RFC 6979 with HMAC-SHA256), so a given key and
session always produce the same 65-byte signature r || s || v. Emitted
signatures are canonical (low-s); recovery rejects high-s.
"""

from __future__ import annotations

import hashlib
import hmac
import secrets
from dataclasses import dataclass
from random import Random

from ..address import Address
from . import curve
from .keccak import keccak256

SESSION_ID_BYTES = 32

_HALF_N = curve.N // 2


class RecoveryError(ValueError):
    """Signature cannot be mapped back to a signer; never a silent wrong address."""


@dataclass(frozen=True)
class KeyPair:
    sk: int
    pk: curve.AffinePoint

    @property
    def sk_bytes(self) -> bytes:
        return self.sk.to_bytes(32, "big")

    @property
    def pk_bytes(self) -> bytes:
        """64-byte uncompressed point, x || y, no prefix byte."""
        x, y = self.pk
        return x.to_bytes(32, "big") + y.to_bytes(32, "big")

    @property
    def address(self) -> Address:
        return address_of(self.pk)


@dataclass(frozen=True)
class Signature:
    r: int
    s: int
    v: int  # recovery id, parity of the nonce point's y

    def to_bytes(self) -> bytes:
        return self.r.to_bytes(32, "big") + self.s.to_bytes(32, "big") + bytes([self.v])

    @property
    def hex(self) -> str:
        return "0x" + self.to_bytes().hex()

    @classmethod
    def from_bytes(cls, raw: bytes) -> "Signature":
        if len(raw) != 65:
            raise RecoveryError(f"signature must be 65 bytes, got {len(raw)}")
        return cls(
            r=int.from_bytes(raw[:32], "big"),
            s=int.from_bytes(raw[32:64], "big"),
            v=raw[64],
        )

    @classmethod
    def from_hex(cls, text: str) -> "Signature":
        body = text[2:] if text[:2].lower() == "0x" else text
        if len(body) != 130:
            raise RecoveryError(f"signature must be 130 hex digits, got {text!r}")
        try:
            return cls.from_bytes(bytes.fromhex(body))
        except ValueError as exc:
            raise RecoveryError(f"invalid hex in signature") from exc


def generate_keypair(rng_seed: int | None = None) -> KeyPair:
    """New keypair from the OS CSPRNG, or deterministic when seeded (tests)."""
    draw = Random(rng_seed).randbytes if rng_seed is not None else secrets.token_bytes
    while True:
        candidate = int.from_bytes(draw(32), "big")
        if 0 < candidate < curve.N:
            return keypair_from_secret(candidate)


def keypair_from_secret(sk: int) -> KeyPair:
    if not 0 < sk < curve.N:
        raise ValueError("secret scalar out of range")
    return KeyPair(sk=sk, pk=curve.scalar_mult_generator(sk))


def address_of(pk: curve.AffinePoint) -> Address:
    """Last 20 bytes of keccak256 over the 64-byte public point."""
    if not curve.is_on_curve(pk):
        raise ValueError("invalid public key point")
    x, y = pk
    encoded = x.to_bytes(32, "big") + y.to_bytes(32, "big")
    return Address(keccak256(encoded)[12:])


def new_session_id(rng: Random | None = None) -> bytes:
    """Fresh 256-bit session identifier; CSPRNG unless a seeded Random is given."""
    if rng is not None:
        return rng.randbytes(SESSION_ID_BYTES)
    return secrets.token_bytes(SESSION_ID_BYTES)


def _rfc6979_nonces(digest: bytes, sk: int):
    """Deterministic nonce candidates per RFC 6979 (HMAC-SHA256), prehashed."""
    x = sk.to_bytes(32, "big")
    h1 = (int.from_bytes(digest, "big") % curve.N).to_bytes(32, "big")
    v = b"\x01" * 32
    k = b"\x00" * 32
    k = hmac.new(k, v + b"\x00" + x + h1, hashlib.sha256).digest()
    v = hmac.new(k, v, hashlib.sha256).digest()
    k = hmac.new(k, v + b"\x01" + x + h1, hashlib.sha256).digest()
    v = hmac.new(k, v, hashlib.sha256).digest()
    while True:
        v = hmac.new(k, v, hashlib.sha256).digest()
        candidate = int.from_bytes(v, "big")
        if 0 < candidate < curve.N:
            yield candidate
        k = hmac.new(k, v + b"\x00", hashlib.sha256).digest()
        v = hmac.new(k, v, hashlib.sha256).digest()


def _session_digest(session_id: bytes) -> bytes:
    if len(session_id) != SESSION_ID_BYTES:
        raise ValueError(f"session id must be {SESSION_ID_BYTES} bytes")
    return keccak256(session_id)


def sign_session(session_id: bytes, sk: int) -> Signature:
    if not 0 < sk < curve.N:
        raise ValueError("secret scalar out of range")
    digest = _session_digest(session_id)
    z = int.from_bytes(digest, "big") % curve.N
    for k in _rfc6979_nonces(digest, sk):
        point = curve.scalar_mult_generator(k)
        assert point is not None
        r = point[0] % curve.N
        if r == 0:
            continue
        s = pow(k, -1, curve.N) * (z + r * sk) % curve.N
        if s == 0:
            continue
        v = point[1] & 1
        if s > _HALF_N:  # canonicalize; flipping s negates the nonce point
            s = curve.N - s
            v ^= 1
        return Signature(r=r, s=s, v=v)
    raise AssertionError("unreachable: RFC 6979 stream exhausted")


def recover_signer(session_id: bytes, sig: Signature) -> Address:
    """Recover the signer address, or raise RecoveryError for malformed input.

    Rejects r/s outside [1, n-1], non-canonical (high) s, bad recovery ids,
    and r values that are not curve abscissas.
    """
    if sig.v not in (0, 1):
        raise RecoveryError(f"recovery id must be 0 or 1, got {sig.v}")
    if not 0 < sig.r < curve.N:
        raise RecoveryError("r out of range")
    if not 0 < sig.s < curve.N:
        raise RecoveryError("s out of range")
    if sig.s > _HALF_N:
        raise RecoveryError("non-canonical signature (high s)")
    z = int.from_bytes(_session_digest(session_id), "big") % curve.N
    try:
        nonce_point = curve.lift_x(sig.r, odd_y=bool(sig.v))
    except curve.CurveError as exc:
        raise RecoveryError(str(exc)) from exc
    r_inv = pow(sig.r, -1, curve.N)
    u1 = (-z * r_inv) % curve.N
    u2 = (sig.s * r_inv) % curve.N
    pk = curve.point_add(
        curve.scalar_mult_generator(u1),
        curve.scalar_mult(u2, nonce_point),
    )
    if pk is None:
        raise RecoveryError("recovered point at infinity")
    return address_of(pk)
