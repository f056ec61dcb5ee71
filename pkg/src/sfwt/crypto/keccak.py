"""Keccak-256 (the pre-FIPS variant used for account addresses).

Pure-Python sponge over Keccak-f[1600], rate 1088 / capacity 512. Differs
from NIST SHA3-256 only in the first padding byte (0x01 instead of 0x06);
the test suite exploits that to cross-validate the permutation against
hashlib.sha3_256.

Round constants and rotation offsets are derived programmatically from the
reference LFSR and pi-walk rather than transcribed tables.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_RATE = 136  # bytes; 1600 - 2*256 bits


def _round_constants() -> tuple[int, ...]:
    # rc(t) from the degree-8 LFSR x^8 + x^6 + x^5 + x^4 + 1
    bits = []
    reg = 1
    for _ in range(7 * 24):
        bits.append(reg & 1)
        reg = ((reg << 1) ^ (0x71 if reg & 0x80 else 0)) & 0xFF
    constants = []
    for rnd in range(24):
        rc = 0
        for j in range(7):
            if bits[7 * rnd + j]:
                rc |= 1 << ((1 << j) - 1)
        constants.append(rc)
    return tuple(constants)


def _rotation_offsets() -> tuple[tuple[int, ...], ...]:
    offsets = [[0] * 5 for _ in range(5)]
    x, y = 1, 0
    for t in range(24):
        offsets[x][y] = ((t + 1) * (t + 2) // 2) % 64
        x, y = y, (2 * x + 3 * y) % 5
    return tuple(tuple(row) for row in offsets)


_RC = _round_constants()
_ROT = _rotation_offsets()


def _rol(value: int, shift: int) -> int:
    if not shift:
        return value
    return ((value << shift) | (value >> (64 - shift))) & _MASK


def _keccak_f(lanes: list[list[int]]) -> None:
    for rnd in range(24):
        # theta
        c = [lanes[x][0] ^ lanes[x][1] ^ lanes[x][2] ^ lanes[x][3] ^ lanes[x][4] for x in range(5)]
        d = [c[(x - 1) % 5] ^ _rol(c[(x + 1) % 5], 1) for x in range(5)]
        for x in range(5):
            col = lanes[x]
            dx = d[x]
            for y in range(5):
                col[y] ^= dx
        # rho + pi
        b = [[0] * 5 for _ in range(5)]
        for x in range(5):
            for y in range(5):
                b[y][(2 * x + 3 * y) % 5] = _rol(lanes[x][y], _ROT[x][y])
        # chi
        for x in range(5):
            bx1 = b[(x + 1) % 5]
            bx2 = b[(x + 2) % 5]
            col = lanes[x]
            bx = b[x]
            for y in range(5):
                col[y] = bx[y] ^ ((~bx1[y] & _MASK) & bx2[y])
        # iota
        lanes[0][0] ^= _RC[rnd]


def _sponge_256(data: bytes, domain: int) -> bytes:
    lanes = [[0] * 5 for _ in range(5)]
    padded = bytearray(data)
    padded.append(domain)
    padded.extend(b"\x00" * (-len(padded) % _RATE))
    padded[-1] ^= 0x80
    for offset in range(0, len(padded), _RATE):
        block = padded[offset : offset + _RATE]
        for i in range(_RATE // 8):
            lanes[i % 5][i // 5] ^= int.from_bytes(block[8 * i : 8 * i + 8], "little")
        _keccak_f(lanes)
    out = bytearray()
    for i in range(4):
        out += lanes[i % 5][i // 5].to_bytes(8, "little")
    return bytes(out)


def keccak256(data: bytes) -> bytes:
    """32-byte Keccak-256 digest (legacy 0x01 padding)."""
    return _sponge_256(data, 0x01)


def sha3_256(data: bytes) -> bytes:
    """NIST SHA3-256 (0x06 padding). Exists for cross-validation tests."""
    return _sponge_256(data, 0x06)
