"""20-byte account addresses, rendered as 0x-prefixed hex."""

from __future__ import annotations


class AddressError(ValueError):
    pass


class Address:
    """Immutable 20-byte identifier. Parsing is case-insensitive."""

    __slots__ = ("_bytes",)

    def __init__(self, raw: bytes):
        if not isinstance(raw, bytes) or len(raw) != 20:
            raise AddressError(f"address must be exactly 20 bytes, got {raw!r}")
        object.__setattr__(self, "_bytes", raw)

    @classmethod
    def from_hex(cls, text: str) -> "Address":
        if not isinstance(text, str):
            raise AddressError(f"address must be a string, got {type(text).__name__}")
        body = text[2:] if text[:2].lower() == "0x" else text
        if len(body) != 40:
            raise AddressError(f"address must be 40 hex digits, got {text!r}")
        try:
            return cls(bytes.fromhex(body))
        except ValueError as exc:
            raise AddressError(f"invalid hex in address {text!r}") from exc

    @property
    def bytes(self) -> bytes:
        return self._bytes

    @property
    def hex(self) -> str:
        return "0x" + self._bytes.hex()

    def __str__(self) -> str:
        return self.hex

    def __repr__(self) -> str:
        return f"Address({self.hex})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Address) and other._bytes == self._bytes

    def __hash__(self) -> int:
        return hash(self._bytes)

    def __lt__(self, other: "Address") -> bool:
        return self._bytes < other._bytes

    def __setattr__(self, name, value):
        raise AttributeError("Address is immutable")

    # immutable: share instances under copy/deepcopy, rebuild under pickle
    def __copy__(self) -> "Address":
        return self

    def __deepcopy__(self, memo) -> "Address":
        return self

    def __reduce__(self):
        return (Address, (self._bytes,))


ZERO_ADDRESS = Address(b"\x00" * 20)
