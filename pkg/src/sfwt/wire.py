"""Wire encodings shared by the chain facade, the AP API and the clients.

Conventions:
  - addresses: 0x + 40 hex digits (case-insensitive on input, lower out)
  - integers: decimal strings (values may exceed 64 bits)
  - session ids: 0x + 64 hex; signatures: 0x + 130 hex (r || s || v)
  - request bodies: compact JSON, keys in the order fixed by the schemas
    below, so independently written clients can produce byte-identical
    bodies

Every chain operation has an argument schema (wire name, python name,
codec) used to decode requests on the service side and to encode them, in
order, on the client side.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .address import Address
from .contract import VerifyResult, FailReason
from .ledger.chain import CallPayload, ChainEvent, GasReceipt
from .units import parse_data_bytes, parse_duration_sec


class WireError(ValueError):
    pass


# -- scalar codecs -----------------------------------------------------------


def encode_int(value: int) -> str:
    return str(int(value))


def decode_int(value) -> int:
    if isinstance(value, bool):
        raise WireError(f"expected integer, got boolean {value}")
    if isinstance(value, int):
        result = value
    elif isinstance(value, str):
        try:
            result = int(value, 10)
        except ValueError:
            raise WireError(f"bad integer {value!r}")
    else:
        raise WireError(f"expected integer, got {type(value).__name__}")
    if result < 0:
        raise WireError(f"negative value {result} not allowed on the wire")
    return result


def encode_address(value: Address) -> str:
    return value.hex


def decode_address(value) -> Address:
    try:
        return Address.from_hex(value)
    except Exception as exc:
        raise WireError(f"bad address {value!r}: {exc}")


def encode_hex_bytes(value: bytes) -> str:
    return "0x" + value.hex()


def decode_hex_bytes(value, expect_len: int | None = None) -> bytes:
    if not isinstance(value, str):
        raise WireError(f"expected 0x-hex string, got {type(value).__name__}")
    body = value[2:] if value[:2].lower() == "0x" else value
    try:
        raw = bytes.fromhex(body)
    except ValueError:
        raise WireError(f"bad hex string {value!r}")
    if expect_len is not None and len(raw) != expect_len:
        raise WireError(f"expected {expect_len} bytes, got {len(raw)}")
    return raw


def _decode_string(value) -> str:
    if not isinstance(value, str):
        raise WireError(f"expected string, got {type(value).__name__}")
    return value


def _decode_uint_list(value) -> list[int]:
    if not isinstance(value, list):
        raise WireError(f"expected list of integers, got {type(value).__name__}")
    return [decode_int(item) for item in value]


def _decode_duration(value) -> int:
    try:
        return parse_duration_sec(value)
    except ValueError as exc:
        raise WireError(str(exc))


def _decode_datacap(value) -> int:
    try:
        return parse_data_bytes(value)
    except ValueError as exc:
        raise WireError(str(exc))


_CODECS = {
    "uint": (encode_int, decode_int),
    "address": (encode_address, decode_address),
    "string": (lambda v: str(v), _decode_string),
    # duration/datacap accept "1day" / "10GB" display strings on the wire
    "duration": (lambda v: v if isinstance(v, str) else encode_int(v), _decode_duration),
    "datacap": (lambda v: v if isinstance(v, str) else encode_int(v), _decode_datacap),
    "uint_list": (lambda v: [encode_int(x) for x in v], _decode_uint_list),
}


# -- operation schemas -------------------------------------------------------

# (wire arg name, python arg name, codec); order defines the canonical
# JSON key order of client-built bodies
ARG_SCHEMAS: dict[tuple[str, str], tuple[tuple[str, str, str], ...]] = {
    ("sfwt", "mintSfwt"): (
        ("owner", "owner", "address"),
        ("tokenId", "token_id", "uint"),
        ("apId", "ap_id", "string"),
        ("priceWei", "price_wei", "uint"),
        ("duration", "duration", "duration"),
        ("dataCap", "data_cap", "datacap"),
        ("quantity", "quantity", "uint"),
    ),
    ("sfwt", "buySfwt"): (
        ("tokenId", "token_id", "uint"),
        ("quantity", "quantity", "uint"),
        ("sumWei", "sum_wei", "uint"),
    ),
    ("sfwt", "verifySfwt"): (
        ("holder", "holder", "address"),
        ("tokenId", "token_id", "uint"),
        ("currentApId", "current_ap_id", "string"),
        ("usedDataBytes", "used_data_bytes", "uint"),
        ("nowSec", "now_sec", "uint"),
    ),
    ("sfwt", "getMetadata"): (("tokenId", "token_id", "uint"),),
    ("sfwt", "getExpiration"): (
        ("tokenId", "token_id", "uint"),
        ("holder", "holder", "address"),
    ),
    ("sfwt", "listTokens"): (),
    ("erc1155", "mintBatch"): (
        ("to", "to", "address"),
        ("tokenId", "token_id", "uint"),
        ("quantity", "quantity", "uint"),
    ),
    ("erc1155", "safeBatchTransferFrom"): (
        ("from", "frm", "address"),
        ("to", "to", "address"),
        ("tokenId", "token_id", "uint"),
        ("quantity", "quantity", "uint"),
    ),
    ("erc1155", "balanceOf"): (
        ("owner", "owner", "address"),
        ("tokenId", "token_id", "uint"),
    ),
    ("erc721", "mint"): (
        ("to", "to", "address"),
        ("tokenIds", "token_ids", "uint_list"),
    ),
    ("erc721", "transferFrom"): (
        ("from", "frm", "address"),
        ("to", "to", "address"),
        ("tokenIds", "token_ids", "uint_list"),
    ),
    ("erc721", "ownerOf"): (("tokenId", "token_id", "uint"),),
}


def decode_call(contract: str, op: str, wire_args: Mapping[str, Any]) -> CallPayload:
    schema = ARG_SCHEMAS.get((contract, op))
    if schema is None:
        raise WireError(f"unknown operation {contract}.{op}")
    args = {}
    for wire_name, py_name, codec in schema:
        if wire_name not in wire_args:
            raise WireError(f"{contract}.{op}: missing argument {wire_name!r}")
        _, decode = _CODECS[codec]
        try:
            args[py_name] = decode(wire_args[wire_name])
        except WireError as exc:
            raise WireError(f"{contract}.{op}: argument {wire_name!r}: {exc}")
    unknown = set(wire_args) - {w for w, _, _ in schema}
    if unknown:
        raise WireError(f"{contract}.{op}: unexpected arguments {sorted(unknown)}")
    return CallPayload(contract=contract, op=op, args=args)


def encode_call_args(contract: str, op: str, /, **py_args) -> dict[str, Any]:
    """Wire argument mapping in canonical key order (insertion ordered)."""
    schema = ARG_SCHEMAS.get((contract, op))
    if schema is None:
        raise WireError(f"unknown operation {contract}.{op}")
    out: dict[str, Any] = {}
    for wire_name, py_name, codec in schema:
        if py_name not in py_args:
            raise WireError(f"{contract}.{op}: missing argument {py_name!r}")
        encode, _ = _CODECS[codec]
        out[wire_name] = encode(py_args.pop(py_name))
    if py_args:
        raise WireError(f"{contract}.{op}: unexpected arguments {sorted(py_args)}")
    return out


# -- results and receipts ----------------------------------------------------


def to_wire_value(value: Any) -> Any:
    """Generic JSON-safe rendering: big ints to strings, addresses to hex."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return encode_int(value)
    if isinstance(value, Address):
        return value.hex
    if isinstance(value, bytes):
        return encode_hex_bytes(value)
    if isinstance(value, str):
        return value
    if isinstance(value, Mapping):
        return {k: to_wire_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_wire_value(v) for v in value]
    if isinstance(value, VerifyResult):
        return encode_verify_result(value)
    raise WireError(f"cannot encode {type(value).__name__} for the wire")


def encode_verify_result(result: VerifyResult) -> dict:
    return {
        "ok": result.ok,
        "remainingTimeSec": encode_int(result.remaining_time_sec),
        "remainingDataBytes": encode_int(result.remaining_data_bytes),
        "failReason": result.fail_reason.value if result.fail_reason else None,
    }


def decode_verify_result(wire: Mapping[str, Any]) -> VerifyResult:
    reason = wire.get("failReason")
    return VerifyResult(
        ok=bool(wire["ok"]),
        remaining_time_sec=decode_int(wire.get("remainingTimeSec", 0)),
        remaining_data_bytes=decode_int(wire.get("remainingDataBytes", 0)),
        fail_reason=FailReason(reason) if reason else None,
    )


def encode_event(event: ChainEvent) -> dict:
    return {
        "name": event.name,
        "args": {k: to_wire_value(v) for k, v in event.args.items()},
    }


def encode_receipt(receipt: GasReceipt) -> dict:
    return {
        "txId": receipt.tx_id,
        "status": receipt.status,
        "gasUsed": encode_int(receipt.gas_used),
        "blockNumber": encode_int(receipt.block_number),
        "returnValue": to_wire_value(receipt.return_value),
        "error": receipt.error,
        "events": [encode_event(e) for e in receipt.events],
    }


# -- canonical bodies --------------------------------------------------------


def canonical_json(obj: Any) -> bytes:
    """Compact JSON preserving key insertion order; the byte-level contract
    for request bodies shared with non-Python clients."""
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def tx_body(sender: Address, contract: str, op: str, wire_args: Mapping[str, Any]) -> bytes:
    return canonical_json(
        {"sender": sender.hex, "payload": {"contract": contract, "op": op, "args": dict(wire_args)}}
    )


def call_body(contract: str, op: str, wire_args: Mapping[str, Any]) -> bytes:
    return canonical_json({"contract": contract, "op": op, "args": dict(wire_args)})


def ari_body(mac: str, wallet_addr: Address | None = None) -> bytes:
    body: dict[str, Any] = {"mac": mac}
    if wallet_addr is not None:
        body["walletAddr"] = wallet_addr.hex
    return canonical_json(body)


def verify_body(mac: str, session_id_hex: str, signature_hex: str, token_id: int) -> bytes:
    return canonical_json(
        {
            "mac": mac,
            "sessionId": session_id_hex,
            "signature": signature_hex,
            "tokenId": encode_int(token_id),
        }
    )
