"""HTTP clients for the chain facade and the AP daemon.

Request bodies are built through the canonical encoders in `wire` so that
any conforming client (this one, the browser wallet) emits byte-identical
bytes for the same request.
"""

from __future__ import annotations

import time
from typing import Any

import httpx

from .. import wire
from ..address import Address
from ..contract import VerifyResult

_JSON = {"content-type": "application/json"}


class ClientError(Exception):
    pass


class TxTimeout(ClientError):
    pass


def _check(resp: httpx.Response) -> dict:
    if resp.status_code >= 400:
        try:
            detail = resp.json().get("detail", resp.text)
        except Exception:
            detail = resp.text
        raise ClientError(f"{resp.request.method} {resp.request.url.path}: {resp.status_code} {detail}")
    return resp.json()


class _HttpBase:
    """Shared request helpers; transport failures surface as ClientError."""

    def __init__(self, base_url: str, client: httpx.Client | None = None):
        self._client = client or httpx.Client(base_url=base_url, timeout=10.0)

    def _get(self, path: str, **kwargs) -> dict:
        try:
            return _check(self._client.get(path, **kwargs))
        except httpx.HTTPError as exc:
            raise ClientError(f"GET {path}: {exc}") from exc

    def _post(self, path: str, **kwargs) -> dict:
        try:
            return _check(self._client.post(path, **kwargs))
        except httpx.HTTPError as exc:
            raise ClientError(f"POST {path}: {exc}") from exc


class ChainClient(_HttpBase):
    def clock(self) -> int:
        return wire.decode_int(self._get("/chain/clock")["nowSec"])

    def submit(self, sender: Address, contract: str, op: str, **py_args) -> str:
        args = wire.encode_call_args(contract, op, **py_args)
        body = wire.tx_body(sender, contract, op, args)
        return self._post("/chain/tx", content=body, headers=_JSON)["txId"]

    def receipt(self, tx_id: str) -> dict:
        return self._get(f"/chain/receipt/{tx_id}")

    def wait_receipt(self, tx_id: str, timeout_wall_sec: float = 15.0, poll_sec: float = 0.05) -> dict:
        """Poll until the transaction leaves the pending queue."""
        deadline = time.monotonic() + timeout_wall_sec
        while True:
            receipt = self.receipt(tx_id)
            if receipt.get("status") != "pending":
                return receipt
            if time.monotonic() >= deadline:
                raise TxTimeout(
                    f"transaction {tx_id} still pending after {timeout_wall_sec}s; "
                    "is the chain producing blocks?"
                )
            time.sleep(poll_sec)

    def call(self, contract: str, op: str, **py_args) -> Any:
        args = wire.encode_call_args(contract, op, **py_args)
        body = wire.call_body(contract, op, args)
        return self._post("/chain/call", content=body, headers=_JSON)["result"]

    # typed read helpers ------------------------------------------------------

    def balance_of(self, owner: Address, token_id: int) -> int:
        return wire.decode_int(self.call("erc1155", "balanceOf", owner=owner, token_id=token_id))

    def metadata(self, token_id: int) -> dict:
        return self.call("sfwt", "getMetadata", token_id=token_id)

    def expiration(self, token_id: int, holder: Address) -> int:
        return wire.decode_int(self.call("sfwt", "getExpiration", token_id=token_id, holder=holder))

    def list_tokens(self) -> list[int]:
        return [wire.decode_int(t) for t in self.call("sfwt", "listTokens")]

    def verify(self, holder: Address, token_id: int, ap_id: str, used: int, now: int) -> VerifyResult:
        result = self.call(
            "sfwt",
            "verifySfwt",
            holder=holder,
            token_id=token_id,
            current_ap_id=ap_id,
            used_data_bytes=used,
            now_sec=now,
        )
        return wire.decode_verify_result(result)

    # dev-mode helpers ---------------------------------------------------------

    def advance(self, delta_sec: int) -> int:
        body = wire.canonical_json({"deltaSec": wire.encode_int(delta_sec)})
        return wire.decode_int(self._post("/chain/advance", content=body, headers=_JSON)["nowSec"])

    def faucet(self, address: Address, amount_wei: int) -> int:
        body = wire.canonical_json(
            {"address": address.hex, "amountWei": wire.encode_int(amount_wei)}
        )
        return wire.decode_int(self._post("/chain/faucet", content=body, headers=_JSON)["balanceWei"])


class ApClient(_HttpBase):
    def portal(self, mac: str) -> dict:
        return self._get("/portal", params={"mac": mac})

    def ari(self, mac: str, wallet_addr: Address | None = None) -> str:
        body = wire.ari_body(mac, wallet_addr)
        return self._post("/auth/ari", content=body, headers=_JSON)["sessionId"]

    def verify(self, mac: str, session_id_hex: str, signature_hex: str, token_id: int) -> dict:
        body = wire.verify_body(mac, session_id_hex, signature_hex, token_id)
        return self._post("/auth/verify", content=body, headers=_JSON)

    def usage(self, mac: str, delta_bytes: int) -> int:
        body = wire.canonical_json({"mac": mac, "deltaBytes": wire.encode_int(delta_bytes)})
        return wire.decode_int(self._post("/usage", content=body, headers=_JSON)["usedDataBytes"])

    def admin_authorized(self, token: str) -> list[dict]:
        return self._get("/admin/authorized", headers={"authorization": f"Bearer {token}"})["entries"]

    def admin_sweep(self, token: str) -> list[str]:
        return self._post("/admin/sweep", headers={"authorization": f"Bearer {token}"})["removed"]
