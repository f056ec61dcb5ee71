"""Captive-portal style HTTP front end for the gatekeeper.

Wire contract (consumed by the wallet CLI and the browser wallet):
  GET  /portal?mac=..        -> {apId, walletUrl, authorized, remainingTimeSec?}
  POST /auth/ari             {mac[, walletAddr]} -> {sessionId}
  POST /auth/verify          {mac, sessionId, signature, tokenId} ->
                             {ok, remainingTimeSec, remainingDataBytes, failReason?}
  POST /usage                {mac, deltaBytes} -> {usedDataBytes}   (simulation hook)
  GET  /admin/authorized     bearer-token gated dump of the authorized list
  POST /admin/sweep          bearer-token gated manual sweep trigger

The client "connection" is modeled as HTTP carrying a declared MAC; real
packet filtering is out of scope. An optional background thread runs the
sweep on the simulated clock.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path

import click
import httpx
import uvicorn
from fastapi import FastAPI, Header, HTTPException, Query
from pydantic import BaseModel

from .. import wire
from ..address import Address
from ..contract import VerifyResult
from ..crypto import RecoveryError, Signature
from .gatekeeper import ApConfig, Gatekeeper, GatekeeperError, ThrottledError


class AriRequest(BaseModel):
    mac: str
    walletAddr: str | None = None


class VerifyRequest(BaseModel):
    mac: str
    sessionId: str
    signature: str
    tokenId: str | int


class UsageRequest(BaseModel):
    mac: str
    deltaBytes: str | int


class HttpLedger:
    """LedgerGateway over the chain facade's HTTP API."""

    def __init__(self, base_url: str, client: httpx.Client | None = None):
        self._client = client or httpx.Client(base_url=base_url, timeout=10.0)

    def now_sec(self) -> int:
        resp = self._client.get("/chain/clock")
        resp.raise_for_status()
        return wire.decode_int(resp.json()["nowSec"])

    def verify_sfwt(self, holder, token_id, ap_id, used_data_bytes, now_sec) -> VerifyResult:
        body = wire.call_body(
            "sfwt",
            "verifySfwt",
            wire.encode_call_args(
                "sfwt",
                "verifySfwt",
                holder=holder,
                token_id=token_id,
                current_ap_id=ap_id,
                used_data_bytes=used_data_bytes,
                now_sec=now_sec,
            ),
        )
        resp = self._client.post("/chain/call", content=body, headers={"content-type": "application/json"})
        resp.raise_for_status()
        return wire.decode_verify_result(resp.json()["result"])


def create_ap_app(gatekeeper: Gatekeeper) -> FastAPI:
    app = FastAPI(title="sfwt-ap", version="0.1.0")
    config = gatekeeper.config

    def _require_admin(authorization: str | None):
        if config.admin_token is None:
            raise HTTPException(status_code=403, detail="admin endpoint disabled")
        if authorization != f"Bearer {config.admin_token}":
            raise HTTPException(status_code=401, detail="bad admin token")

    @app.get("/portal")
    def portal(mac: str = Query(...)) -> dict:
        try:
            info = gatekeeper.handle_connect(mac)
        except ThrottledError as exc:
            raise HTTPException(status_code=429, detail=str(exc))
        except GatekeeperError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        out = {
            "apId": info.ap_id,
            "walletUrl": info.wallet_url,
            "authorized": info.authorized,
        }
        if info.remaining_time_sec is not None:
            out["remainingTimeSec"] = wire.encode_int(info.remaining_time_sec)
        return out

    @app.post("/auth/ari")
    def ari(req: AriRequest) -> dict:
        wallet_addr = None
        if req.walletAddr is not None:
            try:
                wallet_addr = Address.from_hex(req.walletAddr)
            except Exception as exc:
                raise HTTPException(status_code=400, detail=f"bad walletAddr: {exc}")
        try:
            session_id = gatekeeper.handle_ari(req.mac, wallet_addr)
        except GatekeeperError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        return {"sessionId": wire.encode_hex_bytes(session_id)}

    @app.post("/auth/verify")
    def verify(req: VerifyRequest) -> dict:
        try:
            token_id = wire.decode_int(req.tokenId)
            session_id = wire.decode_hex_bytes(req.sessionId, expect_len=32)
        except wire.WireError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        try:
            signature = Signature.from_hex(req.signature)
        except RecoveryError:
            # unparseable bytes still consume the challenge: protocol answer, not a 4xx
            signature = None
        try:
            response = gatekeeper.handle_verify(req.mac, session_id, signature, token_id)
        except GatekeeperError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        out = {
            "ok": response.ok,
            "remainingTimeSec": wire.encode_int(response.remaining_time_sec),
            "remainingDataBytes": wire.encode_int(response.remaining_data_bytes),
        }
        if response.fail_reason:
            out["failReason"] = response.fail_reason
        return out

    @app.post("/usage")
    def usage(req: UsageRequest) -> dict:
        try:
            delta = wire.decode_int(req.deltaBytes)
        except wire.WireError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        try:
            total = gatekeeper.record_usage(req.mac, delta)
        except GatekeeperError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"usedDataBytes": wire.encode_int(total)}

    @app.get("/admin/authorized")
    def admin_authorized(authorization: str | None = Header(default=None)) -> dict:
        _require_admin(authorization)
        entries = [
            {
                "mac": e.mac,
                "userAddr": e.user_addr.hex,
                "tokenId": wire.encode_int(e.token_id),
                "expiresAtSec": wire.encode_int(e.expires_at_sec),
                "usedDataBytes": wire.encode_int(e.used_data_bytes),
            }
            for e in gatekeeper.authorized_entries()
        ]
        return {"entries": entries}

    @app.post("/admin/sweep")
    def admin_sweep(authorization: str | None = Header(default=None)) -> dict:
        _require_admin(authorization)
        removed = gatekeeper.sweep()
        return {"removed": removed}

    return app


class SweepScheduler(threading.Thread):
    """Runs gatekeeper sweeps on the simulated clock.

    Polls wall time at a small interval and fires whenever the simulated
    clock has crossed the next sweep boundary, so a fast-forwarded clock
    still gets its sweeps.
    """

    def __init__(self, gatekeeper: Gatekeeper, poll_wall_sec: float = 0.2):
        super().__init__(daemon=True)
        self._gatekeeper = gatekeeper
        self._poll = poll_wall_sec
        self._stop = threading.Event()

    def run(self) -> None:
        interval = self._gatekeeper.config.sweep_interval_sec
        next_due: int | None = None
        while not self._stop.wait(self._poll):
            try:
                now = self._gatekeeper.ledger.now_sec()
            except Exception:
                continue  # ledger unreachable; sweep policy handles persistent failure
            if next_due is None:
                next_due = now + interval
            if now >= next_due:
                self._gatekeeper.sweep(now)
                next_due = now + interval

    def stop(self) -> None:
        self._stop.set()


def _parse_config_file(path: Path) -> dict:
    """key=value lines or a JSON object; keys match the CLI flag names."""
    text = path.read_text()
    if text.lstrip().startswith("{"):
        return json.loads(text)
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"bad config line {line!r}")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


@click.command()
@click.option("--ap-id", default=None, help="identifier this AP announces and tokens must match")
@click.option("--ledger-endpoint", default=None, help="base URL of the chain facade")
@click.option("--listen-addr", default=None, help="host:port to bind [default: 127.0.0.1:9000]")
@click.option("--sweep-interval", default=None, type=int, help="seconds between sweeps [default: 30]")
@click.option("--session-ttl", default=None, type=int, help="challenge lifetime in seconds [default: 120]")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="config file (key=value lines or JSON); flags override it")
@click.option("--wallet-url", default=None, help="wallet URL announced on the portal page")
@click.option("--admin-token", default=None, help="bearer token for /admin endpoints")
@click.option("--max-pending", default=None, type=int, help="pending session cap [default: 1024]")
@click.option("--no-auto-sweep", is_flag=True, help="disable the background sweep thread")
def main(ap_id, ledger_endpoint, listen_addr, sweep_interval, session_ttl, config_path,
         wallet_url, admin_token, max_pending, no_auto_sweep):
    """Run the access-point authorization daemon."""
    file_conf = _parse_config_file(Path(config_path)) if config_path else {}

    def pick(flag_value, key, default, cast=lambda v: v):
        if flag_value is not None:
            return flag_value
        if key in file_conf:
            return cast(file_conf[key])
        return default

    ap_config = ApConfig(
        ap_id=pick(ap_id, "ap-id", "AP1"),
        sweep_interval_sec=pick(sweep_interval, "sweep-interval", 30, int),
        session_ttl_sec=pick(session_ttl, "session-ttl", 120, int),
        max_pending_sessions=pick(max_pending, "max-pending", 1024, int),
        wallet_url=pick(wallet_url, "wallet-url", "http://localhost:8080/"),
        admin_token=pick(admin_token, "admin-token", None),
    )
    endpoint = pick(ledger_endpoint, "ledger-endpoint", "http://127.0.0.1:8545")
    addr = pick(listen_addr, "listen-addr", "127.0.0.1:9000")
    gatekeeper = Gatekeeper(ap_config, HttpLedger(endpoint))
    app = create_ap_app(gatekeeper)
    if not no_auto_sweep:
        SweepScheduler(gatekeeper).start()
    host, _, port = addr.rpartition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))


if __name__ == "__main__":
    main()
