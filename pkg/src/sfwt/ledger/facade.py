"""HTTP facade over the simulated chain.

Endpoints:
  POST /chain/tx        submit a transaction        -> {"txId": ...}
  GET  /chain/receipt/{txId}                        -> receipt or pending
  POST /chain/call      read-only contract call     -> {"result": ...}
  GET  /chain/clock                                 -> {"nowSec": ...}
  POST /chain/advance   move the simulated clock    (dev flag only)
  POST /chain/faucet    credit native currency      (dev flag only)

All integers travel as decimal strings. The service owns the only chain
instance; an optional ticker thread maps wall time onto the simulated
clock for interactive use.
"""

from __future__ import annotations

import threading

import click
import uvicorn
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .. import wire
from ..address import Address
from ..contract import SfwtContract
from ..tokens import MultiTokenEngine, NftEngine
from .chain import Chain, ChainConfig, UnknownOperationError, UnknownSenderError
from .gas import GasSchedule


class TxRequest(BaseModel):
    sender: str
    payload: dict


class CallRequest(BaseModel):
    contract: str
    op: str
    args: dict = {}


class AdvanceRequest(BaseModel):
    deltaSec: str | int


class FaucetRequest(BaseModel):
    address: str
    amountWei: str | int


def build_chain(
    operator: Address,
    admins: frozenset[Address] = frozenset(),
    block_interval_sec: int = 10,
    gas: GasSchedule | None = None,
    genesis: dict[Address, int] | None = None,
    event_log_path=None,
) -> Chain:
    """A chain with both token engines and the Wi-Fi token contract deployed.

    Direct transaction access to the raw engines is restricted to the
    operator and admins; user token flow goes through the contract.
    """
    chain = Chain(ChainConfig(
        block_interval_sec=block_interval_sec,
        gas=gas or GasSchedule(),
        event_log_path=event_log_path,
    ))
    tokens = MultiTokenEngine()
    nft = NftEngine()
    tokens.restricted_to = frozenset({operator}) | admins
    nft.restricted_to = frozenset({operator}) | admins
    chain.register_contract(tokens)
    chain.register_contract(nft)
    chain.register_contract(SfwtContract(tokens, operator=operator, admins=admins))
    chain.create_account(operator, 0)
    for address, balance in (genesis or {}).items():
        chain.create_account(address, balance)
    return chain


def create_chain_app(chain: Chain, allow_dev_controls: bool = False) -> FastAPI:
    app = FastAPI(title="sfwt-chain", version="0.1.0")

    def _dev_only():
        if not allow_dev_controls:
            raise HTTPException(status_code=403, detail="dev controls disabled")

    @app.post("/chain/tx")
    def submit_tx(req: TxRequest) -> dict:
        try:
            sender = wire.decode_address(req.sender)
            contract = req.payload.get("contract")
            op = req.payload.get("op")
            args = req.payload.get("args", {})
            if not isinstance(contract, str) or not isinstance(op, str) or not isinstance(args, dict):
                raise wire.WireError("payload must carry contract, op and args")
            payload = wire.decode_call(contract, op, args)
        except wire.WireError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        try:
            tx = chain.submit(sender, payload)
        except (UnknownSenderError, UnknownOperationError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"txId": tx.id}

    @app.get("/chain/receipt/{tx_id}")
    def get_receipt(tx_id: str) -> dict:
        receipt = chain.receipt(tx_id)
        if receipt is not None:
            return wire.encode_receipt(receipt)
        if chain.is_known_tx(tx_id):
            return {"txId": tx_id, "status": "pending"}
        raise HTTPException(status_code=404, detail=f"unknown transaction {tx_id}")

    @app.post("/chain/call")
    def call(req: CallRequest) -> dict:
        try:
            payload = wire.decode_call(req.contract, req.op, req.args)
        except wire.WireError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        try:
            result = chain.call_read(payload)
        except UnknownOperationError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"result": wire.to_wire_value(result)}

    @app.get("/chain/clock")
    def clock() -> dict:
        return {"nowSec": wire.encode_int(chain.now_sec)}

    @app.post("/chain/advance")
    def advance(req: AdvanceRequest) -> dict:
        _dev_only()
        try:
            delta = wire.decode_int(req.deltaSec)
        except wire.WireError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        before = len(chain.blocks)
        now = chain.advance_clock(delta)
        produced = [b.number for b in chain.blocks[before:]]
        return {"nowSec": wire.encode_int(now), "blocks": produced}

    @app.post("/chain/faucet")
    def faucet(req: FaucetRequest) -> dict:
        _dev_only()
        try:
            address = wire.decode_address(req.address)
            amount = wire.decode_int(req.amountWei)
        except wire.WireError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        chain.create_account(address, amount)
        return {"balanceWei": wire.encode_int(chain.balance_of_native(address))}

    return app


class ClockTicker(threading.Thread):
    """Advances the simulated clock by `rate` seconds per wall second."""

    def __init__(self, chain: Chain, rate: float, tick_wall_sec: float = 0.1):
        super().__init__(daemon=True)
        self._chain = chain
        self._rate = rate
        self._tick = tick_wall_sec
        self._stop = threading.Event()
        self._carry = 0.0

    def run(self) -> None:
        while not self._stop.wait(self._tick):
            self._carry += self._rate * self._tick
            whole = int(self._carry)
            if whole:
                self._carry -= whole
                self._chain.advance_clock(whole)

    def stop(self) -> None:
        self._stop.set()


@click.command()
@click.option("--listen-addr", default="127.0.0.1:8545", show_default=True, help="host:port to bind")
@click.option("--block-interval", default=10, show_default=True, type=int, help="seconds between blocks")
@click.option("--operator", required=True, help="operator address (0x-hex)")
@click.option("--admin", "admins", multiple=True, help="additional mint-authorized address; repeatable")
@click.option("--genesis", type=click.Path(exists=True), default=None,
              help="JSON file mapping address -> starting balance (wei, decimal string)")
@click.option("--allow-dev", is_flag=True, help="enable /chain/advance and /chain/faucet")
@click.option("--auto-advance", default=0.0, show_default=True, type=float,
              help="simulated seconds per wall second (0 = manual clock)")
@click.option("--event-log", type=click.Path(), default=None, help="append-only JSONL event log")
def main(listen_addr, block_interval, operator, admins, genesis, allow_dev, auto_advance, event_log):
    """Run the simulated chain with the Wi-Fi token contract deployed."""
    import json as _json
    from pathlib import Path

    genesis_map: dict[Address, int] = {}
    if genesis:
        raw = _json.loads(Path(genesis).read_text())
        genesis_map = {Address.from_hex(k): int(v) for k, v in raw.items()}
    chain = build_chain(
        operator=Address.from_hex(operator),
        admins=frozenset(Address.from_hex(a) for a in admins),
        block_interval_sec=block_interval,
        genesis=genesis_map,
        event_log_path=Path(event_log) if event_log else None,
    )
    app = create_chain_app(chain, allow_dev_controls=allow_dev)
    if auto_advance > 0:
        ClockTicker(chain, auto_advance).start()
    host, _, port = listen_addr.rpartition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))


if __name__ == "__main__":
    main()
