"""Deterministic simulated blockchain.

Accounts hold a native currency; registered contracts execute inside
transactions that wait for block inclusion, while read operations answer
immediately against committed state. Time is an explicit simulated clock;
blocks land exactly on interval boundaries with no jitter. A single lock
serializes all mutation, and reads take the same lock so they always see a
committed snapshot.
"""

from __future__ import annotations

import copy
import json
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from ..address import Address
from .gas import GasMeter, GasSchedule


class ChainError(Exception):
    pass


class UnknownSenderError(ChainError):
    pass


class UnknownOperationError(ChainError):
    pass


class InsufficientFundsError(ChainError):
    pass


class ContractRevert(Exception):
    """Raised by contract code when a guard fails; the transaction is rolled back."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class ChainConfig:
    block_interval_sec: int = 10
    gas: GasSchedule = field(default_factory=GasSchedule)
    event_log_path: Path | None = None

    def __post_init__(self):
        if self.block_interval_sec <= 0:
            raise ValueError("block interval must be positive")


@dataclass(frozen=True)
class Block:
    number: int
    timestamp_sec: int
    tx_ids: tuple[str, ...]


@dataclass(frozen=True)
class CallPayload:
    contract: str
    op: str
    args: Mapping[str, Any]


@dataclass(frozen=True)
class Transaction:
    id: str
    sender: Address
    payload: CallPayload
    submitted_at_sec: int


@dataclass(frozen=True)
class ChainEvent:
    name: str
    args: Mapping[str, Any]
    block_number: int
    tx_id: str


@dataclass(frozen=True)
class GasReceipt:
    tx_id: str
    status: str  # "success" | "reverted"
    gas_used: int
    block_number: int
    return_value: Any = None
    error: str | None = None
    events: tuple[ChainEvent, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status == "success"


class Contract:
    """Base for chain-hosted contracts.

    Subclasses declare `tx_ops` / `read_ops` mapping wire op names to method
    names, and list every attribute holding mutable state in
    `mutable_state` so failed transactions can be rolled back wholesale.
    External transaction dispatch honors `restricted_to`; in-process calls
    between contracts bypass it.
    """

    name: str = ""
    tx_ops: Mapping[str, str] = {}
    read_ops: Mapping[str, str] = {}
    mutable_state: tuple[str, ...] = ()

    def __init__(self):
        self.restricted_to: frozenset[Address] | None = None

    def snapshot(self) -> dict:
        return copy.deepcopy({name: getattr(self, name) for name in self.mutable_state})

    def restore(self, snap: dict) -> None:
        for name, value in snap.items():
            setattr(self, name, value)

    def execute_tx(self, op: str, args: Mapping[str, Any], ctx: "TxContext") -> Any:
        if self.restricted_to is not None and ctx.sender not in self.restricted_to:
            raise ContractRevert("UNAUTHORIZED")
        return getattr(self, self.tx_ops[op])(ctx, **args)

    def execute_read(self, op: str, args: Mapping[str, Any]) -> Any:
        return getattr(self, self.read_ops[op])(**args)


class TxContext:
    """Execution context handed to contract transaction code."""

    def __init__(self, chain: "Chain", sender: Address, now_sec: int, meter: GasMeter):
        self._chain = chain
        self.sender = sender
        self.now_sec = now_sec
        self.meter = meter
        self.events: list[tuple[str, dict]] = []

    def emit(self, name: str, args: dict) -> None:
        self.meter.event()
        self.events.append((name, dict(args)))

    def transfer_native(self, frm: Address, to: Address, amount_wei: int) -> None:
        """Move native currency inside a transaction; reverts on shortfall."""
        try:
            self._chain._transfer_locked(frm, to, amount_wei)
        except InsufficientFundsError:
            raise ContractRevert("INSUFFICIENT_FUNDS")

    def contract(self, name: str) -> Contract:
        return self._chain._contracts[name]


class Chain:
    """The simulated ledger. All public methods are thread-safe."""

    def __init__(self, config: ChainConfig | None = None):
        self.config = config or ChainConfig()
        self._lock = threading.RLock()
        self._now_sec = 0
        self._balances: dict[Address, int] = {}
        self._contracts: dict[str, Contract] = {}
        self._pending: list[Transaction] = []
        self._receipts: dict[str, GasReceipt] = {}
        self._tx_counter = 0
        self.blocks: list[Block] = [Block(number=0, timestamp_sec=0, tx_ids=())]
        self.events: list[ChainEvent] = []

    # -- accounts ----------------------------------------------------------

    def create_account(self, address: Address, balance_wei: int = 0) -> None:
        with self._lock:
            if balance_wei < 0:
                raise ValueError("balance must be non-negative")
            self._balances.setdefault(address, 0)
            self._balances[address] += balance_wei

    def has_account(self, address: Address) -> bool:
        with self._lock:
            return address in self._balances

    def balance_of_native(self, address: Address) -> int:
        with self._lock:
            return self._balances.get(address, 0)

    def total_native_supply(self) -> int:
        with self._lock:
            return sum(self._balances.values())

    def transfer_native(self, frm: Address, to: Address, amount_wei: int) -> bool:
        """Direct balance move outside any transaction; False on shortfall."""
        with self._lock:
            try:
                self._transfer_locked(frm, to, amount_wei)
                return True
            except InsufficientFundsError:
                return False

    def _transfer_locked(self, frm: Address, to: Address, amount_wei: int) -> None:
        if amount_wei < 0:
            raise ValueError("transfer amount must be non-negative")
        if self._balances.get(frm, 0) < amount_wei:
            raise InsufficientFundsError(f"{frm} holds less than {amount_wei}")
        self._balances[frm] -= amount_wei
        self._balances.setdefault(to, 0)
        self._balances[to] += amount_wei

    # -- contracts ---------------------------------------------------------

    def register_contract(self, contract: Contract) -> None:
        with self._lock:
            if contract.name in self._contracts:
                raise ChainError(f"contract {contract.name!r} already registered")
            self._contracts[contract.name] = contract

    # -- clock and blocks --------------------------------------------------

    @property
    def now_sec(self) -> int:
        with self._lock:
            return self._now_sec

    def advance_clock(self, delta_sec: int) -> int:
        """Advance the clock, producing one block per crossed boundary."""
        if delta_sec < 0:
            raise ValueError("clock can only move forward")
        with self._lock:
            self._now_sec += delta_sec
            interval = self.config.block_interval_sec
            while (len(self.blocks)) * interval <= self._now_sec:
                self._produce_block_locked()
            return self._now_sec

    def produce_block(self) -> Block:
        with self._lock:
            return self._produce_block_locked()

    def _produce_block_locked(self) -> Block:
        number = len(self.blocks)
        timestamp = number * self.config.block_interval_sec
        drained, self._pending = self._pending, []
        tx_ids = []
        for tx in drained:
            receipt = self._execute_tx_locked(tx, number, timestamp)
            self._receipts[tx.id] = receipt
            tx_ids.append(tx.id)
        block = Block(number=number, timestamp_sec=timestamp, tx_ids=tuple(tx_ids))
        self.blocks.append(block)
        return block

    def _execute_tx_locked(self, tx: Transaction, block_number: int, timestamp: int) -> GasReceipt:
        contract = self._contracts[tx.payload.contract]
        snapshots = {name: c.snapshot() for name, c in self._contracts.items()}
        balances_before = dict(self._balances)
        meter = GasMeter(self.config.gas)
        ctx = TxContext(self, tx.sender, timestamp, meter)
        try:
            result = contract.execute_tx(tx.payload.op, tx.payload.args, ctx)
        except ContractRevert as revert:
            for name, snap in snapshots.items():
                self._contracts[name].restore(snap)
            self._balances = balances_before
            return GasReceipt(
                tx_id=tx.id,
                status="reverted",
                gas_used=self.config.gas.base_tx,
                block_number=block_number,
                error=revert.reason,
            )
        events = tuple(
            ChainEvent(name=name, args=args, block_number=block_number, tx_id=tx.id)
            for name, args in ctx.events
        )
        self.events.extend(events)
        self._append_event_log(events)
        return GasReceipt(
            tx_id=tx.id,
            status="success",
            gas_used=meter.total(),
            block_number=block_number,
            return_value=result,
            events=events,
        )

    def _append_event_log(self, events: tuple[ChainEvent, ...]) -> None:
        path = self.config.event_log_path
        if path is None or not events:
            return
        with open(path, "a", encoding="utf-8") as fh:
            for event in events:
                fh.write(
                    json.dumps(
                        {
                            "block": event.block_number,
                            "tx": event.tx_id,
                            "name": event.name,
                            "args": {k: str(v) for k, v in event.args.items()},
                        },
                        separators=(",", ":"),
                    )
                    + "\n"
                )

    # -- transactions and reads --------------------------------------------

    def submit(self, sender: Address, payload: CallPayload) -> Transaction:
        """Queue a transaction; it executes when the next block is produced."""
        with self._lock:
            if sender not in self._balances:
                raise UnknownSenderError(f"unknown sender {sender}")
            self._check_registered(payload, transaction=True)
            self._tx_counter += 1
            tx = Transaction(
                id=f"0x{self._tx_counter:064x}",
                sender=sender,
                payload=payload,
                submitted_at_sec=self._now_sec,
            )
            self._pending.append(tx)
            return tx

    def receipt(self, tx_id: str) -> GasReceipt | None:
        """The receipt once the transaction's block exists, else None."""
        with self._lock:
            return self._receipts.get(tx_id)

    def is_known_tx(self, tx_id: str) -> bool:
        with self._lock:
            return tx_id in self._receipts or any(t.id == tx_id for t in self._pending)

    def call_read(self, payload: CallPayload) -> Any:
        """Answer a read immediately against committed state; zero gas."""
        with self._lock:
            self._check_registered(payload, transaction=False)
            return self._contracts[payload.contract].execute_read(payload.op, payload.args)

    def _check_registered(self, payload: CallPayload, transaction: bool) -> None:
        contract = self._contracts.get(payload.contract)
        if contract is None:
            raise UnknownOperationError(f"unknown contract {payload.contract!r}")
        ops = contract.tx_ops if transaction else contract.read_ops
        if payload.op not in ops:
            kind = "transaction" if transaction else "read"
            raise UnknownOperationError(
                f"unknown {kind} op {payload.contract}.{payload.op}"
            )

    # -- introspection -----------------------------------------------------

    def state_fingerprint(self) -> str:
        """Stable digest of committed state, receipts and events (determinism checks)."""
        with self._lock:
            parts = {
                "now": self._now_sec,
                "balances": sorted((a.hex, v) for a, v in self._balances.items()),
                "blocks": [(b.number, b.timestamp_sec, list(b.tx_ids)) for b in self.blocks],
                "receipts": sorted(
                    (
                        r.tx_id,
                        r.status,
                        r.gas_used,
                        r.block_number,
                        repr(r.return_value),
                        r.error or "",
                    )
                    for r in self._receipts.values()
                ),
                "events": [
                    (e.name, sorted((k, str(v)) for k, v in e.args.items()), e.block_number, e.tx_id)
                    for e in self.events
                ],
                "contracts": {
                    name: repr(sorted(c.snapshot().items(), key=lambda kv: kv[0]))
                    for name, c in self._contracts.items()
                },
            }
            return json.dumps(parts, sort_keys=True, default=str)
