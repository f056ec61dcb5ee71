"""Gas cost comparison between the two token standards.

For each quantity N the harness meters, on a fresh ledger per repetition,
a mint and a transfer of N Wi-Fi tokens under multi-token semantics (one
id, quantity N) and under NFT semantics (N distinct ids). The gas model is
deterministic, so repetitions serve to demonstrate zero variance rather
than to average noise.

CSV schema: standard,quantity,gas with the standard column carrying the
series label (erc1155-mint, erc1155-transfer, erc721-mint, erc721-transfer).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from ..address import Address
from ..ledger.chain import CallPayload
from ..ledger.facade import build_chain
from ..ledger.gas import GasSchedule

SERIES = ("erc1155-mint", "erc1155-transfer", "erc721-mint", "erc721-transfer")

_OPERATOR = Address(bytes.fromhex("a8126934003110d5b7ec9a275e27b6d2ffa28529"))
_USER = Address(bytes.fromhex("00" * 19 + "42"))


@dataclass(frozen=True)
class GasRow:
    series: str
    quantity: int
    gas_used: int


class GasVarianceError(AssertionError):
    pass


def _measure_once(quantity: int, schedule: GasSchedule | None) -> dict[str, int]:
    chain = build_chain(operator=_OPERATOR, gas=schedule) if schedule else build_chain(operator=_OPERATOR)
    chain.create_account(_USER, 0)

    def run_tx(contract: str, op: str, **args) -> int:
        tx = chain.submit(_OPERATOR, CallPayload(contract=contract, op=op, args=args))
        chain.produce_block()
        receipt = chain.receipt(tx.id)
        assert receipt is not None and receipt.ok, receipt
        return receipt.gas_used

    out = {}
    out["erc1155-mint"] = run_tx("erc1155", "mintBatch", to=_OPERATOR, token_id=1, quantity=quantity)
    out["erc1155-transfer"] = run_tx(
        "erc1155", "safeBatchTransferFrom", frm=_OPERATOR, to=_USER, token_id=1, quantity=quantity
    )
    ids = list(range(1, quantity + 1))
    out["erc721-mint"] = run_tx("erc721", "mint", to=_OPERATOR, token_ids=ids)
    out["erc721-transfer"] = run_tx("erc721", "transferFrom", frm=_OPERATOR, to=_USER, token_ids=ids)
    return out


def run_gas_benchmark(
    quantities: list[int],
    repetitions: int = 100,
    schedule: GasSchedule | None = None,
) -> list[GasRow]:
    """One row per (series, quantity); raises if any repetition disagrees."""
    rows: list[GasRow] = []
    for quantity in quantities:
        baseline = _measure_once(quantity, schedule)
        for rep in range(1, repetitions):
            again = _measure_once(quantity, schedule)
            if again != baseline:
                raise GasVarianceError(
                    f"nondeterministic gas at quantity={quantity} rep={rep}: {again} != {baseline}"
                )
        for series in SERIES:
            rows.append(GasRow(series=series, quantity=quantity, gas_used=baseline[series]))
    return rows


def write_gas_csv(rows: list[GasRow], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["standard", "quantity", "gas"])
        for row in rows:
            writer.writerow([row.series, row.quantity, row.gas_used])


def read_gas_csv(path: Path) -> list[GasRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        return [
            GasRow(series=r["standard"], quantity=int(r["quantity"]), gas_used=int(r["gas"]))
            for r in reader
        ]


def summarize(rows: list[GasRow]) -> str:
    quantities = sorted({r.quantity for r in rows})
    by_key = {(r.series, r.quantity): r.gas_used for r in rows}
    lines = [f"{'series':<18}" + "".join(f"{f'N={q}':>12}" for q in quantities)]
    for series in SERIES:
        lines.append(
            f"{series:<18}" + "".join(f"{by_key.get((series, q), '-'):>12}" for q in quantities)
        )
    return "\n".join(lines)
