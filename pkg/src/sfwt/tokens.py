"""Token engines executed inside ledger transactions.

Two engines live here. The multi-token engine carries the actual Wi-Fi
tokens: per-ID balances with batch mint/transfer whose gas cost does not
depend on quantity. The single-ownership NFT engine exists purely as the
gas baseline for the standards comparison, where cost grows linearly with
the number of token ids touched.

Gas model per operation (see ledger.gas for the schedule):

  multi mint      1 balance-slot write (new or update by history) + 1 event
  multi transfer  2 balance-slot writes + 1 event
  nft mint        per id: 1 new ownership write + 1 bookkeeping update + 1 event
  nft transfer    per id: 1 ownership update + 1 recipient bookkeeping write
                  (new on the recipient's first token, update after) + 1 event

Neither engine implements approvals, hooks or metadata URIs; the Wi-Fi
token contract is the only intended caller. Direct transaction access can
be restricted to the operator via `restricted_to` (benchmarks and admin
tooling), which keeps user-to-user transfers disabled.
"""

from __future__ import annotations

from .address import Address, ZERO_ADDRESS
from .ledger.chain import Contract, ContractRevert, TxContext
from .ledger.gas import metered_write

UINT256_MAX = 2**256 - 1


class MultiTokenEngine(Contract):
    """Per-(owner, id) balances with quantity-independent batch operations."""

    name = "erc1155"
    tx_ops = {"mintBatch": "mint", "safeBatchTransferFrom": "transfer"}
    read_ops = {"balanceOf": "balance_of"}
    mutable_state = ("balances",)

    def __init__(self):
        super().__init__()
        self.balances: dict[tuple[Address, int], int] = {}

    def mint(self, ctx: TxContext, to: Address, token_id: int, quantity: int) -> bool:
        if quantity < 0:
            raise ContractRevert("NEGATIVE_QUANTITY")
        new_balance = self.balances.get((to, token_id), 0) + quantity
        if new_balance > UINT256_MAX:
            raise ContractRevert("OVERFLOW")
        metered_write(self.balances, (to, token_id), new_balance, ctx.meter)
        ctx.emit(
            "TransferSingle",
            {"from": ZERO_ADDRESS, "to": to, "tokenId": token_id, "value": quantity},
        )
        return True

    def transfer(self, ctx: TxContext, frm: Address, to: Address, token_id: int, quantity: int) -> bool:
        if quantity < 0:
            raise ContractRevert("NEGATIVE_QUANTITY")
        held = self.balances.get((frm, token_id), 0)
        if held < quantity:
            raise ContractRevert("INSUFFICIENT_BALANCE")
        metered_write(self.balances, (frm, token_id), held - quantity, ctx.meter)
        metered_write(
            self.balances, (to, token_id), self.balances.get((to, token_id), 0) + quantity, ctx.meter
        )
        ctx.emit(
            "TransferSingle",
            {"from": frm, "to": to, "tokenId": token_id, "value": quantity},
        )
        return True

    def balance_of(self, owner: Address, token_id: int) -> int:
        return self.balances.get((owner, token_id), 0)

    def total_supply(self, token_id: int) -> int:
        return sum(v for (_, tid), v in self.balances.items() if tid == token_id)


class NftEngine(Contract):
    """One owner per id; gas baseline only, costs scale with the id count."""

    name = "erc721"
    tx_ops = {"mint": "mint", "transferFrom": "transfer"}
    read_ops = {"ownerOf": "owner_of"}
    mutable_state = ("owner_of_id", "holdings")

    def __init__(self):
        super().__init__()
        self.owner_of_id: dict[int, Address] = {}
        self.holdings: dict[Address, int] = {}

    def mint(self, ctx: TxContext, to: Address, token_ids: list[int]) -> bool:
        if len(set(token_ids)) != len(token_ids):
            raise ContractRevert("DUPLICATE_ID")
        for token_id in token_ids:
            if token_id in self.owner_of_id:
                raise ContractRevert("ALREADY_MINTED")
        for token_id in token_ids:
            ctx.meter.storage_write(is_new=True)  # ownership slot
            self.owner_of_id[token_id] = to
            ctx.meter.storage_write(is_new=False)  # holder count bookkeeping
            self.holdings[to] = self.holdings.get(to, 0) + 1
            ctx.emit("Transfer", {"from": ZERO_ADDRESS, "to": to, "tokenId": token_id})
        return True

    def transfer(self, ctx: TxContext, frm: Address, to: Address, token_ids: list[int]) -> bool:
        for token_id in token_ids:
            if self.owner_of_id.get(token_id) != frm:
                raise ContractRevert("NOT_OWNER")
        for token_id in token_ids:
            ctx.meter.storage_write(is_new=False)  # ownership slot update
            self.owner_of_id[token_id] = to
            self.holdings[frm] -= 1
            metered_write(self.holdings, to, self.holdings.get(to, 0) + 1, ctx.meter)
            ctx.emit("Transfer", {"from": frm, "to": to, "tokenId": token_id})
        return True

    def owner_of(self, token_id: int) -> Address | None:
        return self.owner_of_id.get(token_id)
