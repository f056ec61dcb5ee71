"""The Wi-Fi token contract: offerings, purchases, access verification.

Each token id is one access-point offering: the binding AP, a unit price,
a per-token service duration and a per-token data cap, fixed when the id is
first minted. Units of one id are fungible; buying extends the buyer's
expiration for that id. Verification is a pure read that checks balance,
AP binding, expiry and data budget, in that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .address import Address
from .ledger.chain import Contract, ContractRevert, TxContext
from .ledger.gas import metered_write
from .tokens import MultiTokenEngine
from .units import parse_data_bytes, parse_duration_sec


class FailReason(str, Enum):
    NO_BALANCE = "NO_BALANCE"
    WRONG_AP = "WRONG_AP"
    EXPIRED = "EXPIRED"
    DATA_EXHAUSTED = "DATA_EXHAUSTED"
    UNKNOWN_TOKEN = "UNKNOWN_TOKEN"


@dataclass(frozen=True)
class SfwtMetadata:
    ap_id: str
    price_wei: int
    duration_sec: int
    data_cap_bytes: int

    def __post_init__(self):
        if self.duration_sec <= 0:
            raise ValueError("duration must be positive")
        if min(self.price_wei, self.data_cap_bytes) < 0:
            raise ValueError("price and data cap must be non-negative")


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    remaining_time_sec: int = 0
    remaining_data_bytes: int = 0
    fail_reason: FailReason | None = None

    def __post_init__(self):
        if self.ok:
            assert self.remaining_time_sec > 0 and self.remaining_data_bytes > 0
        else:
            assert self.fail_reason is not None


class SfwtContract(Contract):
    """Mint/buy/verify over the multi-token engine.

    The operator address is fixed at deployment; it receives payments and
    is the stock account purchases draw from. Admins may mint on the
    operator's behalf. Holder-to-holder transfers are not offered: resale
    expiry semantics are undefined, so the only token flow is
    operator -> buyer through `buy`.
    """

    name = "sfwt"
    tx_ops = {"mintSfwt": "mint", "buySfwt": "buy"}
    read_ops = {
        "verifySfwt": "verify",
        "getMetadata": "get_metadata_wire",
        "getExpiration": "get_expiration",
        "listTokens": "list_tokens",
    }
    mutable_state = ("metadata", "expirations")

    def __init__(self, tokens: MultiTokenEngine, operator: Address, admins: frozenset[Address] = frozenset()):
        super().__init__()
        self.tokens = tokens
        self.operator = operator
        self.admins = admins
        self.metadata: dict[int, SfwtMetadata] = {}
        self.expirations: dict[int, dict[Address, int]] = {}

    # -- transactions --------------------------------------------------------

    def mint(
        self,
        ctx: TxContext,
        owner: Address,
        token_id: int,
        ap_id: str,
        price_wei: int,
        duration,
        data_cap,
        quantity: int,
    ) -> bool:
        """Create stock for an offering; callable by the operator or an admin.

        Duration and data cap accept display strings ("1day", "10GB") and
        are canonicalized to seconds and bytes here; the strings are never
        stored. Re-minting an existing id with identical terms adds stock,
        any change of terms reverts.
        """
        if ctx.sender != self.operator and ctx.sender not in self.admins:
            raise ContractRevert("UNAUTHORIZED")
        try:
            meta = SfwtMetadata(
                ap_id=ap_id,
                price_wei=price_wei,
                duration_sec=parse_duration_sec(duration),
                data_cap_bytes=parse_data_bytes(data_cap),
            )
        except ValueError as exc:
            raise ContractRevert(f"INVALID_METADATA: {exc}")
        existing = self.metadata.get(token_id)
        if existing is not None and existing != meta:
            raise ContractRevert("METADATA_IMMUTABLE")
        metered_write(self.metadata, token_id, meta, ctx.meter)
        self.tokens.mint(ctx, owner, token_id, quantity)
        ctx.emit(
            "SFWT_Mint",
            {
                "owner": owner,
                "tokenId": token_id,
                "apId": meta.ap_id,
                "priceWei": meta.price_wei,
                "durationSec": meta.duration_sec,
                "dataCapBytes": meta.data_cap_bytes,
                "quantity": quantity,
            },
        )
        return True

    def buy(self, ctx: TxContext, token_id: int, quantity: int, sum_wei: int) -> bool:
        """Pay the operator and receive tokens plus service time.

        The payment must equal price * quantity exactly; anything else is a
        guard failure. A purchase while expired restarts the clock at `now`,
        a purchase while active stacks on top of the current expiration.
        """
        meta = self.metadata.get(token_id)
        if meta is None:
            raise ContractRevert("UNKNOWN_TOKEN")
        if quantity < 0:
            raise ContractRevert("NEGATIVE_QUANTITY")
        if sum_wei != meta.price_wei * quantity:
            raise ContractRevert("WRONG_SUM")
        if self.tokens.balance_of(self.operator, token_id) < quantity:
            raise ContractRevert("INSUFFICIENT_STOCK")
        buyer = ctx.sender
        ctx.transfer_native(buyer, self.operator, sum_wei)
        self.tokens.transfer(ctx, self.operator, buyer, token_id, quantity)
        per_token = self.expirations.setdefault(token_id, {})
        current = per_token.get(buyer, 0)
        granted = meta.duration_sec * quantity
        if ctx.now_sec >= current:
            new_expiration = ctx.now_sec + granted
        else:
            new_expiration = current + granted
        metered_write(per_token, buyer, new_expiration, ctx.meter)
        ctx.emit(
            "SFWT_Buy",
            {
                "buyer": buyer,
                "tokenId": token_id,
                "quantity": quantity,
                "sumWei": sum_wei,
                "expirationSec": new_expiration,
            },
        )
        return True

    # -- reads ----------------------------------------------------------------

    def verify(
        self,
        holder: Address,
        token_id: int,
        current_ap_id: str,
        used_data_bytes: int,
        now_sec: int,
    ) -> VerifyResult:
        """Pure access check; the first failing guard names the reason.

        Guard order: token known, balance, AP binding, expiry (strict
        `now < expiration`), then data budget `used < cap * balance`.
        Usage accounting lives with the AP and is passed in per call.
        """
        meta = self.metadata.get(token_id)
        if meta is None:
            return VerifyResult(ok=False, fail_reason=FailReason.UNKNOWN_TOKEN)
        balance = self.tokens.balance_of(holder, token_id)
        if balance <= 0:
            return VerifyResult(ok=False, fail_reason=FailReason.NO_BALANCE)
        if current_ap_id != meta.ap_id:
            return VerifyResult(ok=False, fail_reason=FailReason.WRONG_AP)
        expiration = self.expirations.get(token_id, {}).get(holder, 0)
        if now_sec >= expiration:
            return VerifyResult(ok=False, fail_reason=FailReason.EXPIRED)
        budget = meta.data_cap_bytes * balance
        if used_data_bytes >= budget:
            return VerifyResult(ok=False, fail_reason=FailReason.DATA_EXHAUSTED)
        return VerifyResult(
            ok=True,
            remaining_time_sec=expiration - now_sec,
            remaining_data_bytes=budget - used_data_bytes,
        )

    def get_metadata(self, token_id: int) -> SfwtMetadata | None:
        return self.metadata.get(token_id)

    def get_metadata_wire(self, token_id: int) -> dict:
        """Metadata as a plain mapping; zero/empty defaults for unknown ids."""
        meta = self.metadata.get(token_id)
        if meta is None:
            return {"apId": "", "priceWei": 0, "durationSec": 0, "dataCapBytes": 0}
        return {
            "apId": meta.ap_id,
            "priceWei": meta.price_wei,
            "durationSec": meta.duration_sec,
            "dataCapBytes": meta.data_cap_bytes,
        }

    def get_expiration(self, token_id: int, holder: Address) -> int:
        return self.expirations.get(token_id, {}).get(holder, 0)

    def list_tokens(self) -> list[int]:
        return sorted(self.metadata)
