from .chain import (
    Block,
    CallPayload,
    Chain,
    ChainConfig,
    ChainError,
    ChainEvent,
    Contract,
    ContractRevert,
    GasReceipt,
    Transaction,
    TxContext,
    UnknownOperationError,
    UnknownSenderError,
)
from .gas import GasMeter, GasSchedule

__all__ = [
    "Block",
    "CallPayload",
    "Chain",
    "ChainConfig",
    "ChainError",
    "ChainEvent",
    "Contract",
    "ContractRevert",
    "GasMeter",
    "GasReceipt",
    "GasSchedule",
    "Transaction",
    "TxContext",
    "UnknownOperationError",
    "UnknownSenderError",
]
