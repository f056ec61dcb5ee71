from .gatekeeper import (
    ApConfig,
    AuthorizedEntry,
    ClientSession,
    Gatekeeper,
    GatekeeperError,
    InProcessLedger,
    LedgerGateway,
    SessionState,
    VerifyResponse,
    SESSION_INVALID,
    SIG_INVALID,
)

__all__ = [
    "ApConfig",
    "AuthorizedEntry",
    "ClientSession",
    "Gatekeeper",
    "GatekeeperError",
    "InProcessLedger",
    "LedgerGateway",
    "SessionState",
    "VerifyResponse",
    "SESSION_INVALID",
    "SIG_INVALID",
]
