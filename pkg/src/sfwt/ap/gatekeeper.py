"""Access-point authorization daemon.

Runs the challenge-response flow per client MAC: a connect creates a
preauthenticated session, an authentication request gets a fresh 256-bit
session id, and a signed session id plus token id is checked against the
chain. Admitted clients land on the authorized list with an expiry; a
periodic sweep re-verifies lapsed entries against the chain so renewed
users stay connected and everyone else is cut off.

Session ids are strictly single-use: one verification attempt consumes the
id whatever the outcome, and requesting a new challenge kills the old one.

The AP is also the system of record for data usage. Counters are keyed by
(user address, token id) and never reset, surviving re-authentication and
repurchases; each chain verification passes the current reading.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, replace
from enum import Enum
from random import Random
from typing import Protocol

from ..address import Address
from ..contract import VerifyResult
from ..crypto import RecoveryError, Signature, new_session_id, recover_signer
from ..ledger.chain import CallPayload, Chain

# AP-side failure reasons, disjoint from the chain-side VerifyResult reasons
SESSION_INVALID = "SESSION_INVALID"
SIG_INVALID = "SIG_INVALID"


class GatekeeperError(Exception):
    pass


class ThrottledError(GatekeeperError):
    pass


class SessionState(str, Enum):
    PREAUTHENTICATED = "Preauthenticated"
    CHALLENGED = "Challenged"
    AUTHENTICATED = "Authenticated"


@dataclass(frozen=True)
class ApConfig:
    ap_id: str
    sweep_interval_sec: int = 30
    session_ttl_sec: int = 120
    max_pending_sessions: int = 1024
    wallet_url: str = "http://localhost:8080/"
    admin_token: str | None = None
    session_rng_seed: int | None = None  # deterministic session ids for tests

    def __post_init__(self):
        if self.sweep_interval_sec <= 0 or self.session_ttl_sec <= 0:
            raise ValueError("sweep interval and session ttl must be positive")


@dataclass
class ClientSession:
    mac: str
    state: SessionState
    session_id: bytes | None = None
    issued_at_sec: int | None = None


@dataclass
class AuthorizedEntry:
    mac: str
    user_addr: Address
    token_id: int
    expires_at_sec: int
    used_data_bytes: int = 0


@dataclass(frozen=True)
class VerifyResponse:
    ok: bool
    remaining_time_sec: int = 0
    remaining_data_bytes: int = 0
    fail_reason: str | None = None


@dataclass(frozen=True)
class PortalInfo:
    ap_id: str
    wallet_url: str
    authorized: bool
    remaining_time_sec: int | None = None


class LedgerGateway(Protocol):
    """What the gatekeeper needs from the chain: a clock and the verify read."""

    def now_sec(self) -> int: ...

    def verify_sfwt(
        self, holder: Address, token_id: int, ap_id: str, used_data_bytes: int, now_sec: int
    ) -> VerifyResult: ...


class InProcessLedger:
    """Gateway over a chain object living in the same process."""

    def __init__(self, chain: Chain):
        self._chain = chain

    def now_sec(self) -> int:
        return self._chain.now_sec

    def verify_sfwt(
        self, holder: Address, token_id: int, ap_id: str, used_data_bytes: int, now_sec: int
    ) -> VerifyResult:
        return self._chain.call_read(
            CallPayload(
                contract="sfwt",
                op="verifySfwt",
                args={
                    "holder": holder,
                    "token_id": token_id,
                    "current_ap_id": ap_id,
                    "used_data_bytes": used_data_bytes,
                    "now_sec": now_sec,
                },
            )
        )


def normalize_mac(mac: str) -> str:
    parts = mac.strip().lower().replace("-", ":").split(":")
    if len(parts) != 6 or not all(len(p) == 2 and all(c in "0123456789abcdef" for c in p) for p in parts):
        raise GatekeeperError(f"bad MAC address {mac!r}")
    return ":".join(parts)


class Gatekeeper:
    """Per-AP session and authorization state. Thread-safe; one lock guards
    all mutation, reads take the same lock for consistent snapshots."""

    def __init__(self, config: ApConfig, ledger: LedgerGateway):
        self.config = config
        self.ledger = ledger
        self._lock = threading.RLock()
        self._sessions: dict[str, ClientSession] = {}
        self._authorized: dict[str, AuthorizedEntry] = {}
        self._usage: dict[tuple[Address, int], int] = {}
        self._session_rng = (
            Random(config.session_rng_seed) if config.session_rng_seed is not None else None
        )
        self._failed_sweeps = 0
        # (mac, from_state, to_state, detail, at_sec) transition audit trail
        self.transitions: list[tuple[str, str, str, str, int]] = []

    # -- protocol steps ------------------------------------------------------

    def handle_connect(self, mac: str) -> PortalInfo:
        """Create or refresh the portal session for a MAC."""
        mac = normalize_mac(mac)
        with self._lock:
            now = self.ledger.now_sec()
            entry = self._authorized.get(mac)
            if entry is not None and entry.expires_at_sec > now:
                return PortalInfo(
                    ap_id=self.config.ap_id,
                    wallet_url=self.config.wallet_url,
                    authorized=True,
                    remaining_time_sec=entry.expires_at_sec - now,
                )
            session = self._sessions.get(mac)
            if session is None:
                if len(self._sessions) >= self.config.max_pending_sessions:
                    raise ThrottledError("too many pending sessions")
                self._sessions[mac] = ClientSession(mac=mac, state=SessionState.PREAUTHENTICATED)
                self._log(mac, "-", SessionState.PREAUTHENTICATED, "connect", now)
            return PortalInfo(
                ap_id=self.config.ap_id, wallet_url=self.config.wallet_url, authorized=False
            )

    def handle_ari(self, mac: str, wallet_addr: Address | None = None) -> bytes:
        """Answer an authentication request with a fresh single-use session id.

        A MAC already in the Authenticated state starts a new exchange (a
        fresh Preauthenticated session record), so re-verification after
        e.g. exhausting the data budget stays possible while the previous
        admission awaits the sweep.
        """
        mac = normalize_mac(mac)
        with self._lock:
            session = self._sessions.get(mac)
            if session is None:
                raise GatekeeperError(f"no session for {mac}; connect first")
            now = self.ledger.now_sec()
            if session.state is SessionState.AUTHENTICATED:
                session = ClientSession(mac=mac, state=SessionState.PREAUTHENTICATED)
                self._sessions[mac] = session
                self._log(mac, "-", SessionState.PREAUTHENTICATED, "new exchange", now)
            previous = session.state
            session.session_id = new_session_id(self._session_rng)
            session.issued_at_sec = now
            session.state = SessionState.CHALLENGED
            self._log(mac, previous, SessionState.CHALLENGED, "ari", now)
            return session.session_id

    def handle_verify(
        self, mac: str, session_id: bytes, signature: Signature | None, token_id: int
    ) -> VerifyResponse:
        """Evaluate one authorization attempt, consuming the session id.

        `signature=None` stands for a request whose signature bytes could
        not even be parsed; it consumes the challenge like any other failed
        recovery.
        """
        mac = normalize_mac(mac)
        with self._lock:
            now = self.ledger.now_sec()
            session = self._sessions.get(mac)
            if (
                session is None
                or session.state is not SessionState.CHALLENGED
                or session.session_id is None
                or session.session_id != session_id
                or session.issued_at_sec is None
                or now >= session.issued_at_sec + self.config.session_ttl_sec
            ):
                if session is not None and session.state is SessionState.CHALLENGED:
                    self._consume(session, SessionState.PREAUTHENTICATED, SESSION_INVALID, now)
                return VerifyResponse(ok=False, fail_reason=SESSION_INVALID)

            try:
                if signature is None:
                    raise RecoveryError("unparseable signature")
                user_addr = recover_signer(session_id, signature)
            except RecoveryError:
                self._consume(session, SessionState.PREAUTHENTICATED, SIG_INVALID, now)
                return VerifyResponse(ok=False, fail_reason=SIG_INVALID)

            used = self._usage.get((user_addr, token_id), 0)
            result = self.ledger.verify_sfwt(user_addr, token_id, self.config.ap_id, used, now)
            if not result.ok:
                self._consume(session, SessionState.PREAUTHENTICATED, result.fail_reason.value, now)
                return VerifyResponse(ok=False, fail_reason=result.fail_reason.value)

            entry = AuthorizedEntry(
                mac=mac,
                user_addr=user_addr,
                token_id=token_id,
                expires_at_sec=now + result.remaining_time_sec,
                used_data_bytes=used,
            )
            self._authorized[mac] = entry
            self._consume(session, SessionState.AUTHENTICATED, "verify ok", now)
            return VerifyResponse(
                ok=True,
                remaining_time_sec=result.remaining_time_sec,
                remaining_data_bytes=result.remaining_data_bytes,
            )

    def _consume(self, session: ClientSession, to_state: SessionState, detail: str, now: int) -> None:
        previous = session.state
        session.session_id = None
        session.issued_at_sec = None
        session.state = to_state
        self._log(session.mac, previous, to_state, detail, now)

    # -- usage metering and revocation ----------------------------------------

    def record_usage(self, mac: str, delta_bytes: int) -> int:
        """Account traffic against the admitted user's counter."""
        mac = normalize_mac(mac)
        if delta_bytes < 0:
            raise GatekeeperError("usage delta must be non-negative")
        with self._lock:
            entry = self._authorized.get(mac)
            if entry is None:
                raise GatekeeperError(f"{mac} is not authorized")
            key = (entry.user_addr, entry.token_id)
            self._usage[key] = self._usage.get(key, 0) + delta_bytes
            entry.used_data_bytes = self._usage[key]
            return entry.used_data_bytes

    def sweep(self, now_sec: int | None = None) -> list[str]:
        """Re-verify lapsed entries against the chain; drop the unrenewed.

        If the chain is unreachable, admitted users get one grace sweep
        (entries kept); a second consecutive failure fails closed and
        removes every lapsed entry.
        """
        with self._lock:
            now = self.ledger.now_sec() if now_sec is None else now_sec
            removed: list[str] = []
            lapsed = [e for e in self._authorized.values() if e.expires_at_sec <= now]
            for entry in lapsed:
                try:
                    result = self.ledger.verify_sfwt(
                        entry.user_addr,
                        entry.token_id,
                        self.config.ap_id,
                        self._usage.get((entry.user_addr, entry.token_id), 0),
                        now,
                    )
                except Exception:
                    self._failed_sweeps += 1
                    if self._failed_sweeps >= 2:
                        for stale in lapsed:
                            self._remove(stale, "sweep (ledger down, fail closed)", now)
                            removed.append(stale.mac)
                        self._failed_sweeps = 0
                    return removed
                if result.ok:
                    entry.expires_at_sec = now + result.remaining_time_sec
                    self._log(entry.mac, SessionState.AUTHENTICATED, SessionState.AUTHENTICATED,
                              "sweep refresh", now)
                else:
                    self._remove(entry, f"sweep ({result.fail_reason.value})", now)
                    removed.append(entry.mac)
            self._failed_sweeps = 0
            return removed

    def _remove(self, entry: AuthorizedEntry, detail: str, now: int) -> None:
        del self._authorized[entry.mac]
        session = self._sessions.get(entry.mac)
        # reset the session record unless a new exchange is already in flight
        if session is not None and session.state is SessionState.AUTHENTICATED:
            session.state = SessionState.PREAUTHENTICATED
            session.session_id = None
            session.issued_at_sec = None
        self._log(entry.mac, SessionState.AUTHENTICATED, SessionState.PREAUTHENTICATED, detail, now)

    def is_authorized(self, mac: str, now_sec: int | None = None) -> bool:
        mac = normalize_mac(mac)
        with self._lock:
            now = self.ledger.now_sec() if now_sec is None else now_sec
            entry = self._authorized.get(mac)
            return entry is not None and entry.expires_at_sec > now

    # -- introspection ---------------------------------------------------------

    def authorized_entries(self) -> list[AuthorizedEntry]:
        with self._lock:
            return [replace(e) for e in self._authorized.values()]

    def session_state(self, mac: str) -> SessionState | None:
        with self._lock:
            session = self._sessions.get(normalize_mac(mac))
            return session.state if session else None

    def usage_of(self, user_addr: Address, token_id: int) -> int:
        with self._lock:
            return self._usage.get((user_addr, token_id), 0)

    def _log(self, mac: str, frm, to, detail: str, at: int) -> None:
        frm_s = frm.value if isinstance(frm, SessionState) else str(frm)
        to_s = to.value if isinstance(to, SessionState) else str(to)
        self.transitions.append((mac, frm_s, to_s, detail, at))
