"""One-command demo environment: chain plus two APs with seeded state.

Boots the chain facade and two AP daemons on localhost, mints the two demo
offerings (token 1 for "access point 1", token 2 for "AP1"), funds a demo
account, buys token 1, lets it expire, and buys token 2, reproducing the
wallet screen where token 1 shows Expired and token 2 is Valid for AP1.

Used by end-to-end tests, the browser wallet's integration test, and
interactively via `python -m sfwt.devstack`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import click

from .address import Address
from .ap.gatekeeper import ApConfig, Gatekeeper
from .ap.service import HttpLedger, SweepScheduler, create_ap_app
from .crypto import keypair_from_secret
from .ledger.chain import Chain
from .ledger.facade import ClockTicker, build_chain, create_chain_app
from .serving import ServerThread
from .wallet.client import ChainClient
from .wallet.keystore import Keystore

OPERATOR = Address.from_hex("0xa8126934003110d5b7eC9a275e27B6d2fFA28529")
ADMIN = Address.from_hex("0xb9f786a9e81ca99fcb3a078ebb18148a4f04bb46")

DEMO_SK = 0xA11CE  # demo account secret; the keystore passphrase is below
DEMO_PASSPHRASE = "wifi-pass-123"
ADMIN_TOKEN = "dev-admin-token"

TOKEN1 = {"token_id": 1, "ap_id": "access point 1", "price_wei": 1, "duration": "1day",
          "data_cap": "10GB", "quantity": 10}
TOKEN2 = {"token_id": 2, "ap_id": "AP1", "price_wei": 1, "duration": "1day",
          "data_cap": "10GB", "quantity": 100}


@dataclass
class DevStack:
    block_interval_sec: int = 10
    auto_advance_rate: float = 0.0  # simulated seconds per wall second
    sweep_interval_sec: int = 30
    session_ttl_sec: int = 120
    chain_port: int | None = None
    ap1_port: int | None = None
    ap2_port: int | None = None

    chain: Chain = field(init=False)
    servers: list[ServerThread] = field(default_factory=list, init=False)
    gatekeepers: dict[str, Gatekeeper] = field(default_factory=dict, init=False)

    def __post_init__(self):
        self.demo_keypair = keypair_from_secret(DEMO_SK)
        self._ticker: ClockTicker | None = None
        self._sweepers: list[SweepScheduler] = []

    # -- lifecycle -------------------------------------------------------------

    def start(self) -> "DevStack":
        self.chain = build_chain(
            operator=OPERATOR,
            admins=frozenset({ADMIN}),
            block_interval_sec=self.block_interval_sec,
            genesis={ADMIN: 10**18, self.demo_keypair.address: 10**18},
        )
        chain_app = create_chain_app(self.chain, allow_dev_controls=True)
        chain_server = ServerThread(chain_app, port=self.chain_port).start("/chain/clock")
        self.servers.append(chain_server)
        self.chain_url = chain_server.url

        for name, (ap_id, port_attr) in {
            "ap1": ("AP1", self.ap1_port),
            "ap2": ("access point 1", self.ap2_port),
        }.items():
            config = ApConfig(
                ap_id=ap_id,
                sweep_interval_sec=self.sweep_interval_sec,
                session_ttl_sec=self.session_ttl_sec,
                admin_token=ADMIN_TOKEN,
            )
            gatekeeper = Gatekeeper(config, HttpLedger(self.chain_url))
            server = ServerThread(create_ap_app(gatekeeper), port=port_attr).start("/portal?mac=00:00:00:00:00:00")
            self.gatekeepers[name] = gatekeeper
            self.servers.append(server)
            sweeper = SweepScheduler(gatekeeper)
            sweeper.start()
            self._sweepers.append(sweeper)
        self.ap1_url = self.servers[1].url
        self.ap2_url = self.servers[2].url

        if self.auto_advance_rate > 0:
            self._ticker = ClockTicker(self.chain, self.auto_advance_rate)
            self._ticker.start()
        return self

    def stop(self) -> None:
        if self._ticker:
            self._ticker.stop()
        for sweeper in self._sweepers:
            sweeper.stop()
        for server in self.servers:
            server.stop()

    # -- demo state --------------------------------------------------------------

    def mint_offerings(self) -> None:
        """Mint the two canonical offerings (no user purchases)."""
        client = ChainClient(self.chain_url)
        for fixture in (TOKEN1, TOKEN2):
            tx = client.submit(ADMIN, "sfwt", "mintSfwt", owner=OPERATOR, **fixture)
            self.chain.produce_block()
            assert client.receipt(tx)["status"] == "success"

    def seed_demo_state(self) -> None:
        """Mint both offerings, buy token 1, expire it, buy token 2."""
        self.mint_offerings()
        client = ChainClient(self.chain_url)
        user = self.demo_keypair.address
        tx = client.submit(user, "sfwt", "buySfwt", token_id=1, quantity=1, sum_wei=1)
        self.chain.produce_block()
        assert client.receipt(tx)["status"] == "success"
        # a day and change passes; token 1 lapses
        self.chain.advance_clock(90_000)
        tx = client.submit(user, "sfwt", "buySfwt", token_id=2, quantity=1, sum_wei=1)
        self.chain.produce_block()
        assert client.receipt(tx)["status"] == "success"

    def write_keystore(self, path: Path, label: str = "demo") -> Path:
        path = Path(path)
        if path.exists():
            path.unlink()
        Keystore(path).add_key(label, self.demo_keypair, DEMO_PASSPHRASE)
        return path

    def info(self) -> dict:
        return {
            "chainUrl": self.chain_url,
            "ap1Url": self.ap1_url,
            "ap2Url": self.ap2_url,
            "operator": OPERATOR.hex,
            "admin": ADMIN.hex,
            "demoAddress": self.demo_keypair.address.hex,
            "demoPassphrase": DEMO_PASSPHRASE,
            "adminToken": ADMIN_TOKEN,
            "nowSec": self.chain.now_sec,
        }


@click.command()
@click.option("--chain-port", default=8545, show_default=True, type=int)
@click.option("--ap1-port", default=9001, show_default=True, type=int)
@click.option("--ap2-port", default=9002, show_default=True, type=int)
@click.option("--block-interval", default=10, show_default=True, type=int)
@click.option("--auto-advance", default=20.0, show_default=True, type=float,
              help="simulated seconds per wall second")
@click.option("--keystore", "keystore_path", type=click.Path(), default=None,
              help="also write the demo keystore here")
def main(chain_port, ap1_port, ap2_port, block_interval, auto_advance, keystore_path):
    """Boot the demo stack and block until interrupted."""
    stack = DevStack(
        block_interval_sec=block_interval,
        auto_advance_rate=auto_advance,
        chain_port=chain_port,
        ap1_port=ap1_port,
        ap2_port=ap2_port,
    ).start()
    stack.seed_demo_state()
    if keystore_path:
        stack.write_keystore(Path(keystore_path))
    click.echo(json.dumps(stack.info(), indent=2))
    click.echo("devstack running; Ctrl-C to stop")
    try:
        import time

        while True:
            time.sleep(1)
    except KeyboardInterrupt:
        stack.stop()


if __name__ == "__main__":
    main()
