"""Command-line wallet: key management, inventory, purchase, AP handshake.

Every admission decision shown here comes from an AP response backed by a
chain read; the CLI never computes authorization locally. Exit codes are
scriptable: 0 success, 2 chain-side rejection (wrong AP, expired, no
balance, data exhausted, unknown token, reverted purchase), 3 session or
transport errors.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .. import wire
from ..address import Address, AddressError
from ..crypto import generate_keypair, sign_session
from ..units import format_bytes, format_duration
from .client import ApClient, ChainClient, ClientError, TxTimeout
from .keystore import Keystore, KeystoreError

EXIT_OK = 0
EXIT_CHAIN_REJECT = 2
EXIT_SESSION_ERROR = 3

_CHAIN_REASONS = {"NO_BALANCE", "WRONG_AP", "EXPIRED", "DATA_EXHAUSTED", "UNKNOWN_TOKEN"}


def _passphrase(env_var: str | None, confirm: bool = False) -> str:
    if env_var:
        value = os.environ.get(env_var)
        if value is None:
            raise click.ClickException(f"environment variable {env_var} is not set")
        return value
    return click.prompt("Passphrase", hide_input=True, confirmation_prompt=confirm)


def _pseudo_mac(address: Address) -> str:
    """Stable locally-administered MAC derived from the wallet address."""
    tail = address.bytes[-5:]
    return ":".join(["02"] + [f"{b:02x}" for b in tail])


def _die(code: int, message: str) -> None:
    click.echo(message, err=True)
    sys.exit(code)


@click.group()
def cli():
    """Wi-Fi token wallet."""


@cli.command()
@click.option("--keystore", "keystore_path", default="keystore.json", show_default=True,
              type=click.Path(), help="keystore file")
@click.option("--label", required=True, help="name for the new key")
@click.option("--passphrase-env", default=None, help="env var holding the passphrase")
@click.option("--seed", default=None, type=int, help="deterministic key for tests")
def keygen(keystore_path, label, passphrase_env, seed):
    """Generate a keypair and store it scrambled under LABEL."""
    store = Keystore(Path(keystore_path))
    passphrase = _passphrase(passphrase_env, confirm=passphrase_env is None)
    keypair = generate_keypair(rng_seed=seed)
    try:
        store.add_key(label, keypair, passphrase)
    except KeystoreError as exc:
        raise click.ClickException(str(exc))
    click.echo(keypair.address.hex)


@cli.command("list")
@click.option("--ledger", required=True, help="chain facade base URL")
@click.option("--address", required=True, help="holder address (0x-hex)")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def list_tokens(ledger, address, as_json):
    """Show every offering with balance, expiry and status for ADDRESS."""
    try:
        holder = Address.from_hex(address)
    except AddressError as exc:
        raise click.ClickException(str(exc))
    chain = ChainClient(ledger)
    try:
        rows = _token_views(chain, holder)
    except ClientError as exc:
        _die(EXIT_SESSION_ERROR, f"ledger unreachable: {exc}")
    if as_json:
        click.echo(json.dumps(rows, indent=2))
        return
    if not rows:
        click.echo("no tokens")
        return
    header = f"{'id':>4}  {'ap':<16} {'price':>8} {'duration':>9} {'dataCap':>8} {'balance':>8} {'expiration':>11} status"
    click.echo(header)
    for r in rows:
        click.echo(
            f"{r['tokenId']:>4}  {r['apId']:<16} {r['priceWei']:>8} "
            f"{format_duration(int(r['durationSec'])):>9} {format_bytes(int(r['dataCapBytes'])):>8} "
            f"{r['balance']:>8} {r['expirationSec']:>11} {r['status']}"
        )


def _token_views(chain: ChainClient, holder: Address) -> list[dict]:
    now = chain.clock()
    rows = []
    for token_id in chain.list_tokens():
        meta = chain.metadata(token_id)
        balance = chain.balance_of(holder, token_id)
        expiration = chain.expiration(token_id, holder)
        if balance == 0:
            status = "Unbought"
        elif now < expiration:
            status = "Valid"
        else:
            status = "Expired"
        rows.append(
            {
                "tokenId": wire.encode_int(token_id),
                "apId": meta["apId"],
                "priceWei": meta["priceWei"],
                "durationSec": meta["durationSec"],
                "dataCapBytes": meta["dataCapBytes"],
                "balance": wire.encode_int(balance),
                "expirationSec": wire.encode_int(expiration),
                "status": status,
            }
        )
    return rows


@cli.command()
@click.option("--ledger", required=True, help="chain facade base URL")
@click.option("--address", required=True, help="buyer address (0x-hex)")
@click.option("--token-id", required=True, type=int)
@click.option("--quantity", required=True, type=int)
@click.option("--timeout", default=15.0, show_default=True, help="seconds to wait for inclusion")
@click.option("--json", "as_json", is_flag=True)
def buy(ledger, address, token_id, quantity, timeout, as_json):
    """Buy QUANTITY tokens; the payment is price * quantity, computed here."""
    try:
        buyer = Address.from_hex(address)
    except AddressError as exc:
        raise click.ClickException(str(exc))
    chain = ChainClient(ledger)
    try:
        meta = chain.metadata(token_id)
        if int(meta["durationSec"]) == 0:
            _die(EXIT_CHAIN_REJECT, f"token {token_id} is not a known offering")
        total = wire.decode_int(meta["priceWei"]) * quantity
        tx_id = chain.submit(
            buyer, "sfwt", "buySfwt", token_id=token_id, quantity=quantity, sum_wei=total
        )
        receipt = chain.wait_receipt(tx_id, timeout_wall_sec=timeout)
    except TxTimeout as exc:
        _die(EXIT_SESSION_ERROR, f"{exc}")
    except ClientError as exc:
        _die(EXIT_SESSION_ERROR, f"chain error: {exc}")
    if receipt["status"] != "success":
        _die(EXIT_CHAIN_REJECT, f"purchase reverted: {receipt.get('error')}")
    try:
        balance = chain.balance_of(buyer, token_id)
        expiration = chain.expiration(token_id, buyer)
    except ClientError as exc:
        _die(EXIT_SESSION_ERROR, f"chain error: {exc}")
    summary = {
        "txId": receipt["txId"],
        "tokenId": wire.encode_int(token_id),
        "quantity": wire.encode_int(quantity),
        "paidWei": wire.encode_int(total),
        "gasUsed": receipt["gasUsed"],
        "balance": wire.encode_int(balance),
        "expirationSec": wire.encode_int(expiration),
    }
    if as_json:
        click.echo(json.dumps(summary, indent=2))
    else:
        click.echo(
            f"bought {quantity} of token {token_id} for {total} wei "
            f"(gas {receipt['gasUsed']}); balance {balance}, expires at {expiration}s"
        )


@cli.command()
@click.option("--ap", required=True, help="AP base URL")
@click.option("--address", required=True, help="wallet address (0x-hex)")
@click.option("--token-id", required=True, type=int)
@click.option("--keystore", "keystore_path", default="keystore.json", show_default=True,
              type=click.Path())
@click.option("--mac", default=None, help="client MAC; derived from the address if omitted")
@click.option("--passphrase-env", default=None, help="env var holding the passphrase")
@click.option("--json", "as_json", is_flag=True)
def connect(ap, address, token_id, keystore_path, mac, passphrase_env, as_json):
    """Full handshake: portal, challenge, sign, verify."""
    try:
        addr = Address.from_hex(address)
    except AddressError as exc:
        raise click.ClickException(str(exc))
    mac = mac or _pseudo_mac(addr)
    store = Keystore(Path(keystore_path))
    label = store.find_label(addr.hex)
    if label is None:
        _die(EXIT_SESSION_ERROR, f"no key for {addr.hex} in {keystore_path}")
    try:
        keypair = store.unlock(label, _passphrase(passphrase_env))
    except KeystoreError as exc:
        _die(EXIT_SESSION_ERROR, str(exc))

    client = ApClient(ap)
    try:
        portal = client.portal(mac)
        session_id_hex = client.ari(mac, addr)
        session_id = wire.decode_hex_bytes(session_id_hex, expect_len=32)
        signature = sign_session(session_id, keypair.sk)
        result = client.verify(mac, session_id_hex, signature.hex, token_id)
    except (ClientError, wire.WireError) as exc:
        _die(EXIT_SESSION_ERROR, f"handshake failed: {exc}")

    out = {
        "apId": portal["apId"],
        "mac": mac,
        "tokenId": wire.encode_int(token_id),
        "ok": result["ok"],
        "state": "Authenticated" if result["ok"] else "Preauthenticated",
        "remainingTimeSec": result.get("remainingTimeSec", "0"),
        "remainingDataBytes": result.get("remainingDataBytes", "0"),
    }
    if not result["ok"]:
        out["failReason"] = result.get("failReason", "UNKNOWN")
    if as_json:
        click.echo(json.dumps(out, indent=2))
    else:
        if result["ok"]:
            click.echo(
                f"Authenticated on {portal['apId']} as {addr.hex} "
                f"(remaining {out['remainingTimeSec']}s, {out['remainingDataBytes']} bytes)"
            )
        else:
            click.echo(f"rejected: {out['failReason']}", err=True)
    if result["ok"]:
        sys.exit(EXIT_OK)
    reason = out.get("failReason")
    sys.exit(EXIT_CHAIN_REJECT if reason in _CHAIN_REASONS else EXIT_SESSION_ERROR)


@cli.command()
@click.option("--ap", required=True, help="AP base URL")
@click.option("--mac", required=True, help="client MAC")
@click.option("--json", "as_json", is_flag=True)
def status(ap, mac, as_json):
    """Ask the AP portal whether MAC is currently authorized."""
    try:
        portal = ApClient(ap).portal(mac)
    except ClientError as exc:
        _die(EXIT_SESSION_ERROR, f"AP unreachable: {exc}")
    if as_json:
        click.echo(json.dumps(portal, indent=2))
    elif portal["authorized"]:
        click.echo(f"authorized on {portal['apId']} ({portal.get('remainingTimeSec')}s remaining)")
    else:
        click.echo(f"not authorized on {portal['apId']}")


def main():
    cli()


if __name__ == "__main__":
    main()
