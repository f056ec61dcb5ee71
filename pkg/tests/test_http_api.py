"""Endpoint contracts of the chain facade and the AP service."""

import pytest
from fastapi.testclient import TestClient

from sfwt.ap.gatekeeper import ApConfig, Gatekeeper, InProcessLedger
from sfwt.ap.service import create_ap_app
from sfwt.crypto import generate_keypair, sign_session
from sfwt.ledger.chain import CallPayload
from sfwt.ledger.facade import build_chain, create_chain_app
from sfwt import wire

from conftest import ADMIN, OPERATOR, TOKEN1_ARGS, USER

AP_ID = "access point 1"
MAC = "aa:bb:cc:dd:ee:10"


@pytest.fixture
def world():
    chain = build_chain(
        operator=OPERATOR, admins=frozenset({ADMIN}), block_interval_sec=10,
        genesis={ADMIN: 10**18, USER: 10**18},
    )
    chain_client = TestClient(create_chain_app(chain, allow_dev_controls=True))
    keypair = generate_keypair(rng_seed=77)
    chain.create_account(keypair.address, 10**12)
    config = ApConfig(ap_id=AP_ID, admin_token="secret-token", session_rng_seed=3)
    gatekeeper = Gatekeeper(config, InProcessLedger(chain))
    ap_client = TestClient(create_ap_app(gatekeeper))
    return chain, chain_client, ap_client, keypair


def mint_and_buy(chain, keypair):
    chain.submit(ADMIN, CallPayload("sfwt", "mintSfwt", TOKEN1_ARGS))
    chain.produce_block()
    chain.submit(keypair.address, CallPayload("sfwt", "buySfwt", dict(token_id=1, quantity=1, sum_wei=1)))
    chain.produce_block()


# -- chain facade ---------------------------------------------------------------


def test_tx_submit_receipt_lifecycle(world):
    chain, client, _, _ = world
    body = {
        "sender": ADMIN.hex,
        "payload": {"contract": "sfwt", "op": "mintSfwt", "args": wire.encode_call_args(
            "sfwt", "mintSfwt", **TOKEN1_ARGS)},
    }
    tx_id = client.post("/chain/tx", json=body).json()["txId"]
    pending = client.get(f"/chain/receipt/{tx_id}").json()
    assert pending["status"] == "pending"
    chain.produce_block()
    receipt = client.get(f"/chain/receipt/{tx_id}").json()
    assert receipt["status"] == "success"
    assert receipt["returnValue"] is True
    assert receipt["gasUsed"].isdigit() and receipt["blockNumber"] == "1"
    assert any(e["name"] == "SFWT_Mint" for e in receipt["events"])
    assert client.get("/chain/receipt/0xdoesnotexist").status_code == 404


def test_tx_rejections(world):
    _, client, _, _ = world
    ghost = "0x" + "99" * 20
    resp = client.post("/chain/tx", json={
        "sender": ghost,
        "payload": {"contract": "sfwt", "op": "buySfwt",
                    "args": {"tokenId": "1", "quantity": "1", "sumWei": "1"}},
    })
    assert resp.status_code == 400 and "unknown sender" in resp.json()["detail"]
    resp = client.post("/chain/tx", json={
        "sender": ADMIN.hex,
        "payload": {"contract": "sfwt", "op": "nope", "args": {}},
    })
    assert resp.status_code == 400


def test_call_endpoint_decimal_strings(world):
    chain, client, _, keypair = world
    mint_and_buy(chain, keypair)
    resp = client.post("/chain/call", json={
        "contract": "erc1155", "op": "balanceOf",
        "args": {"owner": keypair.address.hex, "tokenId": "1"},
    })
    assert resp.json() == {"result": "1"}
    resp = client.post("/chain/call", json={
        "contract": "sfwt", "op": "getMetadata", "args": {"tokenId": "1"},
    })
    assert resp.json()["result"] == {
        "apId": "access point 1", "priceWei": "1",
        "durationSec": "86400", "dataCapBytes": "10000000000",
    }


def test_clock_and_advance(world):
    chain, client, _, _ = world
    assert client.get("/chain/clock").json() == {"nowSec": "0"}
    resp = client.post("/chain/advance", json={"deltaSec": "25"})
    assert resp.json() == {"nowSec": "25", "blocks": [1, 2]}
    assert chain.now_sec == 25


def test_dev_controls_gated():
    chain = build_chain(operator=OPERATOR, block_interval_sec=10)
    client = TestClient(create_chain_app(chain, allow_dev_controls=False))
    assert client.post("/chain/advance", json={"deltaSec": "1"}).status_code == 403
    assert client.post("/chain/faucet", json={"address": OPERATOR.hex, "amountWei": "1"}).status_code == 403


def test_faucet_credits(world):
    chain, client, _, _ = world
    fresh = "0x" + "12" * 20
    resp = client.post("/chain/faucet", json={"address": fresh, "amountWei": "500"})
    assert resp.json() == {"balanceWei": "500"}


# -- AP service -------------------------------------------------------------------


def full_handshake(ap_client, keypair, token_id=1, mac=MAC):
    ap_client.get("/portal", params={"mac": mac})
    session_hex = ap_client.post("/auth/ari", json={"mac": mac}).json()["sessionId"]
    session_id = wire.decode_hex_bytes(session_hex, expect_len=32)
    signature = sign_session(session_id, keypair.sk)
    return ap_client.post("/auth/verify", json={
        "mac": mac, "sessionId": session_hex,
        "signature": signature.hex, "tokenId": str(token_id),
    }).json()


def test_portal_shape(world):
    _, _, ap_client, _ = world
    info = ap_client.get("/portal", params={"mac": MAC}).json()
    assert info == {"apId": AP_ID, "walletUrl": "http://localhost:8080/", "authorized": False}
    assert ap_client.get("/portal", params={"mac": "xx"}).status_code == 400


def test_ari_and_verify_flow(world):
    chain, _, ap_client, keypair = world
    mint_and_buy(chain, keypair)
    result = full_handshake(ap_client, keypair)
    assert result["ok"] is True
    assert int(result["remainingTimeSec"]) > 0
    portal = ap_client.get("/portal", params={"mac": MAC}).json()
    assert portal["authorized"] is True
    assert "remainingTimeSec" in portal


def test_verify_failure_relays_chain_reason(world):
    chain, _, ap_client, keypair = world
    chain.submit(ADMIN, CallPayload("sfwt", "mintSfwt", TOKEN1_ARGS))
    chain.produce_block()  # no purchase
    result = full_handshake(ap_client, keypair)
    assert result == {
        "ok": False, "remainingTimeSec": "0", "remainingDataBytes": "0",
        "failReason": "NO_BALANCE",
    }


def test_ari_requires_prior_connect(world):
    _, _, ap_client, _ = world
    resp = ap_client.post("/auth/ari", json={"mac": "aa:bb:cc:dd:ee:99"})
    assert resp.status_code == 409


def test_usage_endpoint(world):
    chain, _, ap_client, keypair = world
    mint_and_buy(chain, keypair)
    assert full_handshake(ap_client, keypair)["ok"]
    resp = ap_client.post("/usage", json={"mac": MAC, "deltaBytes": "1000"})
    assert resp.json() == {"usedDataBytes": "1000"}
    resp = ap_client.post("/usage", json={"mac": "aa:bb:cc:dd:ee:99", "deltaBytes": "1"})
    assert resp.status_code == 400


def test_admin_endpoints_gated_and_functional(world):
    chain, _, ap_client, keypair = world
    mint_and_buy(chain, keypair)
    assert full_handshake(ap_client, keypair)["ok"]
    assert ap_client.get("/admin/authorized").status_code == 401
    bad = ap_client.get("/admin/authorized", headers={"authorization": "Bearer wrong"})
    assert bad.status_code == 401
    good = ap_client.get("/admin/authorized", headers={"authorization": "Bearer secret-token"})
    entries = good.json()["entries"]
    assert len(entries) == 1
    assert entries[0]["mac"] == MAC
    assert entries[0]["userAddr"] == keypair.address.hex
    chain.advance_clock(200_000)
    removed = ap_client.post("/admin/sweep", headers={"authorization": "Bearer secret-token"}).json()
    assert removed == {"removed": [MAC]}


def test_admin_disabled_without_token(world):
    chain, _, _, _ = world
    config = ApConfig(ap_id=AP_ID)  # no admin token configured
    gatekeeper = Gatekeeper(config, InProcessLedger(chain))
    client = TestClient(create_ap_app(gatekeeper))
    assert client.get("/admin/authorized", headers={"authorization": "Bearer x"}).status_code == 403
