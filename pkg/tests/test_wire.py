import pytest

from sfwt import wire
from sfwt.address import Address
from sfwt.contract import FailReason, VerifyResult

ADDR = Address.from_hex("0xa8126934003110d5b7eC9a275e27B6d2fFA28529")


def test_address_case_insensitive_round_trip():
    mixed = "0xA8126934003110D5B7EC9A275E27B6D2FFA28529"
    assert wire.decode_address(mixed) == ADDR
    assert wire.encode_address(ADDR) == mixed.lower()


def test_int_codec_is_decimal_strings():
    big = 2**200 + 7
    assert wire.encode_int(big) == str(big)
    assert wire.decode_int(str(big)) == big
    with pytest.raises(wire.WireError):
        wire.decode_int("-4")
    with pytest.raises(wire.WireError):
        wire.decode_int("0x10")
    with pytest.raises(wire.WireError):
        wire.decode_int(True)


def test_call_codec_round_trip():
    args = wire.encode_call_args(
        "sfwt", "mintSfwt",
        owner=ADDR, token_id=1, ap_id="access point 1", price_wei=1,
        duration="1day", data_cap="10GB", quantity=10,
    )
    assert list(args) == ["owner", "tokenId", "apId", "priceWei", "duration", "dataCap", "quantity"]
    payload = wire.decode_call("sfwt", "mintSfwt", args)
    assert payload.args["duration"] == 86_400
    assert payload.args["data_cap"] == 10**10
    assert payload.args["owner"] == ADDR


def test_decode_rejects_unknown_and_missing_args():
    with pytest.raises(wire.WireError, match="unknown operation"):
        wire.decode_call("sfwt", "steal", {})
    with pytest.raises(wire.WireError, match="missing argument"):
        wire.decode_call("sfwt", "buySfwt", {"tokenId": "1"})
    with pytest.raises(wire.WireError, match="unexpected arguments"):
        wire.decode_call(
            "sfwt", "buySfwt",
            {"tokenId": "1", "quantity": "1", "sumWei": "1", "extra": "x"},
        )


def test_verify_result_codec_round_trip():
    for result in (
        VerifyResult(ok=True, remaining_time_sec=7, remaining_data_bytes=9),
        VerifyResult(ok=False, fail_reason=FailReason.EXPIRED),
    ):
        assert wire.decode_verify_result(wire.encode_verify_result(result)) == result


def test_canonical_json_is_compact_and_ordered():
    body = wire.verify_body("aa:bb:cc:dd:ee:ff", "0x" + "00" * 32, "0x" + "11" * 65, 2)
    assert body == (
        b'{"mac":"aa:bb:cc:dd:ee:ff","sessionId":"0x' + b"00" * 32 +
        b'","signature":"0x' + b"11" * 65 + b'","tokenId":"2"}'
    )
    assert wire.ari_body("aa:bb:cc:dd:ee:ff") == b'{"mac":"aa:bb:cc:dd:ee:ff"}'
    assert wire.ari_body("aa:bb:cc:dd:ee:ff", ADDR) == (
        b'{"mac":"aa:bb:cc:dd:ee:ff","walletAddr":"' + ADDR.hex.encode() + b'"}'
    )


def test_tx_body_layout():
    args = wire.encode_call_args("sfwt", "buySfwt", token_id=2, quantity=1, sum_wei=1)
    body = wire.tx_body(ADDR, "sfwt", "buySfwt", args)
    assert body == (
        b'{"sender":"' + ADDR.hex.encode() +
        b'","payload":{"contract":"sfwt","op":"buySfwt","args":'
        b'{"tokenId":"2","quantity":"1","sumWei":"1"}}}'
    )
