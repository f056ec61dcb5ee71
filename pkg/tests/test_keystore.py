import json

import pytest

from sfwt.crypto import generate_keypair
from sfwt.wallet.keystore import Keystore, KeystoreError


def test_round_trip(tmp_path):
    path = tmp_path / "ks.json"
    keypair = generate_keypair(rng_seed=1)
    Keystore(path).add_key("home", keypair, "correct horse battery")
    reloaded = Keystore(path)
    assert reloaded.labels() == ["home"]
    assert reloaded.address_of("home") == keypair.address.hex
    assert reloaded.unlock("home", "correct horse battery").sk == keypair.sk


def test_wrong_passphrase_fails_cleanly(tmp_path):
    path = tmp_path / "ks.json"
    Keystore(path).add_key("home", generate_keypair(rng_seed=2), "correct horse battery")
    with pytest.raises(KeystoreError, match="wrong passphrase"):
        Keystore(path).unlock("home", "incorrect horse battery")


def test_file_never_contains_plaintext_secret(tmp_path):
    path = tmp_path / "ks.json"
    keypair = generate_keypair(rng_seed=3)
    Keystore(path).add_key("home", keypair, "correct horse battery")
    blob = path.read_text().lower()
    assert keypair.sk_bytes.hex() not in blob
    assert format(keypair.sk, "x") not in blob


def test_duplicate_label_rejected(tmp_path):
    path = tmp_path / "ks.json"
    store = Keystore(path)
    store.add_key("home", generate_keypair(rng_seed=4), "correct horse battery")
    with pytest.raises(KeystoreError, match="already exists"):
        store.add_key("home", generate_keypair(rng_seed=5), "correct horse battery")


def test_short_passphrase_rejected(tmp_path):
    with pytest.raises(KeystoreError, match="at least"):
        Keystore(tmp_path / "ks.json").add_key("home", generate_keypair(rng_seed=6), "short")


def test_malformed_file_is_explicit(tmp_path):
    path = tmp_path / "ks.json"
    path.write_text("{not json")
    with pytest.raises(KeystoreError, match="malformed"):
        Keystore(path)
    path.write_text(json.dumps({"version": 9, "entries": []}))
    with pytest.raises(KeystoreError, match="version"):
        Keystore(path)


def test_find_label_case_insensitive(tmp_path):
    path = tmp_path / "ks.json"
    keypair = generate_keypair(rng_seed=7)
    Keystore(path).add_key("home", keypair, "correct horse battery")
    assert Keystore(path).find_label(keypair.address.hex.upper()) == "home"
    assert Keystore(path).find_label("0x" + "00" * 20) is None
