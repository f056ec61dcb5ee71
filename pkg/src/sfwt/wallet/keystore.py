"""Passphrase-scrambled key file.

Secrets are sealed with AES-256-GCM under a PBKDF2-HMAC-SHA256 key; the
file never holds a plaintext secret. PBKDF2 (not scrypt) keeps the format
decryptable by the browser wallet, whose WebCrypto has no scrypt.
"""

from __future__ import annotations

import json
import os
import hashlib
from dataclasses import dataclass
from pathlib import Path

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives.ciphers.aead import AESGCM

from ..crypto import KeyPair, keypair_from_secret

PBKDF2_ITERATIONS = 310_000
MIN_PASSPHRASE_LEN = 8


class KeystoreError(Exception):
    pass


@dataclass
class _Entry:
    label: str
    address: str
    salt: bytes
    iterations: int
    nonce: bytes
    ciphertext: bytes


def _derive_key(passphrase: str, salt: bytes, iterations: int) -> bytes:
    return hashlib.pbkdf2_hmac("sha256", passphrase.encode("utf-8"), salt, iterations, dklen=32)


class Keystore:
    """A labeled collection of sealed secp256k1 secrets in one JSON file."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self._entries: dict[str, _Entry] = {}
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        try:
            raw = json.loads(self.path.read_text())
            if raw.get("version") != 1:
                raise KeystoreError(f"unsupported keystore version {raw.get('version')!r}")
            for item in raw["entries"]:
                entry = _Entry(
                    label=item["label"],
                    address=item["address"],
                    salt=bytes.fromhex(item["kdf"]["salt"]),
                    iterations=int(item["kdf"]["iterations"]),
                    nonce=bytes.fromhex(item["cipher"]["nonce"]),
                    ciphertext=bytes.fromhex(item["cipher"]["ciphertext"]),
                )
                self._entries[entry.label] = entry
        except KeystoreError:
            raise
        except Exception as exc:
            raise KeystoreError(f"malformed keystore {self.path}: {exc}")

    def _save(self) -> None:
        doc = {
            "version": 1,
            "entries": [
                {
                    "label": e.label,
                    "address": e.address,
                    "kdf": {
                        "name": "pbkdf2-sha256",
                        "salt": e.salt.hex(),
                        "iterations": e.iterations,
                    },
                    "cipher": {
                        "name": "aes-256-gcm",
                        "nonce": e.nonce.hex(),
                        "ciphertext": e.ciphertext.hex(),
                    },
                }
                for e in self._entries.values()
            ],
        }
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(json.dumps(doc, indent=2) + "\n")

    def labels(self) -> list[str]:
        return list(self._entries)

    def address_of(self, label: str) -> str:
        entry = self._entries.get(label)
        if entry is None:
            raise KeystoreError(f"no key labeled {label!r}")
        return entry.address

    def add_key(self, label: str, keypair: KeyPair, passphrase: str) -> None:
        if label in self._entries:
            raise KeystoreError(f"label {label!r} already exists")
        if len(passphrase) < MIN_PASSPHRASE_LEN:
            raise KeystoreError(f"passphrase must be at least {MIN_PASSPHRASE_LEN} characters")
        salt = os.urandom(16)
        nonce = os.urandom(12)
        key = _derive_key(passphrase, salt, PBKDF2_ITERATIONS)
        ciphertext = AESGCM(key).encrypt(nonce, keypair.sk_bytes, label.encode("utf-8"))
        self._entries[label] = _Entry(
            label=label,
            address=keypair.address.hex,
            salt=salt,
            iterations=PBKDF2_ITERATIONS,
            nonce=nonce,
            ciphertext=ciphertext,
        )
        self._save()

    def unlock(self, label: str, passphrase: str) -> KeyPair:
        entry = self._entries.get(label)
        if entry is None:
            raise KeystoreError(f"no key labeled {label!r}")
        key = _derive_key(passphrase, entry.salt, entry.iterations)
        try:
            sk_bytes = AESGCM(key).decrypt(entry.nonce, entry.ciphertext, label.encode("utf-8"))
        except InvalidTag:
            raise KeystoreError("wrong passphrase")
        keypair = keypair_from_secret(int.from_bytes(sk_bytes, "big"))
        if keypair.address.hex != entry.address:
            raise KeystoreError("keystore entry is corrupt: address mismatch")
        return keypair

    def find_label(self, address: str) -> str | None:
        for entry in self._entries.values():
            if entry.address.lower() == address.lower():
                return entry.label
        return None
