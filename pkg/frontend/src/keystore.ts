// Unlock the wallet's sealed key file: PBKDF2-HMAC-SHA256 key derivation,
// AES-256-GCM with the entry label as associated data. WebCrypto only, so
// this works in the page and under node's test runner alike.

import { bytesToBigInt, bytesToHex, hexToBytes, utf8Bytes } from "./hex.js";
import { addressOfSk } from "./secp256k1.js";

export interface KeystoreDocument {
  version: number;
  entries: Array<{
    label: string;
    address: string;
    kdf: { name: string; salt: string; iterations: number };
    cipher: { name: string; nonce: string; ciphertext: string };
  }>;
}

export interface UnlockedKey {
  label: string;
  address: string;
  skHex: string;
}

export class KeystoreError extends Error {}

export async function unlockKeystore(
  doc: KeystoreDocument,
  label: string,
  passphrase: string,
): Promise<UnlockedKey> {
  if (doc.version !== 1) throw new KeystoreError(`unsupported keystore version ${doc.version}`);
  const entry = doc.entries.find((e) => e.label === label);
  if (!entry) throw new KeystoreError(`no key labeled ${label}`);
  if (entry.kdf.name !== "pbkdf2-sha256" || entry.cipher.name !== "aes-256-gcm") {
    throw new KeystoreError("unsupported keystore algorithms");
  }
  const subtle = globalThis.crypto.subtle;
  const material = await subtle.importKey("raw", utf8Bytes(passphrase), "PBKDF2", false, [
    "deriveKey",
  ]);
  const key = await subtle.deriveKey(
    {
      name: "PBKDF2",
      hash: "SHA-256",
      salt: hexToBytes(entry.kdf.salt),
      iterations: entry.kdf.iterations,
    },
    material,
    { name: "AES-GCM", length: 256 },
    false,
    ["decrypt"],
  );
  let plaintext: ArrayBuffer;
  try {
    plaintext = await subtle.decrypt(
      {
        name: "AES-GCM",
        iv: hexToBytes(entry.cipher.nonce),
        additionalData: utf8Bytes(entry.label),
      },
      key,
      hexToBytes(entry.cipher.ciphertext),
    );
  } catch {
    throw new KeystoreError("wrong passphrase");
  }
  const skBytes = new Uint8Array(plaintext);
  const skHex = "0x" + bytesToHex(skBytes);
  const address = addressOfSk(bytesToBigInt(skBytes));
  if (address.toLowerCase() !== entry.address.toLowerCase()) {
    throw new KeystoreError("keystore entry is corrupt: address mismatch");
  }
  return { label: entry.label, address, skHex };
}
