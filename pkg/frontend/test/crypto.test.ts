import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { bytesToBigInt, bytesToHex, hexToBytes, utf8Bytes } from "../src/hex.js";
import { keccak256 } from "../src/keccak.js";
import { sha256, hmacSha256 } from "../src/sha256.js";
import { addressOfSk, signSessionIdHex } from "../src/secp256k1.js";

const fixtures = JSON.parse(
  readFileSync(new URL("../../tests/fixtures/wire_fixtures.json", import.meta.url), "utf-8"),
);

describe("keccak256", () => {
  it("matches the recorded vectors", () => {
    expect(bytesToHex(keccak256(new Uint8Array(0)))).toBe(fixtures.keccak.empty);
    expect(bytesToHex(keccak256(utf8Bytes("abc")))).toBe(fixtures.keccak.abc);
  });

  it("handles rate-boundary lengths", () => {
    // self-consistency across the 136-byte absorb boundary
    const a = keccak256(new Uint8Array(135).fill(7));
    const b = keccak256(new Uint8Array(136).fill(7));
    const c = keccak256(new Uint8Array(137).fill(7));
    expect(bytesToHex(a)).not.toBe(bytesToHex(b));
    expect(bytesToHex(b)).not.toBe(bytesToHex(c));
    expect(a.length).toBe(32);
  });
});

describe("sha256 / hmac", () => {
  it("matches known vectors", () => {
    expect(bytesToHex(sha256(utf8Bytes("abc")))).toBe(
      "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad",
    );
    expect(bytesToHex(sha256(new Uint8Array(0)))).toBe(
      "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855",
    );
    // RFC 4231 test case 2
    expect(bytesToHex(hmacSha256(utf8Bytes("Jefe"), utf8Bytes("what do ya want for nothing?")))).toBe(
      "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843",
    );
  });
});

describe("secp256k1", () => {
  it("derives the recorded addresses", () => {
    for (const entry of fixtures.keys) {
      expect(addressOfSk(bytesToBigInt(hexToBytes(entry.sk)))).toBe(entry.address);
    }
  });

  it("reproduces the frozen signature byte for byte", () => {
    const record = fixtures.signature;
    expect(bytesToHex(keccak256(hexToBytes(record.sessionId)))).toBe(record.digest);
    expect(signSessionIdHex(record.sessionId, record.sk)).toBe(record.signature);
  });

  it("is deterministic", () => {
    const record = fixtures.signature;
    const first = signSessionIdHex(record.sessionId, record.sk);
    const second = signSessionIdHex(record.sessionId, record.sk);
    expect(first).toBe(second);
  });
});
