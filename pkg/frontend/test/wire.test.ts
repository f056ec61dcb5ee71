// Byte-identity with the command-line wallet: every body here must equal
// the recorded fixture string exactly.

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { ariBody, balanceOfArgs, buyArgs, callBody, mintArgs, txBody, verifyBody } from "../src/wire.js";

const fixtures = JSON.parse(
  readFileSync(new URL("../../tests/fixtures/wire_fixtures.json", import.meta.url), "utf-8"),
);
const bodies = fixtures.bodies;

describe("request bodies", () => {
  it("ari", () => {
    expect(ariBody(bodies.ari.mac, bodies.ari.walletAddr)).toBe(bodies.ari.body);
    expect(ariBody(bodies.ariBare.mac)).toBe(bodies.ariBare.body);
  });

  it("verify", () => {
    const record = bodies.verify;
    expect(verifyBody(record.mac, record.sessionId, record.signature, record.tokenId)).toBe(
      record.body,
    );
  });

  it("buy transaction", () => {
    expect(txBody(bodies.txBuy.sender, "sfwt", "buySfwt", buyArgs("2", "1", "1"))).toBe(
      bodies.txBuy.body,
    );
  });

  it("mint transaction", () => {
    const args = mintArgs(
      "0xa8126934003110d5b7ec9a275e27b6d2ffa28529",
      "1",
      "access point 1",
      "1",
      "1day",
      "10GB",
      "10",
    );
    expect(txBody(bodies.txMint.sender, "sfwt", "mintSfwt", args)).toBe(bodies.txMint.body);
  });

  it("balance call", () => {
    expect(callBody("erc1155", "balanceOf", balanceOfArgs(bodies.txBuy.sender, "2"))).toBe(
      bodies.callBalance.body,
    );
  });
});
