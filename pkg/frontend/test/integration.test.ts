// Live end-to-end: boots the python demo stack (chain plus two APs) and
// drives login, inventory, purchase and the connect handshake through the
// same modules the page uses.

import { spawn, ChildProcess } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApApi, ChainApi, connectFlow } from "../src/api.js";
import { unlockKeystore } from "../src/keystore.js";

const CHAIN_PORT = 18545;
const AP1_PORT = 19011;
const AP2_PORT = 19012;
const CHAIN_URL = `http://127.0.0.1:${CHAIN_PORT}`;
const AP1_URL = `http://127.0.0.1:${AP1_PORT}`;
const AP2_URL = `http://127.0.0.1:${AP2_PORT}`;
const DEMO_PASSPHRASE = "wifi-pass-123";

let stack: ChildProcess;
let keystorePath: string;

async function waitForChain(timeoutMs = 45000) {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`${CHAIN_URL}/chain/clock`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error("devstack did not come up");
}

async function waitForKeystore(timeoutMs = 45000) {
  // written after the demo state is seeded, so it doubles as a ready signal
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (existsSync(keystorePath)) {
      try {
        JSON.parse(readFileSync(keystorePath, "utf-8"));
        return;
      } catch {
        // mid-write
      }
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error("demo keystore never appeared");
}

beforeAll(async () => {
  keystorePath = join(mkdtempSync(join(tmpdir(), "sfwt-ui-")), "keystore.json");
  stack = spawn(
    "python3",
    [
      "-m", "sfwt.devstack",
      "--chain-port", String(CHAIN_PORT),
      "--ap1-port", String(AP1_PORT),
      "--ap2-port", String(AP2_PORT),
      "--auto-advance", "100",
      "--keystore", keystorePath,
    ],
    { cwd: new URL("../..", import.meta.url).pathname, stdio: ["ignore", "pipe", "pipe"] },
  );
  stack.stderr?.on("data", () => {});
  await waitForChain();
  await waitForKeystore();
}, 90000);

afterAll(() => {
  stack?.kill("SIGINT");
});

describe("browser wallet against live services", () => {
  it("login -> list -> buy -> connect", async () => {
    // login
    const doc = JSON.parse(readFileSync(keystorePath, "utf-8"));
    const unlocked = await unlockKeystore(doc, "demo", DEMO_PASSPHRASE);
    expect(unlocked.address).toMatch(/^0x[0-9a-f]{40}$/);

    // wrong passphrase path stays locked
    await expect(unlockKeystore(doc, "demo", "nope-nope-nope")).rejects.toThrow();

    // inventory: token 1 expired, token 2 valid on AP1
    const chain = new ChainApi(CHAIN_URL);
    const views = await chain.tokenViews(unlocked.address);
    const byId = Object.fromEntries(views.map((v) => [v.tokenId, v]));
    expect(byId["1"].status).toBe("Expired");
    expect(byId["2"].status).toBe("Valid");
    expect(byId["2"].apId).toBe("AP1");

    // buy more of token 2
    const balanceBefore = BigInt(byId["2"].balance);
    const receipt = await chain.buy(unlocked.address, "2", "1");
    expect(receipt.status).toBe("success");
    expect(await chain.balanceOf(unlocked.address, "2")).toBe(balanceBefore + 1n);

    // connect with the valid token on its AP
    const mac = "aa:bb:cc:dd:ee:77";
    const outcome = await connectFlow(new ApApi(AP1_URL), mac, unlocked.skHex, unlocked.address, "2");
    expect(outcome.ok).toBe(true);
    expect(Number(outcome.remainingTimeSec)).toBeGreaterThan(0);
    const portal = await new ApApi(AP1_URL).portal(mac);
    expect(portal.authorized).toBe(true);

    // the expired token is rejected with the precise reason
    const expired = await connectFlow(
      new ApApi(AP2_URL), "aa:bb:cc:dd:ee:78", unlocked.skHex, unlocked.address, "1",
    );
    expect(expired.ok).toBe(false);
    expect(expired.failReason).toBe("EXPIRED");
  }, 60000);
});
