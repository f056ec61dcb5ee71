// Page wiring: login, inventory, purchase, connect, countdown. All state
// authority lives with the AP and the chain; the countdown is cosmetic and
// a lapsed countdown triggers a portal re-poll, never a local decision.

import { ApApi, ChainApi, connectFlow, TokenView } from "./api.js";
import { bytesToBigInt, hexToBytes } from "./hex.js";
import { KeystoreDocument, unlockKeystore } from "./keystore.js";
import { addressOfSk } from "./secp256k1.js";

interface Session {
  address: string;
  skHex: string;
}

let session: Session | null = null;
let countdownTimer: number | undefined;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function setBanner(message: string, kind: "info" | "error") {
  const banner = el<HTMLDivElement>("banner");
  banner.textContent = message;
  banner.className = kind;
  banner.hidden = message === "";
}

function chainApi(): ChainApi {
  return new ChainApi(el<HTMLInputElement>("chain-url").value);
}

function apApi(): ApApi {
  return new ApApi(el<HTMLInputElement>("ap-url").value);
}

const FAIL_MESSAGES: Record<string, string> = {
  NO_BALANCE: "You do not hold this token.",
  WRONG_AP: "This token is bound to a different access point.",
  EXPIRED: "This token has expired; buy more time to reconnect.",
  DATA_EXHAUSTED: "The data budget of this token is used up.",
  UNKNOWN_TOKEN: "No such token exists on the chain.",
  SESSION_INVALID: "The challenge was stale or already used; try again.",
  SIG_INVALID: "The access point rejected the signature.",
};

async function doLogin() {
  setBanner("", "info");
  const passphrase = el<HTMLInputElement>("passphrase").value;
  const rawSk = el<HTMLInputElement>("raw-sk").value.trim();
  try {
    if (rawSk) {
      const sk = bytesToBigInt(hexToBytes(rawSk));
      session = { address: addressOfSk(sk), skHex: rawSk };
    } else {
      const files = el<HTMLInputElement>("keystore-file").files;
      if (!files || files.length === 0) throw new Error("choose a keystore file or paste a key");
      const doc = JSON.parse(await files[0].text()) as KeystoreDocument;
      const label = doc.entries[0]?.label;
      if (!label) throw new Error("keystore holds no keys");
      const unlocked = await unlockKeystore(doc, label, passphrase);
      session = { address: unlocked.address, skHex: unlocked.skHex };
    }
  } catch (err) {
    session = null;
    setBanner(`${err instanceof Error ? err.message : err}`, "error");
    return;
  }
  el<HTMLSpanElement>("address").textContent = session.address;
  el<HTMLElement>("wallet-section").hidden = false;
  await refreshTokens();
}

async function refreshTokens() {
  if (!session) return;
  try {
    const views = await chainApi().tokenViews(session.address);
    renderTokens(views);
  } catch (err) {
    setBanner(`ledger unreachable: ${err instanceof Error ? err.message : err}`, "error");
  }
}

function renderTokens(views: TokenView[]) {
  const tbody = el<HTMLTableSectionElement>("token-rows");
  tbody.replaceChildren();
  for (const view of views) {
    const row = document.createElement("tr");
    const badge = `<span class="badge ${view.status.toLowerCase()}">${view.status}</span>`;
    row.innerHTML =
      `<td>${view.tokenId}</td><td>${view.apId}</td><td>${view.priceWei}</td>` +
      `<td>${view.durationSec}s</td><td>${view.dataCapBytes}</td>` +
      `<td>${view.balance}</td><td>${view.expirationSec}</td><td>${badge}</td>`;
    tbody.appendChild(row);
  }
}

async function doBuy() {
  if (!session) return;
  setBanner("", "info");
  const tokenId = el<HTMLInputElement>("buy-token-id").value;
  const quantity = el<HTMLInputElement>("buy-quantity").value;
  try {
    const receipt = await chainApi().buy(session.address, tokenId, quantity);
    if (receipt.status !== "success") {
      setBanner(`purchase reverted: ${receipt.error}`, "error");
      return;
    }
    setBanner(`bought ${quantity} of token ${tokenId} (gas ${receipt.gasUsed})`, "info");
    await refreshTokens();
  } catch (err) {
    setBanner(`purchase failed: ${err instanceof Error ? err.message : err}`, "error");
  }
}

async function doConnect() {
  if (!session) return;
  setBanner("", "info");
  const tokenId = el<HTMLInputElement>("connect-token-id").value;
  const mac = el<HTMLInputElement>("mac").value;
  try {
    const outcome = await connectFlow(apApi(), mac, session.skHex, session.address, tokenId);
    if (!outcome.ok) {
      const reason = outcome.failReason ?? "UNKNOWN";
      setBanner(FAIL_MESSAGES[reason] ?? `verification failed: ${reason}`, "error");
      el<HTMLElement>("connected-section").hidden = true;
      return;
    }
    el<HTMLElement>("connected-section").hidden = false;
    el<HTMLSpanElement>("remaining-data").textContent = outcome.remainingDataBytes;
    startCountdown(Number(outcome.remainingTimeSec), mac);
  } catch (err) {
    setBanner(`handshake failed: ${err instanceof Error ? err.message : err}`, "error");
  }
}

function startCountdown(remainingSec: number, mac: string) {
  if (countdownTimer !== undefined) clearInterval(countdownTimer);
  const target = Date.now() + remainingSec * 1000;
  const label = el<HTMLSpanElement>("remaining-time");
  countdownTimer = setInterval(async () => {
    const left = Math.max(0, Math.round((target - Date.now()) / 1000));
    label.textContent = `${left}`;
    if (left === 0) {
      clearInterval(countdownTimer);
      // authority check: ask the portal rather than deciding locally
      const portal = await apApi().portal(mac).catch(() => null);
      if (!portal || !portal.authorized) {
        el<HTMLElement>("connected-section").hidden = true;
        setBanner("access ended; buy more time and reconnect", "error");
      } else {
        startCountdown(Number(portal.remainingTimeSec ?? 0), mac);
      }
    }
  }, 1000) as unknown as number;
}

export function wirePage() {
  el<HTMLButtonElement>("login-button").addEventListener("click", () => void doLogin());
  el<HTMLButtonElement>("refresh-button").addEventListener("click", () => void refreshTokens());
  el<HTMLButtonElement>("buy-button").addEventListener("click", () => void doBuy());
  el<HTMLButtonElement>("connect-button").addEventListener("click", () => void doConnect());
}

if (typeof document !== "undefined" && document.getElementById("login-button")) {
  wirePage();
}
