// HTTP clients for the chain facade and the AP daemon, plus the composed
// flows the page drives (inventory, purchase, handshake).

import { hexToBytes, bytesToBigInt } from "./hex.js";
import { signSessionId, signatureToHex } from "./secp256k1.js";
import { balanceOfArgs, buyArgs, callBody, txBody, ariBody, verifyBody } from "./wire.js";

const JSON_HEADERS = { "content-type": "application/json" };

export class ApiError extends Error {}

async function request(url: string, init?: RequestInit): Promise<any> {
  let resp: Response;
  try {
    resp = await fetch(url, init);
  } catch (err) {
    throw new ApiError(`request to ${url} failed: ${err}`);
  }
  const body = await resp.json().catch(() => ({}));
  if (!resp.ok) {
    throw new ApiError(`${url}: ${resp.status} ${body.detail ?? ""}`);
  }
  return body;
}

export interface TokenView {
  tokenId: string;
  apId: string;
  priceWei: string;
  durationSec: string;
  dataCapBytes: string;
  balance: string;
  expirationSec: string;
  status: "Valid" | "Expired" | "Unbought";
}

export class ChainApi {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  async clock(): Promise<bigint> {
    const body = await request(this.url("/chain/clock"));
    return BigInt(body.nowSec);
  }

  async call(contract: string, op: string, args: Record<string, unknown>): Promise<any> {
    const body = await request(this.url("/chain/call"), {
      method: "POST",
      headers: JSON_HEADERS,
      body: callBody(contract, op, args),
    });
    return body.result;
  }

  async submitTx(sender: string, contract: string, op: string, args: Record<string, string>): Promise<string> {
    const body = await request(this.url("/chain/tx"), {
      method: "POST",
      headers: JSON_HEADERS,
      body: txBody(sender, contract, op, args),
    });
    return body.txId;
  }

  async receipt(txId: string): Promise<any> {
    return request(this.url(`/chain/receipt/${txId}`));
  }

  async waitReceipt(txId: string, timeoutMs = 20000, pollMs = 150): Promise<any> {
    const deadline = Date.now() + timeoutMs;
    while (true) {
      const receipt = await this.receipt(txId);
      if (receipt.status !== "pending") return receipt;
      if (Date.now() > deadline) throw new ApiError(`transaction ${txId} still pending`);
      await new Promise((resolve) => setTimeout(resolve, pollMs));
    }
  }

  async listTokens(): Promise<string[]> {
    return this.call("sfwt", "listTokens", {});
  }

  async metadata(tokenId: string): Promise<any> {
    return this.call("sfwt", "getMetadata", { tokenId });
  }

  async balanceOf(owner: string, tokenId: string): Promise<bigint> {
    return BigInt(await this.call("erc1155", "balanceOf", balanceOfArgs(owner, tokenId)));
  }

  async expiration(tokenId: string, holder: string): Promise<bigint> {
    return BigInt(await this.call("sfwt", "getExpiration", { tokenId, holder }));
  }

  async tokenViews(holder: string): Promise<TokenView[]> {
    const now = await this.clock();
    const views: TokenView[] = [];
    for (const tokenId of await this.listTokens()) {
      const meta = await this.metadata(tokenId);
      const balance = await this.balanceOf(holder, tokenId);
      const expiration = await this.expiration(tokenId, holder);
      const status = balance === 0n ? "Unbought" : now < expiration ? "Valid" : "Expired";
      views.push({
        tokenId,
        apId: meta.apId,
        priceWei: meta.priceWei,
        durationSec: meta.durationSec,
        dataCapBytes: meta.dataCapBytes,
        balance: balance.toString(),
        expirationSec: expiration.toString(),
        status,
      });
    }
    return views;
  }

  async buy(sender: string, tokenId: string, quantity: string): Promise<any> {
    const meta = await this.metadata(tokenId);
    const sum = (BigInt(meta.priceWei) * BigInt(quantity)).toString();
    const txId = await this.submitTx(sender, "sfwt", "buySfwt", buyArgs(tokenId, quantity, sum));
    return this.waitReceipt(txId);
  }
}

export interface VerifyOutcome {
  ok: boolean;
  remainingTimeSec: string;
  remainingDataBytes: string;
  failReason?: string;
}

export class ApApi {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  async portal(mac: string): Promise<any> {
    return request(this.url(`/portal?mac=${encodeURIComponent(mac)}`));
  }

  async ari(mac: string, walletAddr?: string): Promise<string> {
    const body = await request(this.url("/auth/ari"), {
      method: "POST",
      headers: JSON_HEADERS,
      body: ariBody(mac, walletAddr),
    });
    return body.sessionId;
  }

  async verify(mac: string, sessionId: string, signature: string, tokenId: string): Promise<VerifyOutcome> {
    return request(this.url("/auth/verify"), {
      method: "POST",
      headers: JSON_HEADERS,
      body: verifyBody(mac, sessionId, signature, tokenId),
    });
  }
}

// full handshake: portal, challenge, in-page signature, verification
export async function connectFlow(
  ap: ApApi,
  mac: string,
  skHex: string,
  address: string,
  tokenId: string,
): Promise<VerifyOutcome> {
  await ap.portal(mac);
  const sessionIdHex = await ap.ari(mac, address);
  const sk = bytesToBigInt(hexToBytes(skHex));
  const signature = signatureToHex(signSessionId(hexToBytes(sessionIdHex), sk));
  return ap.verify(mac, sessionIdHex, signature, tokenId);
}
