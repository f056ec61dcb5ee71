// Canonical request bodies. Key order and compact separators must equal the
// Python client's output byte for byte; JSON.stringify of these insertion-
// ordered literals is the contract.

export function ariBody(mac: string, walletAddr?: string): string {
  const body: Record<string, string> = { mac };
  if (walletAddr !== undefined) body.walletAddr = walletAddr;
  return JSON.stringify(body);
}

export function verifyBody(
  mac: string,
  sessionId: string,
  signature: string,
  tokenId: string,
): string {
  return JSON.stringify({ mac, sessionId, signature, tokenId });
}

export function buyArgs(tokenId: string, quantity: string, sumWei: string): Record<string, string> {
  return { tokenId, quantity, sumWei };
}

export function mintArgs(
  owner: string,
  tokenId: string,
  apId: string,
  priceWei: string,
  duration: string,
  dataCap: string,
  quantity: string,
): Record<string, string> {
  return { owner, tokenId, apId, priceWei, duration, dataCap, quantity };
}

export function balanceOfArgs(owner: string, tokenId: string): Record<string, string> {
  return { owner, tokenId };
}

export function txBody(sender: string, contract: string, op: string, args: Record<string, string>): string {
  return JSON.stringify({ sender, payload: { contract, op, args } });
}

export function callBody(contract: string, op: string, args: Record<string, unknown>): string {
  return JSON.stringify({ contract, op, args });
}
