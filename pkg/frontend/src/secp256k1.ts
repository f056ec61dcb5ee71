// secp256k1 signing with public-key recovery support, matching the wire
// convention: digest = keccak256(sessionId), deterministic RFC 6979 nonce
// (HMAC-SHA256), canonical low-s, 65-byte signature r || s || v.

import { bigIntToBytes, bytesToBigInt, bytesToHex, concatBytes, hexToBytes } from "./hex.js";
import { keccak256 } from "./keccak.js";
import { hmacSha256 } from "./sha256.js";

export const P = 2n ** 256n - 2n ** 32n - 977n;
export const N = 0xfffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364141n;
const GX = 0x79be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798n;
const GY = 0x483ada7726a3c4655da4fbfc0e1108a8fd17b448a68554199c47d08ffb10d4b8n;

type Affine = { x: bigint; y: bigint } | null;
type Jacobian = { x: bigint; y: bigint; z: bigint } | null;

function mod(a: bigint, m: bigint): bigint {
  const r = a % m;
  return r < 0n ? r + m : r;
}

function modPow(base: bigint, exponent: bigint, modulus: bigint): bigint {
  let result = 1n;
  let b = mod(base, modulus);
  let e = exponent;
  while (e > 0n) {
    if (e & 1n) result = (result * b) % modulus;
    b = (b * b) % modulus;
    e >>= 1n;
  }
  return result;
}

function inverse(a: bigint, m: bigint): bigint {
  return modPow(a, m - 2n, m);
}

function jDouble(p: Jacobian): Jacobian {
  if (p === null || p.y === 0n) return null;
  const a = mod(p.x * p.x, P);
  const b = mod(p.y * p.y, P);
  const c = mod(b * b, P);
  const d = mod(2n * (mod((p.x + b) * (p.x + b), P) - a - c), P);
  const e = mod(3n * a, P);
  const f = mod(e * e, P);
  const x3 = mod(f - 2n * d, P);
  return { x: x3, y: mod(e * (d - x3) - 8n * c, P), z: mod(2n * p.y * p.z, P) };
}

function jAdd(p1: Jacobian, p2: Jacobian): Jacobian {
  if (p1 === null) return p2;
  if (p2 === null) return p1;
  const z1z1 = mod(p1.z * p1.z, P);
  const z2z2 = mod(p2.z * p2.z, P);
  const u1 = mod(p1.x * z2z2, P);
  const u2 = mod(p2.x * z1z1, P);
  const s1 = mod(p1.y * p2.z * z2z2, P);
  const s2 = mod(p2.y * p1.z * z1z1, P);
  if (u1 === u2) {
    if (s1 !== s2) return null;
    return jDouble(p1);
  }
  const h = mod(u2 - u1, P);
  const i = mod(4n * h * h, P);
  const j = mod(h * i, P);
  const r = mod(2n * (s2 - s1), P);
  const v = mod(u1 * i, P);
  const x3 = mod(r * r - j - 2n * v, P);
  return {
    x: x3,
    y: mod(r * (v - x3) - 2n * s1 * j, P),
    z: mod(2n * h * p1.z * p2.z, P),
  };
}

function toAffine(p: Jacobian): Affine {
  if (p === null || p.z === 0n) return null;
  const zInv = inverse(p.z, P);
  const zInv2 = mod(zInv * zInv, P);
  return { x: mod(p.x * zInv2, P), y: mod(p.y * zInv2 * zInv, P) };
}

function scalarMult(k: bigint, point: Affine): Affine {
  let scalar = mod(k, N);
  if (scalar === 0n || point === null) return null;
  let acc: Jacobian = null;
  let addend: Jacobian = { x: point.x, y: point.y, z: 1n };
  while (scalar > 0n) {
    if (scalar & 1n) acc = jAdd(acc, addend);
    addend = jDouble(addend);
    scalar >>= 1n;
  }
  return toAffine(acc);
}

const G: Affine = { x: GX, y: GY };

export function publicKey(sk: bigint): { x: bigint; y: bigint } {
  if (sk <= 0n || sk >= N) throw new Error("secret scalar out of range");
  const pk = scalarMult(sk, G);
  if (pk === null) throw new Error("invalid secret");
  return pk;
}

export function addressOfSk(sk: bigint): string {
  const pk = publicKey(sk);
  const encoded = concatBytes(bigIntToBytes(pk.x, 32), bigIntToBytes(pk.y, 32));
  return "0x" + bytesToHex(keccak256(encoded).slice(12));
}

function* rfc6979Nonces(digest: Uint8Array, sk: bigint): Generator<bigint> {
  const x = bigIntToBytes(sk, 32);
  const h1 = bigIntToBytes(mod(bytesToBigInt(digest), N), 32);
  let v = new Uint8Array(32).fill(0x01);
  let k = new Uint8Array(32).fill(0x00);
  k = hmacSha256(k, concatBytes(v, Uint8Array.of(0x00), x, h1));
  v = hmacSha256(k, v);
  k = hmacSha256(k, concatBytes(v, Uint8Array.of(0x01), x, h1));
  v = hmacSha256(k, v);
  while (true) {
    v = hmacSha256(k, v);
    const candidate = bytesToBigInt(v);
    if (candidate > 0n && candidate < N) yield candidate;
    k = hmacSha256(k, concatBytes(v, Uint8Array.of(0x00)));
    v = hmacSha256(k, v);
  }
}

export interface RecoverableSignature {
  r: bigint;
  s: bigint;
  v: 0 | 1;
}

export function signSessionId(sessionId: Uint8Array, sk: bigint): RecoverableSignature {
  if (sessionId.length !== 32) throw new Error("session id must be 32 bytes");
  if (sk <= 0n || sk >= N) throw new Error("secret scalar out of range");
  const digest = keccak256(sessionId);
  const z = mod(bytesToBigInt(digest), N);
  for (const k of rfc6979Nonces(digest, sk)) {
    const point = scalarMult(k, G);
    if (point === null) continue;
    const r = mod(point.x, N);
    if (r === 0n) continue;
    let s = mod(inverse(k, N) * (z + r * sk), N);
    if (s === 0n) continue;
    let v: 0 | 1 = point.y & 1n ? 1 : 0;
    if (s > N / 2n) {
      s = N - s;
      v = v === 1 ? 0 : 1;
    }
    return { r, s, v };
  }
  throw new Error("unreachable");
}

export function signatureToHex(sig: RecoverableSignature): string {
  return (
    "0x" +
    bytesToHex(concatBytes(bigIntToBytes(sig.r, 32), bigIntToBytes(sig.s, 32), Uint8Array.of(sig.v)))
  );
}

export function signSessionIdHex(sessionIdHex: string, skHex: string): string {
  const sk = bytesToBigInt(hexToBytes(skHex));
  return signatureToHex(signSessionId(hexToBytes(sessionIdHex), sk));
}
