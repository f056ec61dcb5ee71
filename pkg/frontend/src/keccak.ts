// Keccak-256 (legacy 0x01 padding), BigInt lanes. Mirrors the Python side
// bit for bit; round constants and rotations derived, not transcribed.

import type { Bytes } from "./hex.js";

const MASK64 = (1n << 64n) - 1n;
const RATE = 136;

function roundConstants(): bigint[] {
  const bits: number[] = [];
  let reg = 1;
  for (let t = 0; t < 7 * 24; t++) {
    bits.push(reg & 1);
    reg = ((reg << 1) ^ (reg & 0x80 ? 0x71 : 0)) & 0xff;
  }
  const out: bigint[] = [];
  for (let round = 0; round < 24; round++) {
    let rc = 0n;
    for (let j = 0; j < 7; j++) {
      if (bits[7 * round + j]) rc |= 1n << BigInt((1 << j) - 1);
    }
    out.push(rc);
  }
  return out;
}

function rotationOffsets(): number[][] {
  const offsets = Array.from({ length: 5 }, () => new Array<number>(5).fill(0));
  let x = 1;
  let y = 0;
  for (let t = 0; t < 24; t++) {
    offsets[x][y] = (((t + 1) * (t + 2)) / 2) % 64;
    [x, y] = [y, (2 * x + 3 * y) % 5];
  }
  return offsets;
}

const RC = roundConstants();
const ROT = rotationOffsets();

function rol(value: bigint, shift: number): bigint {
  if (shift === 0) return value;
  const s = BigInt(shift);
  return ((value << s) | (value >> (64n - s))) & MASK64;
}

function keccakF(lanes: bigint[][]): void {
  for (let round = 0; round < 24; round++) {
    const c = [0n, 0n, 0n, 0n, 0n];
    for (let x = 0; x < 5; x++) {
      c[x] = lanes[x][0] ^ lanes[x][1] ^ lanes[x][2] ^ lanes[x][3] ^ lanes[x][4];
    }
    for (let x = 0; x < 5; x++) {
      const d = c[(x + 4) % 5] ^ rol(c[(x + 1) % 5], 1);
      for (let y = 0; y < 5; y++) lanes[x][y] ^= d;
    }
    const b = Array.from({ length: 5 }, () => new Array<bigint>(5).fill(0n));
    for (let x = 0; x < 5; x++) {
      for (let y = 0; y < 5; y++) {
        b[y][(2 * x + 3 * y) % 5] = rol(lanes[x][y], ROT[x][y]);
      }
    }
    for (let x = 0; x < 5; x++) {
      for (let y = 0; y < 5; y++) {
        lanes[x][y] = b[x][y] ^ (~b[(x + 1) % 5][y] & MASK64 & b[(x + 2) % 5][y]);
      }
    }
    lanes[0][0] ^= RC[round];
  }
}

export function keccak256(data: Uint8Array): Bytes {
  const lanes = Array.from({ length: 5 }, () => new Array<bigint>(5).fill(0n));
  const padLength = RATE - (data.length % RATE);
  const padded = new Uint8Array(data.length + padLength);
  padded.set(data);
  padded[data.length] = 0x01;
  padded[padded.length - 1] ^= 0x80;

  for (let offset = 0; offset < padded.length; offset += RATE) {
    for (let i = 0; i < RATE / 8; i++) {
      let lane = 0n;
      for (let b = 7; b >= 0; b--) {
        lane = (lane << 8n) | BigInt(padded[offset + 8 * i + b]);
      }
      lanes[i % 5][Math.floor(i / 5)] ^= lane;
    }
    keccakF(lanes);
  }

  const out = new Uint8Array(32);
  for (let i = 0; i < 4; i++) {
    let lane = lanes[i % 5][Math.floor(i / 5)];
    for (let b = 0; b < 8; b++) {
      out[8 * i + b] = Number(lane & 0xffn);
      lane >>= 8n;
    }
  }
  return out;
}
