import { inflateSync } from "node:zlib";
import { crc32 } from "../src/png.js";

export interface DecodedPng {
  width: number;
  height: number;
  bitDepth: number;
  colorType: number;
  pixels: Uint8Array;
}

/**
 * Strict decoder for the subset of PNG the writer emits: 8-bit RGBA, filter
 * type 0 everywhere.  Verifies chunk CRCs so encoder bugs fail loudly.
 */
export function decodePng(buf: Buffer): DecodedPng {
  const signature = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
  if (!buf.subarray(0, 8).equals(signature)) {
    throw new Error("bad PNG signature");
  }
  let off = 8;
  let width = 0;
  let height = 0;
  let bitDepth = 0;
  let colorType = 0;
  const idat: Buffer[] = [];
  let sawEnd = false;
  while (off < buf.length) {
    const len = buf.readUInt32BE(off);
    const type = buf.toString("ascii", off + 4, off + 8);
    const data = buf.subarray(off + 8, off + 8 + len);
    const stored = buf.readUInt32BE(off + 8 + len);
    const actual = crc32(Buffer.concat([Buffer.from(type, "ascii"), data]));
    if (stored !== actual) {
      throw new Error(`bad CRC on ${type} chunk`);
    }
    if (type === "IHDR") {
      width = data.readUInt32BE(0);
      height = data.readUInt32BE(4);
      bitDepth = data[8]!;
      colorType = data[9]!;
    } else if (type === "IDAT") {
      idat.push(Buffer.from(data));
    } else if (type === "IEND") {
      sawEnd = true;
    }
    off += 12 + len;
  }
  if (!sawEnd) {
    throw new Error("missing IEND chunk");
  }
  const raw = inflateSync(Buffer.concat(idat));
  const stride = width * 4;
  if (raw.length !== (stride + 1) * height) {
    throw new Error(`decompressed ${raw.length} bytes, expected ${(stride + 1) * height}`);
  }
  const pixels = new Uint8Array(width * height * 4);
  for (let y = 0; y < height; y++) {
    if (raw[y * (stride + 1)] !== 0) {
      throw new Error(`scanline ${y} uses filter ${raw[y * (stride + 1)]}, expected 0`);
    }
    pixels.set(raw.subarray(y * (stride + 1) + 1, (y + 1) * (stride + 1)), y * stride);
  }
  return { width, height, bitDepth, colorType, pixels };
}

/** Count pixels whose RGB exactly matches `color`. */
export function countColor(pixels: Uint8Array, color: readonly [number, number, number]): number {
  let n = 0;
  for (let i = 0; i < pixels.length; i += 4) {
    if (pixels[i] === color[0] && pixels[i + 1] === color[1] && pixels[i + 2] === color[2]) {
      n++;
    }
  }
  return n;
}
