/**
 * Software rasterizer over a plain RGBA byte buffer.  Enough for line
 * charts: rectangles, thick polylines, and bitmap text.
 */

import { GLYPH_HEIGHT, GLYPH_WIDTH, glyphFor } from "./font.js";

export type Rgb = readonly [number, number, number];

export interface Point {
  x: number;
  y: number;
}

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly pixels: Uint8Array;

  constructor(width: number, height: number, background: Rgb = [255, 255, 255]) {
    if (!Number.isInteger(width) || !Number.isInteger(height) || width < 1 || height < 1) {
      throw new Error(`bad raster size ${width}x${height}`);
    }
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 4);
    for (let i = 0; i < width * height; i++) {
      this.pixels[i * 4] = background[0];
      this.pixels[i * 4 + 1] = background[1];
      this.pixels[i * 4 + 2] = background[2];
      this.pixels[i * 4 + 3] = 255;
    }
  }

  setPixel(x: number, y: number, color: Rgb): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) {
      return;
    }
    const i = (y * this.width + x) * 4;
    this.pixels[i] = color[0];
    this.pixels[i + 1] = color[1];
    this.pixels[i + 2] = color[2];
    this.pixels[i + 3] = 255;
  }

  getPixel(x: number, y: number): Rgb {
    const i = (y * this.width + x) * 4;
    return [this.pixels[i]!, this.pixels[i + 1]!, this.pixels[i + 2]!];
  }

  fillRect(x: number, y: number, w: number, h: number, color: Rgb): void {
    const x0 = Math.max(0, Math.floor(x));
    const y0 = Math.max(0, Math.floor(y));
    const x1 = Math.min(this.width, Math.ceil(x + w));
    const y1 = Math.min(this.height, Math.ceil(y + h));
    for (let yy = y0; yy < y1; yy++) {
      for (let xx = x0; xx < x1; xx++) {
        this.setPixel(xx, yy, color);
      }
    }
  }

  /** Bresenham line; thickness is stamped as a square around each point. */
  drawLine(x0: number, y0: number, x1: number, y1: number, color: Rgb, thickness = 1): void {
    let ax = Math.round(x0);
    let ay = Math.round(y0);
    const bx = Math.round(x1);
    const by = Math.round(y1);
    const dx = Math.abs(bx - ax);
    const dy = -Math.abs(by - ay);
    const sx = ax < bx ? 1 : -1;
    const sy = ay < by ? 1 : -1;
    let err = dx + dy;
    const lo = -Math.floor((thickness - 1) / 2);
    const hi = Math.ceil((thickness - 1) / 2);
    for (;;) {
      for (let oy = lo; oy <= hi; oy++) {
        for (let ox = lo; ox <= hi; ox++) {
          this.setPixel(ax + ox, ay + oy, color);
        }
      }
      if (ax === bx && ay === by) {
        break;
      }
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        ax += sx;
      }
      if (e2 <= dx) {
        err += dx;
        ay += sy;
      }
    }
  }

  drawPolyline(points: readonly Point[], color: Rgb, thickness = 1): void {
    for (let i = 1; i < points.length; i++) {
      const a = points[i - 1]!;
      const b = points[i]!;
      this.drawLine(a.x, a.y, b.x, b.y, color, thickness);
    }
    if (points.length === 1) {
      const p = points[0]!;
      this.drawLine(p.x, p.y, p.x, p.y, color, thickness);
    }
  }

  /** Draw text with its top-left corner at (x, y). */
  drawText(x: number, y: number, text: string, color: Rgb, scale = 1): void {
    let cx = Math.round(x);
    const cy = Math.round(y);
    for (const ch of text) {
      const rows = glyphFor(ch);
      for (let gy = 0; gy < GLYPH_HEIGHT; gy++) {
        const row = rows[gy]!;
        for (let gx = 0; gx < GLYPH_WIDTH; gx++) {
          if (row[gx] === "X") {
            this.fillRect(cx + gx * scale, cy + gy * scale, scale, scale, color);
          }
        }
      }
      cx += (GLYPH_WIDTH + 1) * scale;
    }
  }
}

export function textWidth(text: string, scale = 1): number {
  const n = [...text].length;
  if (n === 0) {
    return 0;
  }
  return n * (GLYPH_WIDTH + 1) * scale - scale;
}

export function textHeight(scale = 1): number {
  return GLYPH_HEIGHT * scale;
}
