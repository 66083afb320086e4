/** Software RGB raster with the primitives the plot renderers need. */

import { GLYPH_HEIGHT, GLYPH_SPACING, GLYPH_WIDTH, glyphRows, textWidth } from './font.js'
import { encodePng } from './png.js'

export type Rgb = readonly [number, number, number]

export class Raster {
  readonly width: number
  readonly height: number
  readonly pixels: Uint8Array

  constructor(width: number, height: number, background: Rgb = [255, 255, 255]) {
    this.width = width
    this.height = height
    this.pixels = new Uint8Array(width * height * 3)
    this.fillRect(0, 0, width, height, background)
  }

  set(x: number, y: number, color: Rgb): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return
    const i = (y * this.width + x) * 3
    this.pixels[i] = color[0]
    this.pixels[i + 1] = color[1]
    this.pixels[i + 2] = color[2]
  }

  get(x: number, y: number): Rgb {
    const i = (y * this.width + x) * 3
    return [this.pixels[i], this.pixels[i + 1], this.pixels[i + 2]]
  }

  fillRect(x: number, y: number, w: number, h: number, color: Rgb): void {
    for (let yy = y; yy < y + h; yy++) {
      for (let xx = x; xx < x + w; xx++) {
        this.set(xx, yy, color)
      }
    }
  }

  strokeRect(x: number, y: number, w: number, h: number, color: Rgb): void {
    for (let xx = x; xx < x + w; xx++) {
      this.set(xx, y, color)
      this.set(xx, y + h - 1, color)
    }
    for (let yy = y; yy < y + h; yy++) {
      this.set(x, yy, color)
      this.set(x + w - 1, yy, color)
    }
  }

  line(x0: number, y0: number, x1: number, y1: number, color: Rgb, thickness = 1): void {
    let [cx, cy] = [Math.round(x0), Math.round(y0)]
    const [tx, ty] = [Math.round(x1), Math.round(y1)]
    const dx = Math.abs(tx - cx)
    const dy = -Math.abs(ty - cy)
    const sx = cx < tx ? 1 : -1
    const sy = cy < ty ? 1 : -1
    let err = dx + dy
    for (;;) {
      this.dot(cx, cy, color, thickness)
      if (cx === tx && cy === ty) break
      const doubled = 2 * err
      if (doubled >= dy) {
        err += dy
        cx += sx
      }
      if (doubled <= dx) {
        err += dx
        cy += sy
      }
    }
  }

  private dot(x: number, y: number, color: Rgb, thickness: number): void {
    const r = Math.floor(thickness / 2)
    for (let yy = y - r; yy <= y + r; yy++) {
      for (let xx = x - r; xx <= x + r; xx++) {
        this.set(xx, yy, color)
      }
    }
  }

  text(x: number, y: number, content: string, color: Rgb): void {
    let cursor = x
    for (const char of content) {
      const rows = glyphRows(char)
      for (let gy = 0; gy < GLYPH_HEIGHT; gy++) {
        for (let gx = 0; gx < GLYPH_WIDTH; gx++) {
          if (rows[gy][gx] === '#') this.set(cursor + gx, y + gy, color)
        }
      }
      cursor += GLYPH_WIDTH + GLYPH_SPACING
    }
  }

  textCentered(cx: number, y: number, content: string, color: Rgb): void {
    this.text(Math.round(cx - textWidth(content) / 2), y, content, color)
  }

  textRightAligned(x: number, y: number, content: string, color: Rgb): void {
    this.text(x - textWidth(content), y, content, color)
  }

  /** Vertical text running bottom-to-top (for y-axis labels). */
  textVertical(x: number, cy: number, content: string, color: Rgb): void {
    const start = Math.round(cy + textWidth(content) / 2)
    let cursor = start
    for (const char of content) {
      const rows = glyphRows(char)
      for (let gy = 0; gy < GLYPH_HEIGHT; gy++) {
        for (let gx = 0; gx < GLYPH_WIDTH; gx++) {
          // rotate 90 degrees counterclockwise
          if (rows[gy][gx] === '#') this.set(x + gy, cursor - gx, color)
        }
      }
      cursor -= GLYPH_WIDTH + GLYPH_SPACING
    }
  }

  toPng(): Buffer {
    return encodePng(this.width, this.height, this.pixels)
  }
}

export const BLACK: Rgb = [0, 0, 0]
export const GREY: Rgb = [170, 170, 170]
export const WHITE: Rgb = [255, 255, 255]
