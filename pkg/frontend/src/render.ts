/** Pure renderers: parsed export data in, finished raster out. */

import { colormap, SERIES_COLORS } from './colormap.js'
import type { HeatmapData } from './heatmap_csv.js'
import type { SchemeCurve } from './benchmark_json.js'
import { BLACK, GREY, Raster, type Rgb } from './raster.js'
import { textWidth } from './font.js'

export interface HeatmapOptions {
  /** Color range in dB, fixed by default so runs stay comparable. */
  rangeDb?: [number, number]
  title?: string
}

export interface CurvesOptions {
  rangeDb?: [number, number]
  title?: string
}

export const DEFAULT_HEATMAP_RANGE: [number, number] = [-30, 16]

export const MARGIN = { left: 58, right: 88, top: 26, bottom: 46 } as const
export const PLOT_W = 512
export const PLOT_H = 384

function formatTick(value: number): string {
  const rounded = Math.round(value * 100) / 100
  return Number.isInteger(rounded) ? String(rounded) : rounded.toFixed(2)
}

export function renderHeatmap(data: HeatmapData, options: HeatmapOptions = {}): Raster {
  const [lo, hi] = options.rangeDb ?? DEFAULT_HEATMAP_RANGE
  if (!(lo < hi)) {
    throw new Error(`color range must satisfy lo < hi, got [${lo}, ${hi}]`)
  }
  const rows = data.gainsDb.length
  const cols = data.gainsDb[0].length
  const width = MARGIN.left + PLOT_W + MARGIN.right
  const height = MARGIN.top + PLOT_H + MARGIN.bottom
  const raster = new Raster(width, height)

  // cells, nearest neighbor; lowest frequency row at the bottom
  for (let py = 0; py < PLOT_H; py++) {
    const r = Math.min(rows - 1, Math.floor(((PLOT_H - 1 - py) / PLOT_H) * rows))
    for (let px = 0; px < PLOT_W; px++) {
      const c = Math.min(cols - 1, Math.floor((px / PLOT_W) * cols))
      const t = (data.gainsDb[r][c] - lo) / (hi - lo)
      raster.set(MARGIN.left + px, MARGIN.top + py, colormap(t))
    }
  }
  raster.strokeRect(MARGIN.left - 1, MARGIN.top - 1, PLOT_W + 2, PLOT_H + 2, BLACK)

  // axis ticks at cell centers
  const xTicks = tickIndices(cols)
  for (const c of xTicks) {
    const x = MARGIN.left + Math.round(((c + 0.5) / cols) * PLOT_W)
    raster.line(x, MARGIN.top + PLOT_H, x, MARGIN.top + PLOT_H + 4, BLACK)
    raster.textCentered(x, MARGIN.top + PLOT_H + 7, formatTick(data.anglesDeg[c]), BLACK)
  }
  const yTicks = tickIndices(rows)
  for (const r of yTicks) {
    const y = MARGIN.top + PLOT_H - Math.round(((r + 0.5) / rows) * PLOT_H)
    raster.line(MARGIN.left - 4, y, MARGIN.left, y, BLACK)
    raster.textRightAligned(MARGIN.left - 6, y - 3, formatTick(data.freqsGhz[r]), BLACK)
  }
  raster.textCentered(
    MARGIN.left + PLOT_W / 2,
    height - 12,
    'angle (deg)',
    BLACK,
  )
  raster.textVertical(6, MARGIN.top + PLOT_H / 2, 'frequency (GHz)', BLACK)
  raster.textCentered(width / 2, 8, options.title ?? 'beam gain (dB)', BLACK)

  // colorbar
  const barX = MARGIN.left + PLOT_W + 24
  const barW = 16
  for (let py = 0; py < PLOT_H; py++) {
    const t = 1 - py / (PLOT_H - 1)
    for (let px = 0; px < barW; px++) {
      raster.set(barX + px, MARGIN.top + py, colormap(t))
    }
  }
  raster.strokeRect(barX - 1, MARGIN.top - 1, barW + 2, PLOT_H + 2, BLACK)
  raster.text(barX + barW + 4, MARGIN.top - 3, formatTick(hi), BLACK)
  raster.text(barX + barW + 4, MARGIN.top + PLOT_H - 4, formatTick(lo), BLACK)
  raster.text(barX + barW + 4, MARGIN.top + PLOT_H / 2 - 3, formatTick((lo + hi) / 2), BLACK)
  return raster
}

function tickIndices(count: number): number[] {
  if (count === 1) return [0]
  if (count <= 4) return Array.from({ length: count }, (_, i) => i)
  return [0, 1, 2, 3].map((i) => Math.round((i * (count - 1)) / 3))
}

function niceTicks(lo: number, hi: number, target = 6): number[] {
  const rawStep = (hi - lo) / target
  const magnitude = 10 ** Math.floor(Math.log10(rawStep))
  const step = [1, 2, 5, 10].map((m) => m * magnitude).find((s) => (hi - lo) / s <= target)!
  const start = Math.ceil(lo / step) * step
  const ticks: number[] = []
  for (let v = start; v <= hi + 1e-12; v += step) {
    ticks.push(Math.round(v * 1e9) / 1e9)
  }
  return ticks
}

export function renderCurves(schemes: SchemeCurve[], options: CurvesOptions = {}): Raster {
  if (schemes.length === 0) {
    throw new Error('no schemes to plot')
  }
  const allOmega = schemes.flatMap((s) => s.omegaGrid)
  const xLo = Math.min(...allOmega)
  const xHi = Math.max(...allOmega)
  let [yLo, yHi] = options.rangeDb ?? autoRange(schemes)
  if (!(yLo < yHi)) {
    throw new Error(`dB range must satisfy lo < hi, got [${yLo}, ${yHi}]`)
  }

  const width = MARGIN.left + PLOT_W + MARGIN.right
  const height = MARGIN.top + PLOT_H + MARGIN.bottom
  const raster = new Raster(width, height)
  const toX = (w: number) =>
    MARGIN.left + (xHi === xLo ? PLOT_W / 2 : ((w - xLo) / (xHi - xLo)) * PLOT_W)
  const toY = (db: number) => {
    const clamped = Math.min(yHi, Math.max(yLo, db))
    return MARGIN.top + PLOT_H - ((clamped - yLo) / (yHi - yLo)) * PLOT_H
  }

  for (const tick of niceTicks(yLo, yHi)) {
    const y = Math.round(toY(tick))
    raster.line(MARGIN.left, y, MARGIN.left + PLOT_W, y, [235, 235, 235])
    raster.line(MARGIN.left - 4, y, MARGIN.left, y, BLACK)
    raster.textRightAligned(MARGIN.left - 6, y - 3, formatTick(tick), BLACK)
  }
  for (const tick of niceTicks(xLo, xHi)) {
    const x = Math.round(toX(tick))
    raster.line(x, MARGIN.top, x, MARGIN.top + PLOT_H, [235, 235, 235])
    raster.line(x, MARGIN.top + PLOT_H, x, MARGIN.top + PLOT_H + 4, BLACK)
    raster.textCentered(x, MARGIN.top + PLOT_H + 7, formatTick(tick), BLACK)
  }
  raster.strokeRect(MARGIN.left - 1, MARGIN.top - 1, PLOT_W + 2, PLOT_H + 2, BLACK)

  schemes.forEach((scheme, index) => {
    const color = SERIES_COLORS[index % SERIES_COLORS.length]
    for (let i = 1; i < scheme.omegaGrid.length; i++) {
      raster.line(
        toX(scheme.omegaGrid[i - 1]),
        toY(scheme.gainCurveDb[i - 1]),
        toX(scheme.omegaGrid[i]),
        toY(scheme.gainCurveDb[i]),
        color,
        2,
      )
    }
  })

  // legend, top right inside the plot area
  const labels = schemes.map((s) => `scheme ${s.id}`)
  const legendW = Math.max(...labels.map(textWidth)) + 26
  const legendH = schemes.length * 12 + 8
  const legendX = MARGIN.left + PLOT_W - legendW - 8
  const legendY = MARGIN.top + 8
  raster.fillRect(legendX, legendY, legendW, legendH, [255, 255, 255])
  raster.strokeRect(legendX, legendY, legendW, legendH, GREY)
  schemes.forEach((scheme, index) => {
    const color = SERIES_COLORS[index % SERIES_COLORS.length]
    const rowY = legendY + 6 + index * 12
    raster.line(legendX + 4, rowY + 3, legendX + 18, rowY + 3, color, 2)
    raster.text(legendX + 22, rowY, labels[index], BLACK)
  })

  raster.textCentered(MARGIN.left + PLOT_W / 2, height - 12, 'composite variable (rad)', BLACK)
  raster.textVertical(6, MARGIN.top + PLOT_H / 2, 'beam gain (dB)', BLACK)
  raster.textCentered(width / 2, 8, options.title ?? 'worst-case gain by scheme', BLACK)
  return raster
}

function autoRange(schemes: SchemeCurve[]): [number, number] {
  const values = schemes.flatMap((s) => s.gainCurveDb)
  const hi = Math.ceil(Math.max(...values)) + 2
  const lo = Math.max(Math.floor(Math.min(...values)) - 2, -45)
  return [Math.min(lo, hi - 1), hi]
}

export type { Rgb }
