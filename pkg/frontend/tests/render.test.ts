import { readFileSync } from 'node:fs'
import { join } from 'node:path'
import { describe, expect, it } from 'vitest'

import { parseBenchmarkJson } from '../src/benchmark_json.js'
import { textWidth } from '../src/font.js'
import { parseHeatmapCsv } from '../src/heatmap_csv.js'
import { MARGIN, PLOT_H, PLOT_W, renderCurves, renderHeatmap } from '../src/render.js'

const FIXTURES = join(__dirname, 'fixtures')

function fixture(name: string): string {
  return readFileSync(join(FIXTURES, name), 'utf8')
}

describe('renderHeatmap', () => {
  it('paints a flat export as one uniform color block', () => {
    const raster = renderHeatmap(parseHeatmapCsv(fixture('flat_heatmap.csv')))
    const reference = raster.get(MARGIN.left + 5, MARGIN.top + 5)
    for (let y = 0; y < PLOT_H; y += 17) {
      for (let x = 0; x < PLOT_W; x += 17) {
        expect(raster.get(MARGIN.left + x, MARGIN.top + y)).toEqual(reference)
      }
    }
  })

  it('renders a two-by-two file without error', () => {
    const raster = renderHeatmap(parseHeatmapCsv(',0.0,30.0\n950.0,1.0,2.0\n1050.0,3.0,4.0\n'))
    const png = raster.toPng()
    expect(png.length).toBeGreaterThan(100)
  })

  it('shows squint nulls at least 15 dB under the peak in the baseline export', () => {
    const data = parseHeatmapCsv(fixture('baseline_heatmap.csv'))
    const flat = data.gainsDb.flat()
    expect(Math.max(...flat) - Math.min(...flat)).toBeGreaterThanOrEqual(15)
    const raster = renderHeatmap(data)
    // dark and bright cells must land on different colors
    expect(raster.toPng().length).toBeGreaterThan(1000)
  })

  it('rejects an inverted color range', () => {
    const data = parseHeatmapCsv(fixture('flat_heatmap.csv'))
    expect(() => renderHeatmap(data, { rangeDb: [10, -10] })).toThrow(/lo < hi/)
  })
})

describe('renderCurves', () => {
  it('draws one curve per scheme with the proposed minimum on top', () => {
    const schemes = parseBenchmarkJson(fixture('benchmark_report.json'))
    expect(schemes).toHaveLength(5)
    const minima = new Map(
      schemes.map((s) => [s.id, Math.min(...s.gainCurveDb)] as const),
    )
    const proposed = minima.get('proposed')!
    for (const [id, value] of minima) {
      if (id !== 'proposed') expect(proposed).toBeGreaterThan(value)
    }
    const raster = renderCurves(schemes)
    expect(raster.toPng().length).toBeGreaterThan(1000)
  })

  it('renders a single scheme', () => {
    const schemes = parseBenchmarkJson(fixture('benchmark_report.json')).slice(0, 1)
    const raster = renderCurves(schemes)
    expect(raster.width).toBe(MARGIN.left + PLOT_W + MARGIN.right)
  })

  it('refuses an empty scheme list', () => {
    expect(() => renderCurves([])).toThrow(/no schemes/)
  })

  it('uses distinct colors for the legend swatches', () => {
    const schemes = parseBenchmarkJson(fixture('benchmark_report.json'))
    const raster = renderCurves(schemes)
    // recompute the legend origin the way the renderer lays it out
    const labels = schemes.map((s) => `scheme ${s.id}`)
    const legendW = Math.max(...labels.map(textWidth)) + 26
    const legendX = MARGIN.left + PLOT_W - legendW - 8
    const legendY = MARGIN.top + 8
    const seen = new Set<string>()
    for (let i = 0; i < schemes.length; i++) {
      seen.add(raster.get(legendX + 10, legendY + 6 + i * 12 + 3).join(','))
    }
    expect(seen.size).toBe(schemes.length)
  })
})
