#!/usr/bin/env node
/** Render a frequency-angle gain heatmap CSV to PNG. */

import { readFileSync, writeFileSync } from 'node:fs'
import { pathToFileURL } from 'node:url'

import { fail, parseArgs } from './cli_common.js'
import { parseHeatmapCsv } from './heatmap_csv.js'
import { renderHeatmap } from './render.js'

const USAGE = 'usage: plot_heatmap <heatmap.csv> <out.png> [--range lo,hi] [--title text]'

export function main(argv: string[]): void {
  const options = parseArgs(argv, USAGE)
  const text = readFileSync(options.input, 'utf8')
  const data = parseHeatmapCsv(text)
  const raster = renderHeatmap(data, { rangeDb: options.rangeDb, title: options.title })
  writeFileSync(options.output, raster.toPng())
  console.log(
    `wrote ${options.output} (${raster.width}x${raster.height}, ` +
      `${data.freqsGhz.length}x${data.anglesDeg.length} cells)`,
  )
}

if (import.meta.url === pathToFileURL(process.argv[1] ?? '').href) {
  try {
    main(process.argv.slice(2))
  } catch (err) {
    fail(err)
  }
}
