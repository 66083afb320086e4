#!/usr/bin/env node
/** Render per-scheme composite-domain gain curves from a benchmark JSON. */

import { readFileSync, writeFileSync } from 'node:fs'
import { pathToFileURL } from 'node:url'

import { parseBenchmarkJson } from './benchmark_json.js'
import { fail, parseArgs } from './cli_common.js'
import { renderCurves } from './render.js'

const USAGE = 'usage: plot_curves <benchmark.json> <out.png> [--range lo,hi] [--title text]'

export function main(argv: string[]): void {
  const options = parseArgs(argv, USAGE)
  const text = readFileSync(options.input, 'utf8')
  const schemes = parseBenchmarkJson(text)
  const raster = renderCurves(schemes, { rangeDb: options.rangeDb, title: options.title })
  writeFileSync(options.output, raster.toPng())
  const ids = schemes.map((s) => s.id).join(', ')
  console.log(`wrote ${options.output} (${schemes.length} scheme(s): ${ids})`)
}

if (import.meta.url === pathToFileURL(process.argv[1] ?? '').href) {
  try {
    main(process.argv.slice(2))
  } catch (err) {
    fail(err)
  }
}
