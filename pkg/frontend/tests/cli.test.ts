import { spawnSync } from 'node:child_process'
import { existsSync, mkdtempSync, readFileSync, writeFileSync } from 'node:fs'
import { tmpdir } from 'node:os'
import { join } from 'node:path'
import { describe, expect, it } from 'vitest'

const ROOT = join(__dirname, '..')
const FIXTURES = join(__dirname, 'fixtures')

function run(script: string, args: string[]) {
  return spawnSync('node', [join(ROOT, 'dist', script), ...args], { encoding: 'utf8' })
}

function scratch(): string {
  return mkdtempSync(join(tmpdir(), 'plots-'))
}

describe('plot_heatmap command', () => {
  it('renders the swept baseline export', () => {
    const out = join(scratch(), 'heatmap.png')
    const result = run('plot_heatmap.js', [join(FIXTURES, 'baseline_heatmap.csv'), out])
    expect(result.status).toBe(0)
    expect(existsSync(out)).toBe(true)
    const png = readFileSync(out)
    expect(png.subarray(1, 4).toString('ascii')).toBe('PNG')
  })

  it('fails loudly on a corrupted header', () => {
    const dir = scratch()
    const bad = join(dir, 'bad.csv')
    const original = readFileSync(join(FIXTURES, 'baseline_heatmap.csv'), 'utf8')
    writeFileSync(bad, original.replace(',0.000000,', ',???,'))
    const result = run('plot_heatmap.js', [bad, join(dir, 'out.png')])
    expect(result.status).toBe(1)
    expect(result.stderr).toMatch(/row 1, column 2/)
    expect(existsSync(join(dir, 'out.png'))).toBe(false)
  })

  it('rejects wrong usage', () => {
    const result = run('plot_heatmap.js', ['only-one-arg'])
    expect(result.status).toBe(1)
    expect(result.stderr).toMatch(/usage/)
  })

  it('accepts a custom color range', () => {
    const out = join(scratch(), 'ranged.png')
    const result = run('plot_heatmap.js', [
      join(FIXTURES, 'flat_heatmap.csv'),
      out,
      '--range',
      '-10,16',
    ])
    expect(result.status).toBe(0)
    expect(existsSync(out)).toBe(true)
  })
})

describe('plot_curves command', () => {
  it('renders all five schemes from the benchmark export', () => {
    const out = join(scratch(), 'curves.png')
    const result = run('plot_curves.js', [join(FIXTURES, 'benchmark_report.json'), out])
    expect(result.status).toBe(0)
    expect(result.stdout).toMatch(/5 scheme/)
    expect(existsSync(out)).toBe(true)
  })

  it('fails loudly on documents of the wrong kind', () => {
    const dir = scratch()
    const bad = join(dir, 'solve.json')
    writeFileSync(bad, JSON.stringify({ kind: 'solve', version: '0', seed: 0 }))
    const result = run('plot_curves.js', [bad, join(dir, 'out.png')])
    expect(result.status).toBe(1)
    expect(result.stderr).toMatch(/validation|kind/)
  })

  it('fails loudly on an empty scheme list', () => {
    const dir = scratch()
    const doc = JSON.parse(readFileSync(join(FIXTURES, 'benchmark_report.json'), 'utf8'))
    doc.schemes = []
    const bad = join(dir, 'empty.json')
    writeFileSync(bad, JSON.stringify(doc))
    const result = run('plot_curves.js', [bad, join(dir, 'out.png')])
    expect(result.status).toBe(1)
    expect(result.stderr).toMatch(/no schemes/)
    expect(existsSync(join(dir, 'out.png'))).toBe(false)
  })

  it('fails on missing input files', () => {
    const result = run('plot_curves.js', ['/nonexistent.json', '/tmp/x.png'])
    expect(result.status).toBe(1)
  })
})
