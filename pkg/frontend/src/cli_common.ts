/** Shared option handling for the two plot commands. */

export interface CliOptions {
  input: string
  output: string
  rangeDb?: [number, number]
  title?: string
}

export function parseArgs(argv: string[], usage: string): CliOptions {
  const positional: string[] = []
  let rangeDb: [number, number] | undefined
  let title: string | undefined
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i]
    if (arg === '--range') {
      const raw = argv[++i]
      const parts = (raw ?? '').split(',').map(Number)
      if (parts.length !== 2 || parts.some((v) => !Number.isFinite(v))) {
        throw new Error(`--range expects "lo,hi" in dB, got ${JSON.stringify(raw)}`)
      }
      rangeDb = [parts[0], parts[1]]
    } else if (arg === '--title') {
      title = argv[++i]
      if (title === undefined) throw new Error('--title expects a value')
    } else if (arg.startsWith('--')) {
      throw new Error(`unknown option ${arg}\n${usage}`)
    } else {
      positional.push(arg)
    }
  }
  if (positional.length !== 2) {
    throw new Error(usage)
  }
  return { input: positional[0], output: positional[1], rangeDb, title }
}

export function fail(err: unknown): never {
  console.error(`error: ${err instanceof Error ? err.message : String(err)}`)
  process.exit(1)
}
