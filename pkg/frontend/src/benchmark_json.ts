/** Schema-locked reader for the solver's benchmark JSON export. */

import { z } from 'zod'

const reportSchema = z.object({
  mu: z.number(),
  min_gain_db: z.number(),
  omega_grid: z.array(z.number()).min(1),
  gain_curve_db: z.array(z.number()).min(1),
})

const schemeSchema = z.object({
  id: z.string().min(1),
  report: reportSchema,
})

const benchmarkSchema = z.object({
  version: z.string(),
  kind: z.literal('benchmark'),
  seed: z.number(),
  schemes: z.array(schemeSchema).min(1, 'benchmark export lists no schemes'),
})

export interface SchemeCurve {
  id: string
  mu: number
  minGainDb: number
  omegaGrid: number[]
  gainCurveDb: number[]
}

export function parseBenchmarkJson(text: string): SchemeCurve[] {
  let document: unknown
  try {
    document = JSON.parse(text)
  } catch (err) {
    throw new Error(`input is not valid JSON: ${(err as Error).message}`)
  }
  const result = benchmarkSchema.safeParse(document)
  if (!result.success) {
    const issue = result.error.issues[0]
    const where = issue.path.join('.') || '(root)'
    throw new Error(`benchmark export failed validation at ${where}: ${issue.message}`)
  }
  return result.data.schemes.map((scheme) => {
    if (scheme.report.gain_curve_db.length !== scheme.report.omega_grid.length) {
      throw new Error(
        `scheme ${scheme.id}: gain curve length ${scheme.report.gain_curve_db.length} ` +
          `does not match grid length ${scheme.report.omega_grid.length}`,
      )
    }
    return {
      id: scheme.id,
      mu: scheme.report.mu,
      minGainDb: scheme.report.min_gain_db,
      omegaGrid: scheme.report.omega_grid,
      gainCurveDb: scheme.report.gain_curve_db,
    }
  })
}
