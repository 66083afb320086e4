/** Strict parser for the solver's heatmap CSV export.

The first row holds angle labels in degrees behind an empty corner cell;
every following row starts with the frequency in GHz and continues with
gain cells in dB.  Any malformed cell fails with its row and column.
*/

export interface HeatmapData {
  anglesDeg: number[]
  freqsGhz: number[]
  gainsDb: number[][]
}

class CsvFormatError extends Error {}

function parseCell(raw: string, row: number, column: number, what: string): number {
  const value = Number(raw)
  if (raw.trim() === '' || !Number.isFinite(value)) {
    throw new CsvFormatError(
      `malformed ${what} at row ${row}, column ${column}: ${JSON.stringify(raw)}`,
    )
  }
  return value
}

export function parseHeatmapCsv(text: string): HeatmapData {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0)
  if (lines.length < 2) {
    throw new CsvFormatError(`expected a header row plus data rows, got ${lines.length} line(s)`)
  }
  const header = lines[0].split(',')
  if (header.length < 2) {
    throw new CsvFormatError('header row must hold a corner cell plus at least one angle')
  }
  if (header[0].trim() !== '') {
    throw new CsvFormatError(
      `corner cell of the header must be empty, got ${JSON.stringify(header[0])}`,
    )
  }
  const anglesDeg = header.slice(1).map((cell, i) => parseCell(cell, 1, i + 2, 'angle header'))

  const freqsGhz: number[] = []
  const gainsDb: number[][] = []
  for (let r = 1; r < lines.length; r++) {
    const cells = lines[r].split(',')
    if (cells.length !== header.length) {
      throw new CsvFormatError(
        `row ${r + 1} has ${cells.length} cells, expected ${header.length}`,
      )
    }
    freqsGhz.push(parseCell(cells[0], r + 1, 1, 'frequency'))
    gainsDb.push(cells.slice(1).map((cell, i) => parseCell(cell, r + 1, i + 2, 'gain')))
  }
  return { anglesDeg, freqsGhz, gainsDb }
}
