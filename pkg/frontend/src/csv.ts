// Strict reader for the near-miss scan CSV. The producer writes plain
// comma-separated decimals with no quoting, so no general CSV machinery
// is needed -- but the header must match exactly, column for column.

export const EXPECTED_HEADER = ['t', 'b', 'a', 'n', 'doubled_dev', 'f'] as const

export interface NearMissRow {
  t: number
  b: number
  a: number
  n: number
  /** kept as a string: the doubled deviation is an unbounded integer */
  doubledDev: string
  f: number
}

export class CsvFormatError extends Error {}

export function parseNearMissCsv(text: string): NearMissRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0)
  if (lines.length === 0) {
    throw new CsvFormatError('empty CSV: no header line')
  }
  const header = lines[0].split(',').map((h) => h.trim())
  for (const column of EXPECTED_HEADER) {
    if (!header.includes(column)) {
      throw new CsvFormatError(`missing column '${column}' in header '${lines[0]}'`)
    }
  }
  if (header.length !== EXPECTED_HEADER.length || !EXPECTED_HEADER.every((c, i) => header[i] === c)) {
    throw new CsvFormatError(
      `header must be exactly '${EXPECTED_HEADER.join(',')}', got '${lines[0]}'`,
    )
  }
  if (lines.length === 1) {
    throw new CsvFormatError('CSV has a header but no data rows')
  }

  const rows: NearMissRow[] = []
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(',')
    if (parts.length !== EXPECTED_HEADER.length) {
      throw new CsvFormatError(`row ${i + 1}: expected ${EXPECTED_HEADER.length} fields, got ${parts.length}`)
    }
    const [t, b, a, n, doubledDev, f] = parts
    const row: NearMissRow = {
      t: parseIntStrict(t, i + 1, 't'),
      b: parseIntStrict(b, i + 1, 'b'),
      a: parseIntStrict(a, i + 1, 'a'),
      n: parseIntStrict(n, i + 1, 'n'),
      doubledDev: checkUnboundedInt(doubledDev, i + 1),
      f: parseFloatStrict(f, i + 1),
    }
    rows.push(row)
  }
  return rows
}

function parseIntStrict(token: string, line: number, field: string): number {
  if (!/^-?\d+$/.test(token)) {
    throw new CsvFormatError(`row ${line}: field '${field}' is not an integer: '${token}'`)
  }
  return parseInt(token, 10)
}

function checkUnboundedInt(token: string, line: number): string {
  if (!/^\d+$/.test(token)) {
    throw new CsvFormatError(`row ${line}: doubled_dev is not a nonnegative integer: '${token}'`)
  }
  return token
}

function parseFloatStrict(token: string, line: number): number {
  const value = Number(token)
  if (!Number.isFinite(value)) {
    throw new CsvFormatError(`row ${line}: f is not a finite number: '${token}'`)
  }
  return value
}
