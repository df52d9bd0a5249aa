#!/usr/bin/env node
// render_fig1 --csv near_miss.csv [--csv more.csv] --out fig1.svg

import { CsvFormatError } from './csv'
import { defaultSpec, render } from './figure'

function usage(): never {
  console.error(
    'usage: render_fig1 --csv <near_miss.csv> [--csv <more.csv>] --out <fig1.svg> ' +
      '[--width N] [--height N] [--marker-size N]',
  )
  process.exit(1)
}

export function main(argv: string[]): number {
  const csvPaths: string[] = []
  let outPath: string | null = null
  let width: number | null = null
  let height: number | null = null
  let markerSize: number | null = null

  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i]
    const value = argv[i + 1]
    switch (flag) {
      case '--csv':
        if (value === undefined) usage()
        csvPaths.push(value)
        i++
        break
      case '--out':
        if (value === undefined) usage()
        outPath = value
        i++
        break
      case '--width':
        width = Number(value)
        i++
        break
      case '--height':
        height = Number(value)
        i++
        break
      case '--marker-size':
        markerSize = Number(value)
        i++
        break
      default:
        console.error(`unknown flag: ${flag}`)
        usage()
    }
  }
  if (csvPaths.length === 0 || outPath === null) usage()

  const spec = defaultSpec(csvPaths, outPath)
  if (width !== null) spec.width = width
  if (height !== null) spec.height = height
  if (markerSize !== null) spec.markerSize = markerSize

  try {
    const markers = render(spec)
    console.error(`wrote ${spec.outPath}: ${markers} markers`)
    return 0
  } catch (err) {
    if (err instanceof CsvFormatError) {
      console.error(`CSV format error: ${err.message}`)
      return 1
    }
    throw err
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)))
}
