// SVG scatter of f_t(b) against b, one series per t. Hand-built SVG keeps
// the output deterministic and dependency-free; the zero line is always
// drawn so negative points sit visibly below it.

import { readFileSync, writeFileSync } from 'fs'
import { NearMissRow, parseNearMissCsv } from './csv'

export const SERIES_COLORS: Record<number, string> = {
  3: 'red',
  4: 'blue',
  5: 'black',
}

export interface FigureSpec {
  csvPaths: string[]
  outPath: string
  width: number
  height: number
  markerSize: number
  xLabel: string
  yLabel: string
}

export function defaultSpec(csvPaths: string[], outPath: string): FigureSpec {
  return {
    csvPaths,
    outPath,
    width: 960,
    height: 600,
    markerSize: 2.5,
    xLabel: 'b',
    yLabel: 'f_t(b)',
  }
}

/** Read the spec's CSV inputs, render, write the image; returns the marker count. */
export function render(spec: FigureSpec): number {
  const rows = spec.csvPaths.flatMap((path) => parseNearMissCsv(readFileSync(path, 'utf8')))
  writeFileSync(spec.outPath, renderSvg(rows, spec))
  return rows.length
}

const MARGIN = { top: 24, right: 24, bottom: 48, left: 64 }

interface Scale {
  (value: number): number
}

function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1
  return (value: number) => r0 + ((value - d0) / span) * (r1 - r0)
}

function fmt(value: number): string {
  return value.toFixed(2)
}

export function renderSvg(rows: NearMissRow[], spec: FigureSpec): string {
  if (rows.length === 0) {
    throw new Error('nothing to plot: no rows')
  }
  for (const row of rows) {
    if (!(row.t in SERIES_COLORS)) {
      throw new Error(`no color assigned for t=${row.t}; known: ${Object.keys(SERIES_COLORS).join(', ')}`)
    }
  }

  const xs = rows.map((r) => r.b)
  const ys = rows.map((r) => r.f)
  const xMin = Math.min(...xs)
  const xMax = Math.max(...xs)
  // the zero line must always be inside the plot
  const yMin = Math.min(0, ...ys)
  const yMax = Math.max(0, ...ys)
  const yPad = 0.05 * (yMax - yMin || 1)

  const plotW = spec.width - MARGIN.left - MARGIN.right
  const plotH = spec.height - MARGIN.top - MARGIN.bottom
  const sx = linearScale(xMin, xMax, MARGIN.left, MARGIN.left + plotW)
  // SVG y grows downward, so the range is flipped
  const sy = linearScale(yMin - yPad, yMax + yPad, MARGIN.top + plotH, MARGIN.top)

  const parts: string[] = []
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${spec.width}" height="${spec.height}" viewBox="0 0 ${spec.width} ${spec.height}">`,
  )
  parts.push(`<rect width="${spec.width}" height="${spec.height}" fill="white"/>`)

  const zeroY = sy(0)
  parts.push(
    `<line class="zero-line" x1="${fmt(MARGIN.left)}" y1="${fmt(zeroY)}" x2="${fmt(
      MARGIN.left + plotW,
    )}" y2="${fmt(zeroY)}" stroke="#444" stroke-width="1"/>`,
  )
  parts.push(
    `<line class="y-axis" x1="${fmt(MARGIN.left)}" y1="${fmt(MARGIN.top)}" x2="${fmt(
      MARGIN.left,
    )}" y2="${fmt(MARGIN.top + plotH)}" stroke="#444" stroke-width="1"/>`,
  )

  parts.push(
    `<text class="x-label" x="${fmt(MARGIN.left + plotW / 2)}" y="${fmt(
      spec.height - 12,
    )}" text-anchor="middle" font-family="sans-serif" font-size="14">${spec.xLabel}</text>`,
  )
  parts.push(
    `<text class="y-label" x="16" y="${fmt(MARGIN.top + plotH / 2)}" text-anchor="middle" ` +
      `font-family="sans-serif" font-size="14" transform="rotate(-90 16 ${fmt(
        MARGIN.top + plotH / 2,
      )})">${spec.yLabel}</text>`,
  )

  const byT = new Map<number, NearMissRow[]>()
  for (const row of rows) {
    const bucket = byT.get(row.t)
    if (bucket) bucket.push(row)
    else byT.set(row.t, [row])
  }
  for (const t of [...byT.keys()].sort((a, b) => a - b)) {
    const color = SERIES_COLORS[t]
    parts.push(`<g class="series series-t${t}" fill="${color}">`)
    for (const row of byT.get(t)!) {
      parts.push(
        `<circle cx="${fmt(sx(row.b))}" cy="${fmt(sy(row.f))}" r="${spec.markerSize}" ` +
          `data-t="${row.t}" data-b="${row.b}"/>`,
      )
    }
    parts.push('</g>')
  }

  parts.push('</svg>')
  return parts.join('\n') + '\n'
}
