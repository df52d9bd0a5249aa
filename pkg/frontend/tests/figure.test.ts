import { existsSync, mkdtempSync, readFileSync, writeFileSync } from 'fs'
import { tmpdir } from 'os'
import { join, resolve } from 'path'
import { describe, expect, it } from 'vitest'
import { parseNearMissCsv } from '../src/csv'
import { defaultSpec, render, renderSvg, SERIES_COLORS } from '../src/figure'

const SMALL = `t,b,a,n,doubled_dev,f
3,71,42,60,1,-0.0552039920621
4,71,41,59,1234,0.41
5,71,40,58,98765,0.52
`

function circleCount(svg: string): number {
  return (svg.match(/<circle /g) ?? []).length
}

function seriesBlock(svg: string, t: number): string {
  const match = svg.match(new RegExp(`<g class="series series-t${t}" fill="([a-z]+)">([\\s\\S]*?)</g>`))
  expect(match, `series t=${t} present`).not.toBeNull()
  return match![0]
}

function zeroLineY(svg: string): number {
  const match = svg.match(/class="zero-line"[^/]*y1="([0-9.]+)"/)
  expect(match).not.toBeNull()
  return Number(match![1])
}

describe('renderSvg', () => {
  it('draws one marker per row in three colored series', () => {
    const rows = parseNearMissCsv(SMALL)
    const svg = renderSvg(rows, defaultSpec(['small.csv'], 'out.svg'))
    expect(circleCount(svg)).toBe(3)
    for (const t of [3, 4, 5]) {
      const block = seriesBlock(svg, t)
      expect(block).toContain(`fill="${SERIES_COLORS[t]}"`)
    }
    expect(seriesBlock(svg, 3)).toContain('fill="red"')
    expect(seriesBlock(svg, 4)).toContain('fill="blue"')
    expect(seriesBlock(svg, 5)).toContain('fill="black"')
  })

  it('puts the negative b=71 marker below the zero line', () => {
    const rows = parseNearMissCsv(SMALL)
    const svg = renderSvg(rows, defaultSpec(['small.csv'], 'out.svg'))
    const marker = svg.match(/<circle [^/]*data-t="3" data-b="71"\/>/)
    expect(marker).not.toBeNull()
    const cy = Number(marker![0].match(/cy="([0-9.]+)"/)![1])
    expect(cy).toBeGreaterThan(zeroLineY(svg)) // SVG y grows downward
  })

  it('refuses rows with an unmapped t', () => {
    const rows = parseNearMissCsv('t,b,a,n,doubled_dev,f\n7,12,10,11,5,0.3\n')
    expect(() => renderSvg(rows, defaultSpec([], 'out.svg'))).toThrowError(/t=7/)
  })

  it('is deterministic', () => {
    const rows = parseNearMissCsv(SMALL)
    const spec = defaultSpec(['small.csv'], 'out.svg')
    expect(renderSvg(rows, spec)).toBe(renderSvg(rows, spec))
  })

  it('render() writes the image file end to end', () => {
    const dir = mkdtempSync(join(tmpdir(), 'figviz-'))
    const csv = join(dir, 'rows.csv')
    const out = join(dir, 'fig.svg')
    writeFileSync(csv, SMALL)
    const markers = render(defaultSpec([csv], out))
    expect(markers).toBe(3)
    expect(readFileSync(out, 'utf8')).toContain('<svg')
  })
})

describe('full-scale figure from the generated CSV', () => {
  const csvPath = resolve(__dirname, '..', '..', 'data', 'near_miss_b2000.csv')
  it.skipIf(!existsSync(csvPath))('renders every record with the caption colors', () => {
    const rows = parseNearMissCsv(readFileSync(csvPath, 'utf8'))
    expect(rows.length).toBe(3 * (2000 - 11 + 1))
    const svg = renderSvg(rows, defaultSpec([csvPath], 'fig1.svg'))

    expect(circleCount(svg)).toBe(rows.length)
    for (const t of [3, 4, 5]) {
      const block = seriesBlock(svg, t)
      expect(block).toContain(`fill="${SERIES_COLORS[t]}"`)
      expect((block.match(/<circle /g) ?? []).length).toBe(2000 - 11 + 1)
    }

    // exactly one marker strictly below the zero line: (71, f_3(71))
    const zy = zeroLineY(svg)
    const below = [...svg.matchAll(/<circle cx="[0-9.]+" cy="([0-9.]+)" r="[0-9.]+" data-t="(\d+)" data-b="(\d+)"\/>/g)]
      .filter((m) => Number(m[1]) > zy)
    expect(below).toHaveLength(1)
    expect(below[0][2]).toBe('3')
    expect(below[0][3]).toBe('71')
  })
})
