export { parseNearMissCsv, CsvFormatError, EXPECTED_HEADER } from './csv'
export type { NearMissRow } from './csv'
export { render, renderSvg, defaultSpec, SERIES_COLORS } from './figure'
export type { FigureSpec } from './figure'
