/**
 * Figure builders over the gmixent CSV schema.
 *
 * Three kinds: percentage error vs order with one curve per weight
 * exponent (polyfit_error) or per scale factor (taylor_error), and the
 * fitted-polynomial overlay against -s ln s (fit_curve).  Rendering is
 * read-only over the CSV: every plotted value is taken verbatim from the
 * file, never recomputed.
 */

import { readFileSync, writeFileSync } from 'fs';

import { EmptyCsvError, parseCsv, requireColumns, Row } from './csv.js';
import { renderChart, Series } from './svg.js';

export type FigureKind = 'polyfit_error' | 'fit_curve' | 'taylor_error';

export interface PlotSpec {
  csvPath: string;
  kind: FigureKind;
  outPath: string;
}

const REQUIRED: Record<FigureKind, readonly string[]> = {
  polyfit_error: ['mixture_id', 'method', 'C', 'r', 'pct_error_vs_oracle'],
  taylor_error: ['mixture_id', 'method', 'C', 'beta', 'pct_error_vs_oracle'],
  fit_curve: ['r', 'C', 'b', 's', 'poly_value', 'target_value'],
};

function groupBy(rows: Row[], key: string): Map<string, Row[]> {
  const out = new Map<string, Row[]>();
  for (const row of rows) {
    const group = out.get(row[key]);
    if (group) {
      group.push(row);
    } else {
      out.set(row[key], [row]);
    }
  }
  return out;
}

function errorSeries(rows: Row[], groupKey: string, labelPrefix: string): Series[] {
  // one curve per parameter value; if the CSV holds several mixtures,
  // one curve per (mixture, parameter) so curves are never merged
  const manyMixtures = new Set(rows.map((row) => row.mixture_id)).size > 1;
  const series: Series[] = [];
  const byMixture = manyMixtures
    ? groupBy(rows, 'mixture_id')
    : new Map([['', rows]]);
  for (const [mixture, subset] of byMixture) {
    for (const [value, group] of groupBy(subset, groupKey)) {
      const points = group
        .filter((row) => row.pct_error_vs_oracle !== '')
        .map(
          (row) =>
            [
              Number(row.C),
              Number(row.pct_error_vs_oracle),
              row.C,
              row.pct_error_vs_oracle,
            ] as [number, number, string, string],
        )
        .sort((a, b) => a[0] - b[0]);
      if (points.length > 0) {
        const prefix = mixture ? `${mixture}, ` : '';
        series.push({ label: `${prefix}${labelPrefix} = ${value}`, points });
      }
    }
  }
  return series;
}

export function buildFigure(kind: FigureKind, csvText: string, name: string): string {
  const { columns, rows } = parseCsv(csvText);
  requireColumns(columns, REQUIRED[kind]);
  if (rows.length === 0) {
    throw new EmptyCsvError();
  }

  if (kind === 'fit_curve') {
    const series: Series[] = [];
    for (const [r, group] of groupBy(rows, 'r')) {
      series.push({
        label: `fit, r = ${r}`,
        points: group.map(
          (row) =>
            [Number(row.s), Number(row.poly_value), row.s, row.poly_value] as [
              number,
              number,
              string,
              string,
            ],
        ),
      });
    }
    const first = groupBy(rows, 'r').values().next().value as Row[];
    series.push({
      label: '-s ln s',
      dashed: true,
      points: first.map(
        (row) =>
          [Number(row.s), Number(row.target_value), row.s, row.target_value] as [
            number,
            number,
            string,
            string,
          ],
      ),
    });
    return renderChart({
      title: `Polynomial fits of -s ln s (order ${rows[0].C}, interval (0, ${rows[0].b}])`,
      xLabel: 's',
      yLabel: 'value',
      series,
    });
  }

  const method = kind === 'polyfit_error' ? 'polyfit' : 'taylor';
  const relevant = rows.filter((row) => row.method === method);
  if (relevant.length === 0) {
    throw new Error(`CSV has no rows with method=${method}`);
  }
  const mixtures = [...new Set(relevant.map((row) => row.mixture_id))].join(', ');
  const series = errorSeries(
    relevant,
    method === 'polyfit' ? 'r' : 'beta',
    method === 'polyfit' ? 'r' : 'beta',
  );
  if (series.length === 0) {
    throw new Error('no rows carry a pct_error_vs_oracle value');
  }
  return renderChart({
    title:
      method === 'polyfit'
        ? `Fit-estimator percentage error vs order (${mixtures})`
        : `Series-bound percentage error vs order (${mixtures})`,
    xLabel: 'polynomial order C',
    yLabel: 'percentage error vs oracle',
    series,
  });
}

/** Render a figure to disk; nothing is written if validation fails. */
export function render(spec: PlotSpec): void {
  const text = readFileSync(spec.csvPath, 'utf8');
  const svg = buildFigure(spec.kind, text, spec.csvPath);
  writeFileSync(spec.outPath, svg);
}
