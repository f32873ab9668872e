/**
 * Minimal SVG chart builder: linear scales, axes, polylines, a legend.
 *
 * Data points carry their source CSV strings as data-x/data-y attributes,
 * so a rendered figure can be audited against the file it came from
 * without any numeric round-tripping.
 */

export interface Series {
  label: string;
  /** [x, y, rawX, rawY]: numeric position plus the CSV strings */
  points: Array<[number, number, string, string]>;
  dashed?: boolean;
}

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
}

const WIDTH = 840;
const HEIGHT = 520;
const MARGIN = { top: 48, right: 180, bottom: 56, left: 72 };

const PALETTE = [
  '#1f77b4',
  '#d62728',
  '#2ca02c',
  '#9467bd',
  '#ff7f0e',
  '#8c564b',
  '#17becf',
];

function extent(values: number[]): [number, number] {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  return [lo, hi];
}

function ticks(lo: number, hi: number, count = 6): number[] {
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 2.5 * step, 5 * step, 10 * step];
  const best = candidates.find((s) => span / s <= count) ?? 10 * step;
  const start = Math.ceil(lo / best) * best;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-12 * span; v += best) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function renderChart(spec: ChartSpec): string {
  const xs = spec.series.flatMap((s) => s.points.map((p) => p[0]));
  const ys = spec.series.flatMap((s) => s.points.map((p) => p[1]));
  const [x0, x1] = extent(xs);
  const [y0, y1] = extent(ys);
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (x: number) => MARGIN.left + ((x - x0) / (x1 - x0)) * plotW;
  const sy = (y: number) => MARGIN.top + plotH - ((y - y0) / (y1 - y0)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif" font-size="13">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16">` +
      `${escapeXml(spec.title)}</text>`,
  );

  // axes and gridlines
  for (const t of ticks(x0, x1)) {
    const x = sx(t);
    parts.push(
      `<line x1="${x}" y1="${MARGIN.top}" x2="${x}" y2="${MARGIN.top + plotH}" ` +
        `stroke="#e0e0e0"/>`,
      `<text x="${x}" y="${MARGIN.top + plotH + 18}" text-anchor="middle">${t}</text>`,
    );
  }
  for (const t of ticks(y0, y1)) {
    const y = sy(t);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + plotW}" y2="${y}" ` +
        `stroke="#e0e0e0"/>`,
      `<text x="${MARGIN.left - 8}" y="${y + 4}" text-anchor="end">${t}</text>`,
    );
  }
  if (y0 < 0 && y1 > 0) {
    const zero = sy(0);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${zero}" x2="${MARGIN.left + plotW}" ` +
        `y2="${zero}" stroke="#999" stroke-dasharray="4 3"/>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" ` +
      `fill="none" stroke="#444"/>`,
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 12}" text-anchor="middle">` +
      `${escapeXml(spec.xLabel)}</text>`,
    `<text x="20" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 20 ${MARGIN.top + plotH / 2})">${escapeXml(spec.yLabel)}</text>`,
  );

  spec.series.forEach((series, index) => {
    const color = PALETTE[index % PALETTE.length];
    const path = series.points
      .map((p) => `${sx(p[0]).toFixed(2)},${sy(p[1]).toFixed(2)}`)
      .join(' ');
    const dash = series.dashed ? ' stroke-dasharray="6 4"' : '';
    parts.push(
      `<polyline points="${path}" fill="none" stroke="${color}" stroke-width="1.8"${dash}/>`,
    );
    for (const [x, y, rawX, rawY] of series.points) {
      parts.push(
        `<circle cx="${sx(x).toFixed(2)}" cy="${sy(y).toFixed(2)}" r="2.4" ` +
          `fill="${color}" data-x="${escapeXml(rawX)}" data-y="${escapeXml(rawY)}"/>`,
      );
    }
    const ly = MARGIN.top + 16 + 20 * index;
    const lx = MARGIN.left + plotW + 14;
    parts.push(
      `<line x1="${lx}" y1="${ly - 4}" x2="${lx + 26}" y2="${ly - 4}" ` +
        `stroke="${color}" stroke-width="2"${dash}/>`,
      `<text x="${lx + 32}" y="${ly}">${escapeXml(series.label)}</text>`,
    );
  });

  parts.push('</svg>');
  return parts.join('\n');
}
