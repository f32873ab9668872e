/**
 * CLI: entropy-plots --csv sweep.csv --kind polyfit_error --out figure.svg
 *
 * Exits nonzero without writing anything when the CSV does not carry the
 * columns the requested figure kind needs.
 */

import { pathToFileURL } from 'url';

import { render, FigureKind } from './render.js';

const KINDS: FigureKind[] = ['polyfit_error', 'fit_curve', 'taylor_error'];

function parseArgs(argv: string[]): { csv: string; kind: FigureKind; out: string } {
  const opts = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key.startsWith('--') || value === undefined) {
      throw new Error(`malformed arguments near '${key}'`);
    }
    opts.set(key.slice(2), value);
  }
  const csv = opts.get('csv');
  const kind = opts.get('kind') as FigureKind | undefined;
  const out = opts.get('out');
  if (!csv || !kind || !out) {
    throw new Error('usage: --csv <file> --kind <kind> --out <file.svg>');
  }
  if (!KINDS.includes(kind)) {
    throw new Error(`unknown kind '${kind}'; expected one of ${KINDS.join(', ')}`);
  }
  return { csv, kind, out };
}

export function main(argv: string[]): number {
  try {
    const { csv, kind, out } = parseArgs(argv);
    render({ csvPath: csv, kind, outPath: out });
    console.log(`wrote ${out}`);
    return 0;
  } catch (err) {
    console.error(`entropy-plots: ${(err as Error).message}`);
    return 1;
  }
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
