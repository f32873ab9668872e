/**
 * Strict reader for the gmixent CSV schemas.
 *
 * The files are plain comma-separated text with a fixed header and no
 * quoting, so a hand-rolled parser keeps the error messages precise:
 * schema mismatches report exactly which columns are missing.
 */

export class SchemaError extends Error {
  readonly missing: string[];

  constructor(missing: string[], found: string[]) {
    super(
      `CSV is missing required column(s): ${missing.join(', ')} ` +
        `(found: ${found.join(', ')})`,
    );
    this.missing = missing;
  }
}

export class EmptyCsvError extends Error {
  constructor() {
    super('CSV contains a header but no data rows');
  }
}

export type Row = Record<string, string>;

export function parseCsv(text: string): { columns: string[]; rows: Row[] } {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new EmptyCsvError();
  }
  const columns = lines[0].split(',');
  const rows = lines.slice(1).map((line, index) => {
    const cells = line.split(',');
    if (cells.length !== columns.length) {
      throw new Error(
        `row ${index + 2} has ${cells.length} fields, header has ${columns.length}`,
      );
    }
    const row: Row = {};
    columns.forEach((name, i) => (row[name] = cells[i]));
    return row;
  });
  return { columns, rows };
}

export function requireColumns(
  found: string[],
  required: readonly string[],
): void {
  const missing = required.filter((name) => !found.includes(name));
  if (missing.length > 0) {
    throw new SchemaError(missing, found);
  }
}
