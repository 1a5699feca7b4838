/**
 * Parser for the simulator's CSV outputs.
 *
 * Every file is one `# meta:` JSON line, one column-header line, then data
 * rows of 17-significant-digit floats.  The raw data lines are retained
 * verbatim so that --dump-plotdata can emit the numeric columns byte-equal
 * to the source file.
 */

export interface DataFile {
  meta: Record<string, unknown>;
  header: string[];
  rows: number[][];
  /** Data lines exactly as they appeared in the file. */
  rawRows: string[];
}

export interface AxisMeta {
  name: string;
  start: number;
  stop: number;
  count: number;
}

export class CsvFormatError extends Error {}

const META_PREFIX = "# meta: ";

function parseField(token: string): number {
  switch (token) {
    case "nan":
      return NaN;
    case "inf":
      return Infinity;
    case "-inf":
      return -Infinity;
    default: {
      const value = Number(token);
      if (Number.isNaN(value) && token.trim() !== "nan") {
        throw new CsvFormatError(`unparseable numeric field ${JSON.stringify(token)}`);
      }
      return value;
    }
  }
}

export function parseDataFile(text: string): DataFile {
  const lines = text.split("\n");
  if (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop(); // trailing newline
  }
  if (lines.length < 2 || !lines[0].startsWith(META_PREFIX)) {
    throw new CsvFormatError("missing '# meta:' line");
  }
  let meta: Record<string, unknown>;
  try {
    meta = JSON.parse(lines[0].slice(META_PREFIX.length));
  } catch {
    throw new CsvFormatError("meta line is not valid JSON");
  }
  const header = lines[1].split(",");
  if (header.length < 2) {
    throw new CsvFormatError("missing column header");
  }
  const rawRows = lines.slice(2);
  const rows = rawRows.map((line, i) => {
    const fields = line.split(",");
    if (fields.length !== header.length) {
      throw new CsvFormatError(
        `row ${i + 1} has ${fields.length} fields, expected ${header.length}`,
      );
    }
    return fields.map(parseField);
  });
  return { meta, header, rows, rawRows };
}

export function axes(file: DataFile): AxisMeta[] {
  const raw = file.meta["axes"];
  if (!Array.isArray(raw)) {
    return [];
  }
  return raw as AxisMeta[];
}

export function directions(file: DataFile): string[] {
  const raw = file.meta["directions"];
  return Array.isArray(raw) ? (raw as string[]) : [];
}

export function column(file: DataFile, name: string): number[] {
  const index = file.header.indexOf(name);
  if (index < 0) {
    throw new CsvFormatError(`no column ${JSON.stringify(name)} in ${file.header.join(",")}`);
  }
  return file.rows.map((row) => row[index]);
}

export function requireColumns(file: DataFile, names: string[], kind: string): void {
  for (const name of names) {
    if (!file.header.includes(name)) {
      throw new CsvFormatError(
        `kind ${kind} needs column ${JSON.stringify(name)}; file has ${file.header.join(",")}`,
      );
    }
  }
}

/** The numeric body of the file, byte-identical to its data lines. */
export function plotData(file: DataFile): string {
  return file.rawRows.join("\n") + (file.rawRows.length > 0 ? "\n" : "");
}
