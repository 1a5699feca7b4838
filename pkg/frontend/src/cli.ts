/**
 * plotkit render --kind <heatmap|slice|contrast|spectra> --input file.csv
 *                [--input more.csv] --output figure.svg
 *                [--dump-plotdata data.txt] [--column name] [--direction i]
 *
 * Exit codes: 0 success, 1 bad input data, 2 usage error.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { CsvFormatError, parseDataFile } from "./csv.js";
import { FigureKind, RenderOptions, render } from "./render.js";

interface CliArgs {
  kind: FigureKind;
  inputs: string[];
  output: string | null;
  dumpPlotdata: string | null;
  column?: string;
  direction?: number;
}

const KINDS: FigureKind[] = ["heatmap", "slice", "contrast", "spectra"];

class UsageError extends Error {}

function parseArgs(argv: string[]): CliArgs {
  if (argv[0] !== "render") {
    throw new UsageError("usage: plotkit render --kind KIND --input FILE --output FILE.svg");
  }
  const args: CliArgs = { kind: "heatmap", inputs: [], output: null, dumpPlotdata: null };
  let kindSeen = false;
  for (let i = 1; i < argv.length; i++) {
    const flag = argv[i];
    const next = () => {
      i += 1;
      if (i >= argv.length) {
        throw new UsageError(`missing value for ${flag}`);
      }
      return argv[i];
    };
    switch (flag) {
      case "--kind": {
        const kind = next() as FigureKind;
        if (!KINDS.includes(kind)) {
          throw new UsageError(`unknown kind ${kind}; choose from ${KINDS.join(", ")}`);
        }
        args.kind = kind;
        kindSeen = true;
        break;
      }
      case "--input":
        args.inputs.push(next());
        break;
      case "--output":
        args.output = next();
        break;
      case "--dump-plotdata":
        args.dumpPlotdata = next();
        break;
      case "--column":
        args.column = next();
        break;
      case "--direction":
        args.direction = Number(next());
        break;
      default:
        throw new UsageError(`unknown flag ${flag}`);
    }
  }
  if (!kindSeen || args.inputs.length === 0) {
    throw new UsageError("--kind and at least one --input are required");
  }
  if (!args.output && !args.dumpPlotdata) {
    throw new UsageError("nothing to do: pass --output and/or --dump-plotdata");
  }
  return args;
}

export function main(argv: string[]): number {
  let args: CliArgs;
  try {
    args = parseArgs(argv);
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`usage error: ${err.message}`);
      return 2;
    }
    throw err;
  }
  try {
    const files = args.inputs.map((path) => parseDataFile(readFileSync(path, "utf-8")));
    const options: RenderOptions = {
      kind: args.kind,
      column: args.column,
      direction: args.direction,
    };
    const result = render(files, options);
    if (args.output) {
      writeFileSync(args.output, result.svg + "\n", "utf-8");
      console.log(`wrote ${args.output}`);
    }
    if (args.dumpPlotdata) {
      writeFileSync(args.dumpPlotdata, result.plotData, "utf-8");
      console.log(`wrote ${args.dumpPlotdata}`);
    }
    return 0;
  } catch (err) {
    if (err instanceof CsvFormatError || (err as NodeJS.ErrnoException).code === "ENOENT") {
      console.error(`input error: ${(err as Error).message}`);
      return 1;
    }
    throw err;
  }
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("plotkit")) {
  process.exit(main(process.argv.slice(2)));
}
