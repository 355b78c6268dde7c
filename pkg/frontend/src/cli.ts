#!/usr/bin/env node
/**
 * render_figs <csv> --cols <a,b> --out <file.svg> [--title T] [--xlabel X] [--ylabel Y]
 *
 * Thin CLI over the renderer; consumes the effpot harness CSV schema.
 */

import { render } from "./render.js";

function usage(): never {
  process.stderr.write(
    "usage: render_figs <csv> --cols <a,b> --out <file.svg> [--title T] [--xlabel X] [--ylabel Y]\n",
  );
  process.exit(2);
}

export function main(argv: string[]): number {
  const args = [...argv];
  const positional: string[] = [];
  const opts: Record<string, string> = {};
  while (args.length > 0) {
    const a = args.shift()!;
    if (a.startsWith("--")) {
      const key = a.slice(2);
      const val = args.shift();
      if (val === undefined) usage();
      opts[key] = val;
    } else {
      positional.push(a);
    }
  }
  if (positional.length !== 1 || !opts["cols"] || !opts["out"]) usage();
  try {
    render({
      input: positional[0],
      columns: opts["cols"].split(",").map((c) => c.trim()),
      output: opts["out"],
      title: opts["title"],
      xlabel: opts["xlabel"],
      ylabel: opts["ylabel"],
    });
  } catch (err) {
    process.stderr.write(`render_figs: ${(err as Error).message}\n`);
    return 1;
  }
  return 0;
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
