#!/usr/bin/env python3
"""Regenerate every figure dataset as CSV (and optionally render SVGs).

Full-resolution grids take a while (the cavity-comparison slice alone runs
~480 dense solves of a 3136-dimensional superoperator, about ten minutes);
--fast produces structurally identical coarse grids in under two minutes.

Rendering requires the plotkit frontend to be built (npm run build in
frontend/); pass --render to produce SVGs next to the CSVs.
"""

from __future__ import annotations

import argparse
import subprocess
import sys
import time
from pathlib import Path

from magblock.cli import main as magblock_main

FIGURES = ("2a", "2b", "2c", "3a", "3b", "4", "5")

RENDER_JOBS = [
    ("fig2a.svg", "heatmap", ["fig2a.csv"], []),
    ("fig2b.svg", "heatmap", ["fig2b.csv"], []),
    ("fig2c.svg", "slice", ["fig2c.csv", "fig2c_reference.csv"], []),
    ("fig3a.svg", "heatmap", ["fig3a.csv"], ["--column", "contrast"]),
    ("fig3b.svg", "contrast", ["fig3b.csv"], []),
    ("fig4_spectra.svg", "spectra", ["fig4_spectra.csv"], []),
    ("fig4_g2.svg", "slice", ["fig4_g2.csv"], []),
    ("fig5.svg", "slice", ["fig5_two_mode.csv", "fig5_three_mode.csv"], []),
]


def render_all(out_dir: Path) -> None:
    cli = Path(__file__).resolve().parents[1] / "frontend" / "dist" / "cli.js"
    if not cli.exists():
        sys.exit(f"frontend not built: {cli} missing (run npm run build in frontend/)")
    for svg_name, kind, inputs, extra in RENDER_JOBS:
        argv = ["node", str(cli), "render", "--kind", kind]
        for name in inputs:
            argv += ["--input", str(out_dir / name)]
        argv += ["--output", str(out_dir / svg_name)] + extra
        subprocess.run(argv, check=True)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="out/figures")
    parser.add_argument("--fast", action="store_true", help="coarse grids")
    parser.add_argument("--threads", type=int, help="solver threads per sweep")
    parser.add_argument("--render", action="store_true", help="also render SVGs")
    parser.add_argument("--only", nargs="*", choices=FIGURES, help="subset of figures")
    args = parser.parse_args()

    for name in args.only or FIGURES:
        argv = ["figure", name, "--out-dir", args.out_dir]
        if args.fast:
            argv.append("--fast")
        if args.threads:
            argv += ["--threads", str(args.threads)]
        start = time.perf_counter()
        code = magblock_main(argv)
        if code != 0:
            sys.exit(code)
        print(f"figure {name}: {time.perf_counter() - start:.1f}s")

    if args.render:
        render_all(Path(args.out_dir))


if __name__ == "__main__":
    main()
