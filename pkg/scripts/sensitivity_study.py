#!/usr/bin/env python3
"""Window-size and moving-average sensitivity study across datasets.

Runs the forecast pipeline over a grid of window sizes (default 4..12) and
moving-average lengths (default 1..6), one column per dataset, and writes
both tables as CSV next to printing them.

Example:
    python3 scripts/sensitivity_study.py data-synth/changepoint.txt data-synth/go_sim.txt
"""

import argparse
from pathlib import Path

from tsarf.cli import main as tsarf_main


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("inputs", nargs="+", help="dataset files, one table column each")
    parser.add_argument("--window-values", default="4..12")
    parser.add_argument("--ma-values", default="1..6")
    parser.add_argument("--outdir", default="out")
    args = parser.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    print("== window-size sensitivity (test PMSE) ==")
    rc = tsarf_main(
        [
            "sweep", *args.inputs,
            "--param", "window",
            "--values", args.window_values,
            "--output", str(outdir / "window_sweep.csv"),
        ]
    )
    if rc != 0:
        raise SystemExit(rc)

    print()
    print("== moving-average sensitivity (test PMSE) ==")
    rc = tsarf_main(
        [
            "sweep", *args.inputs,
            "--param", "ma",
            "--values", args.ma_values,
            "--output", str(outdir / "ma_sweep.csv"),
        ]
    )
    if rc != 0:
        raise SystemExit(rc)
    print(f"\ntables written to {outdir}/window_sweep.csv and {outdir}/ma_sweep.csv")


if __name__ == "__main__":
    main()
