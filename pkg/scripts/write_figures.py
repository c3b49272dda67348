"""Write the figure 2, 3, 4 and 6 datasets as CSV into a directory."""
import argparse
import io
import sys
from pathlib import Path

from thzcoexist import figures
from thzcoexist.cli import run

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("outdir", nargs="?", default="figure_data")
args = parser.parse_args()

outdir = Path(args.outdir)
outdir.mkdir(parents=True, exist_ok=True)
for n in figures.AVAILABLE:
    path = outdir / f"figure{n}.csv"
    code = run(["figure", str(n), "--out", str(path)], io.StringIO(), sys.stderr)
    if code:
        sys.exit(code)
    print(f"wrote {path}")
