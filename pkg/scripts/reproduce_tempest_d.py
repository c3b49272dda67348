"""Print the 165 GHz radiometer coexistence budget, modelled and with pinned gas."""
import io
import sys
from pathlib import Path

from thzcoexist.cli import run

CONFIGS = Path(__file__).resolve().parents[1] / "configs"

for name in ("tempest_d.cfg", "tempest_d_pinned_gas.cfg"):
    out = io.StringIO()
    code = run(["coexist", "--config", str(CONFIGS / name)], out, sys.stdout)
    if code:
        sys.exit(code)
    print()
