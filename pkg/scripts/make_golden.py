#!/usr/bin/env python3
"""Regenerate the versioned golden CSVs for the ideal-mirror scenes.

Run from the repo root after any deliberate kernel change, then inspect the
diff before committing:

    python3 scripts/make_golden.py

Only the ideal-limit scenes are versioned; their values are pinned by closed
forms (pi^2/240 a^-4 and the -7/8 Boyer ratio), so a diff here means the
kernel moved, not just a tolerance.
"""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
PAIRS = [
    ("configs/ideal_mirrors_sweep.ini", "golden/ideal_mirrors_sweep.csv"),
    ("configs/mixed_mirrors_sweep.ini", "golden/mixed_mirrors_sweep.csv"),
]


def main() -> int:
    for config, out in PAIRS:
        cmd = [sys.executable, "-m", "casimir_slabs", "sweep",
               "--config", str(ROOT / config), "--out", str(ROOT / out)]
        print("+", " ".join(cmd[2:]))
        res = subprocess.run(cmd)
        if res.returncode != 0:
            print(f"failed with exit {res.returncode}", file=sys.stderr)
            return res.returncode
        (ROOT / (out + ".run.json")).unlink()  # records are not versioned
    return 0


if __name__ == "__main__":
    sys.exit(main())
