"""Run every verification scenario with default parameters and write reports.

    python3 scripts/run_all.py [--out-dir reports] [--seed 0]
"""

import sys

from octoclifford.cli import main

if __name__ == "__main__":
    sys.exit(main(["verify", "--suite", "all", *sys.argv[1:]]))
