"""Run every check on seeded random decompositions and print a per-instance table.

    python3 scripts/run_corpus.py --dim 2 --count 20 --seed 0 --workers 4
"""

from __future__ import annotations

import sys

from shoreline.cli import main

if __name__ == "__main__":
    sys.exit(main(["corpus", *sys.argv[1:]]))
