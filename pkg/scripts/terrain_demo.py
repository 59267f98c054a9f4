"""Heightmap island: diagram of the height on the land region, then the shore relation."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from shoreline import spaces
from shoreline.homology_oracle import betti
from shoreline.persistence import compute_diagram
from shoreline.simplicial import boundary_of_pure_complex
from shoreline.theorems import check_euclidean_shore

DEFAULT_MASK = Path(__file__).resolve().parent.parent / "data" / "island.txt"


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("mask", nargs="?", default=str(DEFAULT_MASK))
    args = ap.parse_args(argv)
    grid = spaces.read_mask(Path(args.mask).read_text())
    region = spaces.voxel_region(grid) if isinstance(grid[0][0], list) else spaces.terrain_region(grid)
    shore = boundary_of_pure_complex(region.a, region.n)
    print(f"land: betti {betti(region.a).as_tuple(0, region.n)}, shore: betti {betti(shore).as_tuple(0, region.n)}")
    print("Dgm(e|land):", ", ".join(map(str, compute_diagram(region.a, region.e).without_diagonal())))
    print("Dgm(e|shore):", ", ".join(map(str, compute_diagram(shore, region.e).without_diagonal())))
    rep = check_euclidean_shore(region.a, region.e, region.n, region.box)
    print(rep.summary())
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
