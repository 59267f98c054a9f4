"""The annulus-and-caps split of the 2-sphere: where the plain reflection relation breaks."""

from __future__ import annotations

import sys

from shoreline.theorems import demonstrate_counterexample


def main() -> int:
    rep = demonstrate_counterexample()
    first = rep.details[0]
    print("a, b, c, d =", ", ".join(f"{first['values'][k]:.6f}" for k in "abcd"))
    print("Dgm(f|M):", ", ".join(first["m_dots"]))
    print("Dgm(f|U):", ", ".join(rep.details[1]["u_dots"]))
    print("Dgm(f|U) + its reflection differs from Dgm(f|M):", rep.details[2]["mismatch"])
    print(rep.summary())
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
