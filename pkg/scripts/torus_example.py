"""Betti numbers of the two solid tori and their shared torus, whole and at the half level."""

from __future__ import annotations

from shoreline.diagram_ops import reduced_diagram, reflect
from shoreline.filtration import sublevel_complex, superlevel_complex
from shoreline.homology_oracle import betti, relative_betti
from shoreline.persistence import restrict_and_compute
from shoreline.spaces import solid_torus_decomposition


def main() -> None:
    inst = solid_torus_decomposition()
    dec, f, t = inst.dec, inst.f, inst.extra["mid_t"]
    print(f"{inst.label}: {dec.ambient.n_vertices} vertices, {len(dec.ambient)} simplices, t = {t:.6f}")
    for name in "UVM":
        k = dec.part(name)
        print(f"  {name}: betti {betti(k).as_tuple(0, 3)}  "
              f"sublevel {betti(sublevel_complex(k, f, t)).as_tuple(0, 3)}  "
              f"pair {relative_betti(k, superlevel_complex(k, f, t)).as_tuple(0, 3)}")
    lo, hi = min(f.on(dec.ambient)), max(f.on(dec.ambient))
    for name in "UV":
        print(f"rDgm(f|{name}):")
        for d in reduced_diagram(restrict_and_compute(dec, f, name), lo, hi).without_diagonal():
            print(f"  {d}")
    print("reflected rDgm(f|U):")
    for d in reflect(reduced_diagram(restrict_and_compute(dec, f, "U"), lo, hi), dec.n).without_diagonal():
        print(f"  {d}")


if __name__ == "__main__":
    main()
