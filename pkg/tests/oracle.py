"""Brute-force diagrams from the rank function, independent of column reduction.

The multiplicity of a pair (i, j) in dimension p is the inclusion-exclusion
  r(i, j-1) - r(i-1, j-1) - r(i, j) + r(i-1, j)
where r(a, b) is the rank of H_p(K_a) -> H_p(K_b) and K_a is the prefix of the
first a+1 cells of the extended filtration.
"""

from __future__ import annotations

from functools import lru_cache

from shoreline.filtration import extended_filtration
from shoreline.persistence import Dot, PersistenceDiagram


def _rank(vectors) -> int:
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def _kernel(columns: list[int], n_cols: int) -> list[int]:
    """Kernel of the map sending unit vector e_c to columns[c], as bitsets over column ids."""
    rows: list[tuple[int, int]] = []  # (image, combination)
    kernel = []
    for c in range(n_cols):
        img, comb = columns[c], 1 << c
        for top_img, top_comb in rows:
            if img >> (top_img.bit_length() - 1) & 1:
                img ^= top_img
                comb ^= top_comb
        if img:
            rows.append((img, comb))
            rows.sort(key=lambda r: -r[0].bit_length())
        else:
            kernel.append(comb)
    return kernel


def brute_force_diagram(k, f, n=None) -> PersistenceDiagram:
    filt = extended_filtration(k, f)
    cells = filt.ordered_cells
    apex = max(k.vertices(), default=-1) + 1
    keys = []
    for c in cells:
        vs = tuple(c.simplex)
        if c.pass_.value == "desc":
            vs = vs + (apex,)
        keys.append(frozenset(vs))
    index = {s: i for i, s in enumerate(keys)}
    dims = [len(s) - 1 for s in keys]
    bnd = []
    for s in keys:
        col = 0
        if len(s) > 1:
            for v in s:
                col |= 1 << index[s - {v}]
        bnd.append(col)
    N = len(cells)

    @lru_cache(maxsize=None)
    def cycles(a: int, p: int) -> tuple[int, ...]:
        ids = [i for i in range(a + 1) if dims[i] == p]
        zs = _kernel([bnd[i] for i in ids], len(ids))
        out = []
        for z in zs:
            v = 0
            for pos, i in enumerate(ids):
                if z >> pos & 1:
                    v |= 1 << i
            out.append(v)
        return tuple(out)

    @lru_cache(maxsize=None)
    def boundaries(b: int, p: int) -> tuple[int, ...]:
        return tuple(bnd[i] for i in range(b + 1) if dims[i] == p + 1)

    @lru_cache(maxsize=None)
    def r(a: int, b: int, p: int) -> int:
        if a < 0:
            return 0
        bs = boundaries(b, p)
        return _rank(list(cycles(a, p)) + list(bs)) - _rank(bs)

    dots = []
    for i in range(N):
        p = dims[i]
        for j in range(i + 1, N):
            if dims[j] != p + 1:
                continue
            mu = r(i, j - 1, p) - r(i - 1, j - 1, p) - r(i, j, p) + r(i - 1, j, p)
            for _ in range(mu):
                c, d = cells[i], cells[j]
                dots.append(Dot(c.dim, c.value, c.pass_, d.value, d.pass_))
    return PersistenceDiagram(tuple(dots), n, "brute force")
