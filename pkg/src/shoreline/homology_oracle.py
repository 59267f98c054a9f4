"""Brute-force Betti numbers over GF(2).

This is the ground truth the persistence engine is checked against, so it shares no
code with it: every call builds the boundary matrices from scratch and ranks them by
Gaussian elimination on bit-packed columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .simplicial import MalformedInput, SimplicialComplex


@dataclass(frozen=True)
class BettiVector:
    by_dim: dict[int, int] = field(default_factory=dict)

    def __getitem__(self, p: int) -> int:
        return self.by_dim.get(p, 0)

    def as_tuple(self, lo: int = 0, hi: int | None = None) -> tuple[int, ...]:
        if hi is None:
            hi = max((p for p, r in self.by_dim.items() if r), default=lo)
        return tuple(self[p] for p in range(lo, hi + 1))

    def nonzero(self) -> dict[int, int]:
        return {p: r for p, r in sorted(self.by_dim.items()) if r}


def gf2_rank(columns: list[int]) -> int:
    """Rank of a GF(2) matrix given as integer bitmask columns."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in columns:
        while col:
            top = col.bit_length() - 1
            other = pivots.get(top)
            if other is None:
                pivots[top] = col
                rank += 1
                break
            col ^= other
    return rank


def boundary_ranks(k: SimplicialComplex) -> dict[int, int]:
    """rank of the boundary map C_p -> C_{p-1}, for every p >= 1."""
    by_dim: dict[int, list] = {}
    for s in k.simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    ranks = {}
    for p in range(1, k.dim + 1):
        rows = {s: i for i, s in enumerate(sorted(by_dim.get(p - 1, ())))}
        cols = []
        for s in sorted(by_dim.get(p, ())):
            mask = 0
            for i in range(len(s)):
                mask |= 1 << rows[s[:i] + s[i + 1:]]
            cols.append(mask)
        ranks[p] = gf2_rank(cols)
    return ranks


def betti(k: SimplicialComplex) -> BettiVector:
    counts: dict[int, int] = {}
    for s in k.simplices:
        counts[len(s) - 1] = counts.get(len(s) - 1, 0) + 1
    ranks = boundary_ranks(k)
    out = {}
    for p in range(0, k.dim + 1):
        out[p] = counts.get(p, 0) - ranks.get(p, 0) - ranks.get(p + 1, 0)
    return BettiVector(out)


def reduced_betti(k: SimplicialComplex) -> BettiVector:
    if k.is_empty():
        return BettiVector({-1: 1})
    b = dict(betti(k).by_dim)
    b[0] -= 1
    b[-1] = 0
    return BettiVector(b)


def cone(k: SimplicialComplex, sub: SimplicialComplex) -> SimplicialComplex:
    """``k`` with a fresh apex coned over ``sub`` (an isolated apex if ``sub`` is empty)."""
    w = max(k.n_vertices, sub.n_vertices)
    coned = {(w,)} | {s + (w,) for s in sub.simplices}
    return SimplicialComplex(k.simplices | frozenset(coned), w + 1)


def relative_betti(k: SimplicialComplex, sub: SimplicialComplex) -> BettiVector:
    """Betti numbers of the pair, as reduced Betti numbers of k with a cone on sub."""
    if not sub.is_subcomplex_of(k):
        raise MalformedInput("sub is not a subcomplex of k")
    return reduced_betti(cone(k, sub))
