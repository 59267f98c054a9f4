"""Simplicial complexes and the PL constructions used to build spheres and decompositions.

Simplices are plain sorted tuples of non-negative vertex ids. Complexes are immutable
and always face-closed.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

Simplex = tuple[int, ...]


class MalformedInput(ValueError):
    """Raised for simplices with repeated or negative vertex ids."""


class ConstructionError(RuntimeError):
    """Raised when a PL construction fails its postconditions."""


def simplex(vertices: Iterable[int]) -> Simplex:
    vs = tuple(sorted(int(v) for v in vertices))
    if not vs:
        raise MalformedInput("the empty simplex is not representable")
    if vs[0] < 0:
        raise MalformedInput(f"negative vertex id in {vs}")
    if any(a == b for a, b in zip(vs, vs[1:])):
        raise MalformedInput(f"duplicate vertex in {vs}")
    return vs


def faces(s: Simplex) -> Iterator[Simplex]:
    """Codimension-one faces of ``s`` (nothing for a vertex)."""
    if len(s) > 1:
        for i in range(len(s)):
            yield s[:i] + s[i + 1:]


@dataclass(frozen=True)
class SimplicialComplex:
    simplices: frozenset[Simplex]
    n_vertices: int

    def __post_init__(self):
        for s in self.simplices:
            if s[-1] >= self.n_vertices:
                raise MalformedInput(f"vertex id in {s} exceeds n_vertices={self.n_vertices}")

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(sorted(self.simplices, key=lambda s: (len(s), s)))

    def __contains__(self, s) -> bool:
        return s in self.simplices

    @cached_property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def is_empty(self) -> bool:
        return not self.simplices

    def vertices(self) -> list[int]:
        return sorted(s[0] for s in self.simplices if len(s) == 1)

    def of_dim(self, p: int) -> list[Simplex]:
        return sorted(s for s in self.simplices if len(s) == p + 1)

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dim + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return tuple(counts)

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * c for p, c in enumerate(self.f_vector()))

    def maximal(self) -> list[Simplex]:
        covered = set()
        for s in self.simplices:
            covered.update(faces(s))
        return sorted((s for s in self.simplices if s not in covered), key=lambda s: (len(s), s))

    def is_subcomplex_of(self, other: SimplicialComplex) -> bool:
        return self.simplices <= other.simplices

    def union(self, other: SimplicialComplex) -> SimplicialComplex:
        return SimplicialComplex(self.simplices | other.simplices, max(self.n_vertices, other.n_vertices))

    def intersection(self, other: SimplicialComplex) -> SimplicialComplex:
        return SimplicialComplex(self.simplices & other.simplices, max(self.n_vertices, other.n_vertices))

    def full_subcomplex(self, vertices: Iterable[int]) -> SimplicialComplex:
        keep = set(vertices)
        return SimplicialComplex(
            frozenset(s for s in self.simplices if keep.issuperset(s)), self.n_vertices
        )

    def is_full(self, sub: SimplicialComplex) -> bool:
        """True if ``sub`` contains every simplex of self spanned by its vertices."""
        return self.full_subcomplex(sub.vertices()).simplices == sub.simplices

    def link(self, s: Simplex) -> SimplicialComplex:
        """Link of a simplex: the tau disjoint from s with tau | s in the complex."""
        ss = set(s)
        out = set()
        for t in self.simplices:
            if len(t) > len(s) and ss.issubset(t):
                rest = tuple(v for v in t if v not in ss)
                out.add(rest)
        return SimplicialComplex(frozenset(out), self.n_vertices)

    def star_of_vertex(self, v: int) -> list[Simplex]:
        return [s for s in self.simplices if v in s]

    def components(self) -> list[SimplicialComplex]:
        """Connected components, ordered by smallest vertex id."""
        parent = {v: v for v in self.vertices()}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in self.simplices:
            if len(s) == 2:
                a, b = find(s[0]), find(s[1])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, set[Simplex]] = defaultdict(set)
        for s in self.simplices:
            groups[find(s[0])].add(s)
        return [SimplicialComplex(frozenset(groups[r]), self.n_vertices) for r in sorted(groups)]

    @classmethod
    def empty(cls, n_vertices: int = 0) -> SimplicialComplex:
        return cls(frozenset(), n_vertices)


def close_faces(maximal_simplices: Iterable[Iterable[int]], n_vertices: int | None = None) -> SimplicialComplex:
    """Smallest face-closed complex containing the given simplices."""
    out: set[Simplex] = set()
    for raw in maximal_simplices:
        s = simplex(raw)
        if s in out:
            continue
        for k in range(1, len(s) + 1):
            out.update(combinations(s, k))
    nv = max((s[-1] for s in out), default=-1) + 1
    if n_vertices is not None:
        if n_vertices < nv:
            raise MalformedInput(f"n_vertices={n_vertices} too small for vertex id {nv - 1}")
        nv = n_vertices
    return SimplicialComplex(frozenset(out), nv)


def join(k1: SimplicialComplex, k2: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join; k2's vertex ids are shifted by ``k1.n_vertices``."""
    if k1.is_empty() or k2.is_empty():
        raise MalformedInput("join needs two nonempty complexes")
    shift = k1.n_vertices
    left = list(k1.simplices) + [()]
    right = [tuple(v + shift for v in t) for t in k2.simplices] + [()]
    out = frozenset(a + b for a in left for b in right if a or b)
    return SimplicialComplex(out, k1.n_vertices + k2.n_vertices)


def barycentric_subdivision(k: SimplicialComplex) -> tuple[SimplicialComplex, list[Simplex]]:
    """First barycentric subdivision.

    Returns the subdivided complex and the carrier list: new vertex ``i`` is the
    barycenter of ``carriers[i]``. New ids follow the (dim, lexicographic) order of
    the original simplices.
    """
    carriers = list(k)
    index = {s: i for i, s in enumerate(carriers)}
    chains: dict[Simplex, list[tuple[int, ...]]] = {}
    out: list[Simplex] = []
    for s in carriers:
        # chains with top element s; ids increase along a chain since faces sort first
        top = index[s]
        own = [(top,)]
        for r in range(1, len(s)):
            for t in combinations(s, r):
                own.extend(c + (top,) for c in chains[t])
        chains[s] = own
        out.extend(own)
    return SimplicialComplex(frozenset(out), len(carriers)), carriers


def is_closed_manifold(k: SimplicialComplex, n: int) -> bool:
    return not manifold_violations(k, n)


def manifold_violations(k: SimplicialComplex, n: int) -> list[str]:
    """Reasons ``k`` fails to be a closed combinatorial n-manifold (empty if it is one)."""
    return [msg for _, msg in manifold_defects(k, n)]


def manifold_defects(k: SimplicialComplex, n: int) -> list[tuple[Simplex | None, str]]:
    """Like :func:`manifold_violations`, paired with the offending simplex when there is one."""
    from .homology_oracle import betti

    if n < 0:
        raise ValueError("n must be non-negative")
    if k.is_empty():
        return [(None, "empty complex")]
    if k.dim != n:
        return [(None, f"dimension {k.dim} != {n}")]
    bad = [s for s in k.maximal() if len(s) != n + 1]
    if bad:
        return [(bad[0], f"not pure: maximal simplex {bad[0]}")]
    if n == 0:
        return []
    cofaces: dict[Simplex, int] = defaultdict(int)
    for s in k.simplices:
        if len(s) == n + 1:
            for f in faces(s):
                cofaces[f] += 1
    problems = [(r, f"ridge {r} has {c} cofaces") for r, c in sorted(cofaces.items()) if c != 2]
    if problems:
        return problems
    sphere = {0: 1, n - 1: 1} if n > 1 else {0: 2}
    links = _vertex_links(k)
    for v in k.vertices():
        got = betti(links[v]).nonzero()
        if got != sphere:
            problems.append(((v,), f"vertex {v} link has Betti numbers {got}"))
    return problems


def _vertex_links(k: SimplicialComplex) -> dict[int, SimplicialComplex]:
    acc: dict[int, set[Simplex]] = defaultdict(set)
    for s in k.simplices:
        if len(s) > 1:
            for i, v in enumerate(s):
                acc[v].add(s[:i] + s[i + 1:])
    return {v: SimplicialComplex(frozenset(acc[v]), k.n_vertices) for v in k.vertices()}


def boundary_of_pure_complex(k: SimplicialComplex, n: int) -> SimplicialComplex:
    """Face closure of the n-simplices with exactly one (n+1)-dimensional coface."""
    maximal = k.maximal()
    if not maximal or any(len(s) != n + 2 for s in maximal):
        raise MalformedInput(f"complex is not pure of dimension {n + 1}")
    counts: dict[Simplex, int] = defaultdict(int)
    for s in maximal:
        for f in faces(s):
            counts[f] += 1
    return close_faces((f for f, c in counts.items() if c == 1), k.n_vertices)


@dataclass(frozen=True)
class Decomposition:
    """A sphere split as ambient = u | v with u & v = m, a closed manifold."""

    ambient: SimplicialComplex
    u: SimplicialComplex
    v: SimplicialComplex
    m: SimplicialComplex
    ambient_manifold_dim: int
    carriers: tuple = field(default=(), compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.ambient_manifold_dim - 1

    def validate(self) -> None:
        if (self.u.simplices | self.v.simplices) != self.ambient.simplices:
            raise ConstructionError("u | v != ambient")
        if (self.u.simplices & self.v.simplices) != self.m.simplices:
            raise ConstructionError("u & v != m")
        problems = manifold_violations(self.m, self.n)
        if problems:
            raise ConstructionError(f"m is not a closed {self.n}-manifold: {problems[0]}")

    def part(self, which: str) -> SimplicialComplex:
        return {"U": self.u, "V": self.v, "M": self.m, "S": self.ambient}[which.upper()]

    def swapped(self) -> Decomposition:
        return Decomposition(self.ambient, self.v, self.u, self.m, self.ambient_manifold_dim, self.carriers)


def derived_neighborhood(
    ambient: SimplicialComplex,
    l: SimplicialComplex,
    ambient_manifold_dim: int,
    subdivisions: int | None = None,
) -> Decomposition:
    """Split a combinatorial sphere along the frontier of a derived neighborhood of ``l``.

    ``U`` is the full subcomplex of the final subdivision spanned by barycenters of
    simplices (of the previous level) that meet ``l``; ``V`` is the closure of the rest.
    One subdivision suffices when ``l`` is full in ``ambient``; otherwise two are used.
    """
    if l.is_empty() or not l.is_subcomplex_of(ambient) or l.simplices == ambient.simplices:
        raise ConstructionError("l must be a nonempty proper subcomplex of ambient")
    if subdivisions is None:
        subdivisions = 1 if ambient.is_full(l) else 2
    if subdivisions < 1:
        raise ValueError("need at least one subdivision")

    k, sub = ambient, l
    carriers = []
    for _ in range(subdivisions - 1):
        k, car = barycentric_subdivision(k)
        carriers.append(car)
        sub = SimplicialComplex(frozenset(s for s in k.simplices if all(car[v] in sub.simplices for v in s)), k.n_vertices)
    k, car = barycentric_subdivision(k)
    carriers.append(car)

    lv = set(sub.vertices())
    near = [i for i, c in enumerate(car) if lv.intersection(c)]
    u = k.full_subcomplex(near)
    top = ambient_manifold_dim + 1
    rest = [s for s in k.simplices if len(s) == top and s not in u.simplices]
    v = close_faces(rest, k.n_vertices)
    m = u.intersection(v)
    dec = Decomposition(k, u, v, m, ambient_manifold_dim, tuple(carriers))
    dec.validate()
    return dec


def read_complex(text: str) -> SimplicialComplex:
    """Parse the complex text format: ``# comment``, optional ``dim <d>``, one simplex per line."""
    rows = []
    declared = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("dim"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].lstrip("-").isdigit():
                raise MalformedInput(f"line {lineno}: bad dim header {line!r}")
            declared = int(parts[1])
            continue
        try:
            ids = [int(tok) for tok in line.split()]
            rows.append(simplex(ids))
        except ValueError as exc:
            raise MalformedInput(f"line {lineno}: {exc}") from None
    k = close_faces(rows)
    if declared is not None and not k.is_empty() and k.dim != declared:
        raise MalformedInput(f"dim header says {declared} but complex has dimension {k.dim}")
    return k


def write_complex(k: SimplicialComplex, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"dim {k.dim}")
    lines.extend(" ".join(map(str, s)) for s in k.maximal())
    return "\n".join(lines) + "\n"
