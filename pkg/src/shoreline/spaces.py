"""Generators for spheres, decompositions, height functions and Euclidean regions."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import NamedTuple, Sequence

from .filtration import VertexFunction, is_pl_perfect_morse, morse_report, normalize, perturb
from .homology_oracle import betti
from .simplicial import (
    ConstructionError,
    Decomposition,
    MalformedInput,
    SimplicialComplex,
    barycentric_subdivision,
    boundary_of_pure_complex,
    close_faces,
    derived_neighborhood,
    join,
    manifold_defects,
)

Coords = list[tuple[float, ...]]


@dataclass(frozen=True)
class GeneratedInstance:
    dec: Decomposition
    f: VertexFunction
    n: int
    label: str
    seed: int | None = None
    extra: dict = field(default_factory=dict, compare=False)


def cross_polytope_sphere(dim: int) -> tuple[SimplicialComplex, Coords]:
    """Boundary of the (dim+1)-dimensional cross-polytope; vertex 2i is +e_i, 2i+1 is -e_i."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    d = dim + 1
    tops = [[2 * i + s for i, s in enumerate(signs)] for signs in product((0, 1), repeat=d)]
    coords = []
    for v in range(2 * d):
        c = [0.0] * d
        c[v // 2] = -1.0 if v % 2 else 1.0
        coords.append(tuple(c))
    return close_faces(tops, 2 * d), coords


def subdivided_coords(coords: Coords, carriers: Sequence) -> Coords:
    """Barycenter coordinates for the vertices of a barycentric subdivision."""
    out = []
    for s in carriers:
        pts = [coords[v] for v in s]
        out.append(tuple(sum(x) / len(pts) for x in zip(*pts)))
    return out


def generic_direction(dim: int, axis: int = -1, tilt: float | Sequence[float] = 0.0) -> tuple[float, ...]:
    """Unit vector along ``axis`` nudged by ``tilt``.

    A scalar tilt is spread over the other axes with incommensurable weights so
    that heights of distinct barycenters stay distinct.
    """
    axis %= dim
    v = [0.0] * dim
    v[axis] = 1.0
    if isinstance(tilt, (int, float)):
        others = [i for i in range(dim) if i != axis]
        for j, i in enumerate(others):
            v[i] += tilt * math.sqrt((2, 3, 5, 7, 11)[j % 5]) / (j + 1)
    else:
        if len(tilt) != dim:
            raise ValueError("tilt vector has the wrong length")
        v = [a + b for a, b in zip(v, tilt)]
    r = math.sqrt(sum(x * x for x in v))
    return tuple(x / r for x in v)


def height_function(coords: Coords, axis: int | Sequence[float] = -1, tilt: float | Sequence[float] = 0.0) -> VertexFunction:
    """Inner product with a direction, made generic and normalized to [0, 1].

    ``axis`` is an axis index or an explicit direction vector.
    """
    dim = len(coords[0])
    if isinstance(axis, int):
        d = generic_direction(dim, axis, tilt)
    else:
        d = tuple(axis)
    f = normalize(VertexFunction(tuple(sum(a * b for a, b in zip(c, d)) for c in coords)))
    if len(set(f.values)) != len(f.values):
        return perturb(f)
    return f


def _circle(p: int) -> SimplicialComplex:
    return close_faces([[i, (i + 1) % p] for i in range(p)], p)


def _checked(dec: Decomposition, f: VertexFunction, label: str, seed=None, **extra) -> GeneratedInstance:
    rep = morse_report(dec.ambient, f, dec.ambient_manifold_dim)
    if not rep.ok:
        raise ConstructionError(f"{label}: height is not perfect Morse ({'; '.join(rep.problems)})")
    return GeneratedInstance(dec, f, dec.n, label, seed, dict(extra))


def solid_torus_decomposition(p: int = 5, q: int = 3, tilt: float = 0.05) -> GeneratedInstance:
    """S^3 as a join of two polygons, split into two solid tori around the first one."""
    if p < 3 or q < 3:
        raise ValueError("p and q must be at least 3")
    s3 = join(_circle(p), _circle(q))
    coords = [(math.cos(2 * math.pi * i / p), math.sin(2 * math.pi * i / p), 0.0, 0.0) for i in range(p)]
    coords += [(0.0, 0.0, math.cos(2 * math.pi * j / q), math.sin(2 * math.pi * j / q)) for j in range(q)]
    l = close_faces([[i, (i + 1) % p] for i in range(p)], s3.n_vertices)
    dec = derived_neighborhood(s3, l, 3)
    sub = subdivided_coords(coords, dec.carriers[-1])
    # min on the first circle (inside U), max on the second (inside V)
    direction = (-1.0, tilt * math.sqrt(2), 1.0 + tilt * math.sqrt(5), tilt * math.sqrt(3))
    f = height_function(sub, direction)
    for part, want in (("U", (1, 1, 0, 0)), ("V", (1, 1, 0, 0)), ("M", (1, 2, 1))):
        got = betti(dec.part(part)).as_tuple(0, len(want) - 1)
        if got != want:
            raise ConstructionError(f"solid torus: betti({part}) = {got}, expected {want}")
    # regular value halfway up the core circle of U
    core = [f[i] for i, c in enumerate(dec.carriers[-1]) if len(c) == 1 and c[0] < p]
    target = (min(core) + max(core)) / 2
    vals = sorted(f.on(dec.ambient))
    mids = [(a + b) / 2 for a, b in zip(vals, vals[1:])]
    mid_t = min(mids, key=lambda t: abs(t - target))
    return _checked(dec, f, f"solid-torus-{p}-{q}", mid_t=mid_t)


def disk_pair_decomposition(tilt: float = 0.1) -> GeneratedInstance:
    """Octahedron split around an equatorial vertex: two disks, both poles in V."""
    s2, coords = cross_polytope_sphere(2)
    l = close_faces([[0]], s2.n_vertices)
    dec = derived_neighborhood(s2, l, 2)
    f = height_function(subdivided_coords(coords, dec.carriers[-1]), 2, tilt)
    return _checked(dec, f, "disk-pair")


LATITUDES = (-50.0, -20.0, 20.0, 50.0)


def annulus_counterexample(longitudes: int = 6, alpha: float = 50.0, gamma: float = 7.0) -> GeneratedInstance:
    """Latitude-longitude 2-sphere split into an equatorial band (U) and two caps (V).

    The height direction is tilted by ``alpha`` degrees so the two boundary
    circles of the band have interleaved ranges [a, c] and [b, d].
    """
    nl = longitudes
    south, north = 0, 1
    ring = lambda r, j: 2 + r * nl + (j % nl)  # noqa: E731
    tris, band = [], []
    for j in range(nl):
        tris.append([south, ring(0, j), ring(0, j + 1)])
        tris.append([north, ring(3, j), ring(3, j + 1)])
        for r in range(3):
            a, b, c, d = ring(r, j), ring(r, j + 1), ring(r + 1, j), ring(r + 1, j + 1)
            pair = [[a, b, d], [a, c, d]]
            tris.extend(pair)
            if r == 1:
                band.extend(pair)
    n_vertices = 2 + 4 * nl
    s2 = close_faces(tris, n_vertices)
    u = close_faces(band, n_vertices)
    v = close_faces([t for t in tris if t not in band], n_vertices)
    dec = Decomposition(s2, u, v, u.intersection(v), 2)
    dec.validate()

    coords = [(0.0, 0.0, -1.0), (0.0, 0.0, 1.0)]
    for lat in LATITUDES:
        phi = math.radians(lat)
        for j in range(nl):
            th = 2 * math.pi * j / nl
            coords.append((math.cos(phi) * math.cos(th), math.cos(phi) * math.sin(th), math.sin(phi)))
    al, ga = math.radians(alpha), math.radians(gamma)
    raw = [x * math.sin(al) * math.cos(ga) + y * math.sin(al) * math.sin(ga) + z * math.cos(al) for x, y, z in coords]
    f = normalize(VertexFunction(tuple(raw)))
    lower = [f[ring(1, j)] for j in range(nl)]
    upper = [f[ring(2, j)] for j in range(nl)]
    a, c = min(lower), max(lower)
    b, d = min(upper), max(upper)
    if not a < b < c < d:
        raise ConstructionError(f"ranges do not interleave: a={a}, b={b}, c={c}, d={d}")
    return _checked(dec, f, "annulus-counterexample", a=a, b=b, c=c, d=d)


def random_decomposition(dim: int, seed: int, max_tries: int = 32) -> GeneratedInstance:
    """Derived neighborhood of a random full subcomplex of a cross-polytope sphere."""
    if dim not in (2, 3):
        raise ValueError("dim must be 2 or 3")
    base, coords = cross_polytope_sphere(dim)
    if dim == 2:
        base, car = barycentric_subdivision(base)
        coords = subdivided_coords(coords, car)
    nv = base.n_vertices
    last = None
    for attempt in range(max_tries):
        rng = random.Random(f"{seed}:{dim}:{attempt}")
        picked = set(rng.sample(range(nv), rng.randint(1, max(1, nv // 3))))
        if rng.random() < 0.3:
            w = rng.choice(sorted(picked))
            picked.update(v for s in base.star_of_vertex(w) for v in s)
        if len(picked) >= nv - 1:
            continue
        l = base.full_subcomplex(picked)
        direction = [rng.gauss(0.0, 1.0) for _ in range(dim + 1)]
        try:
            dec = derived_neighborhood(base, l, dim)
            f = height_function(subdivided_coords(coords, dec.carriers[-1]), direction)
            return _checked(dec, f, f"random-{dim}-{seed}", seed, l_vertices=sorted(picked))
        except ConstructionError as exc:
            last = exc
    raise ConstructionError(f"random_decomposition(dim={dim}, seed={seed}) failed after {max_tries} tries: {last}")


def sphere_instance(dim: int, tilt: float = 0.1) -> tuple[SimplicialComplex, VertexFunction]:
    s, coords = cross_polytope_sphere(dim)
    f = height_function(coords, -1, tilt)
    if not is_pl_perfect_morse(s, f, dim):
        raise ConstructionError("cross-polytope height is not perfect Morse")
    return s, f


# Euclidean regions ---------------------------------------------------------


class Region(NamedTuple):
    a: SimplicialComplex
    e: VertexFunction
    n: int
    box: SimplicialComplex


def _as_grid(mask) -> list:
    return [_as_grid(row) if _is_seq(row) else bool(row) for row in mask]


def _is_seq(x) -> bool:
    return hasattr(x, "__len__") and not isinstance(x, (str, bytes))


def _region(shape: tuple[int, ...], marked: list[tuple[int, ...]], axis: int) -> Region:
    """Triangulate a padded box of unit cells; A is the closure of the marked cells."""
    if not marked:
        raise MalformedInput("mask marks no cells")
    dim = len(shape)
    size = [s + 2 for s in shape]  # one padding cell on each side
    npts = [s + 1 for s in size]

    def vid(p):
        i = 0
        for x, m in zip(p, npts):
            i = i * m + x
        return i

    def cell_simplices(cell):
        out = []
        for perm in permutations(range(dim)):
            p = list(cell)
            s = [vid(p)]
            for ax in perm:
                p[ax] += 1
                s.append(vid(p))
            out.append(sorted(s))
        return out

    cells = list(product(*(range(s) for s in size)))
    marked_set = {tuple(x + 1 for x in c) for c in marked}
    total = math.prod(npts)
    box = close_faces([s for c in cells for s in cell_simplices(c)], total)
    a = close_faces([s for c in cells if c in marked_set for s in cell_simplices(c)], total)
    bd = boundary_of_pure_complex(a, dim - 1)
    problems = manifold_defects(bd, dim - 1)
    if problems:
        where, msg = problems[0]
        pts = list(product(*(range(m) for m in npts)))
        loc = f" near grid point {tuple(x - 1 for x in pts[where[0]])}" if where else ""
        raise MalformedInput(f"region boundary is pinched{loc}: {msg}")
    # exactly linear and injective on grid points: the chosen axis dominates
    order = [axis] + [i for i in range(dim) if i != axis]
    weights = [0] * dim
    scale = 1
    for ax in reversed(order):
        weights[ax] = scale
        scale *= npts[ax] + 1
    vals = [0.0] * total
    for p in product(*(range(m) for m in npts)):
        vals[vid(p)] = float(sum(w * x for w, x in zip(weights, p)))
    return Region(a, VertexFunction(tuple(vals)), dim - 1, box)


def terrain_region(grid, height_axis: str = "y") -> Region:
    """Planar region from a boolean mask (rows are y, columns are x)."""
    rows = _as_grid(grid)
    if not rows or not all(len(r) == len(rows[0]) for r in rows):
        raise MalformedInput("mask must be a non-empty rectangle")
    marked = [(i, j) for i, r in enumerate(rows) for j, x in enumerate(r) if x]
    axis = {"y": 0, "x": 1}[height_axis]
    return _region((len(rows), len(rows[0])), marked, axis)


def voxel_region(grid, height_axis: str = "z") -> Region:
    """Solid region from a 3D boolean array indexed [z][y][x]."""
    blocks = _as_grid(grid)
    shape = (len(blocks), len(blocks[0]), len(blocks[0][0]))
    marked = [(i, j, k) for i, b in enumerate(blocks) for j, r in enumerate(b) for k, x in enumerate(r) if x]
    axis = {"z": 0, "y": 1, "x": 2}[height_axis]
    return _region(shape, marked, axis)


def read_mask(text: str):
    """2D masks are rows of 0/1; 3D masks are such blocks separated by blank lines."""
    blocks, cur = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if line.startswith("#"):
            continue
        if not line:
            if cur:
                blocks.append(cur)
                cur = []
            continue
        cells = line.replace(",", "").replace(" ", "").replace("\t", "")
        if set(cells) - {"0", "1"}:
            raise MalformedInput(f"line {lineno}: mask rows use only 0 and 1")
        cur.append([c == "1" for c in cells])
    if cur:
        blocks.append(cur)
    if not blocks:
        raise MalformedInput("empty mask")
    for b in blocks:
        if any(len(r) != len(blocks[0][0]) for r in b) or len(b) != len(blocks[0]):
            raise MalformedInput("mask rows or blocks have inconsistent sizes")
    return blocks[0] if len(blocks) == 1 else blocks


def write_mask(grid) -> str:
    g = _as_grid(grid)
    if g and _is_seq(g[0][0]) if g and g[0] else False:
        return "\n\n".join("\n".join("".join("1" if x else "0" for x in r) for r in b) for b in g) + "\n"
    return "\n".join("".join("1" if x else "0" for x in r) for r in g) + "\n"
