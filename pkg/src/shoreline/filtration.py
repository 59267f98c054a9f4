"""Lower-star sublevel sets, upper-star superlevel sets and the coned extended filtration."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .simplicial import MalformedInput, Simplex, SimplicialComplex


class GenericityError(ValueError):
    """Vertex values are not pairwise distinct; run :func:`perturb` first."""


class Pass(str, Enum):
    ASC = "asc"
    DESC = "desc"

    def flip(self) -> Pass:
        return Pass.DESC if self is Pass.ASC else Pass.ASC


@dataclass(frozen=True)
class VertexFunction:
    values: tuple[float, ...]

    def __post_init__(self):
        if any(not math.isfinite(x) for x in self.values):
            raise MalformedInput("vertex values must be finite")

    @classmethod
    def of(cls, values: Iterable[float]) -> VertexFunction:
        return cls(tuple(float(x) for x in values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int) -> float:
        return self.values[v]

    def on(self, k: SimplicialComplex) -> list[float]:
        return [self.values[v] for v in k.vertices()]

    def lower(self, s: Simplex) -> float:
        return max(self.values[v] for v in s)

    def upper(self, s: Simplex) -> float:
        return min(self.values[v] for v in s)


def check_generic(k: SimplicialComplex, f: VertexFunction) -> None:
    if len(f) < k.n_vertices:
        raise MalformedInput(f"function has {len(f)} values but complex has {k.n_vertices} vertices")
    vals = f.on(k)
    if len(set(vals)) != len(vals):
        seen = {}
        for v in k.vertices():
            x = f[v]
            if x in seen:
                raise GenericityError(f"vertices {seen[x]} and {v} share value {x!r}; use perturb()")
            seen[x] = v


def sublevel_complex(k: SimplicialComplex, f: VertexFunction, t: float) -> SimplicialComplex:
    return SimplicialComplex(frozenset(s for s in k.simplices if f.lower(s) <= t), k.n_vertices)


def superlevel_complex(k: SimplicialComplex, f: VertexFunction, t: float) -> SimplicialComplex:
    return SimplicialComplex(frozenset(s for s in k.simplices if f.upper(s) >= t), k.n_vertices)


@dataclass(frozen=True)
class CriticalSequence:
    critical_values: tuple[float, ...]
    regular_values: tuple[float, ...]


def critical_sequence(k: SimplicialComplex, f: VertexFunction) -> CriticalSequence:
    """Every vertex value counts as a potential critical value; regular values are midpoints."""
    check_generic(k, f)
    s = tuple(sorted(f.on(k)))
    return CriticalSequence(s, tuple((a + b) / 2 for a, b in zip(s, s[1:])))


def normalize(f: VertexFunction) -> VertexFunction:
    lo, hi = min(f.values), max(f.values)
    if hi == lo:
        raise ValueError("cannot normalize a constant function")
    if lo == 0.0 and hi == 1.0:
        return f
    span = hi - lo
    return VertexFunction(tuple((x - lo) / span for x in f.values))


def perturb(f: VertexFunction, tie_break_scale: float | None = None) -> VertexFunction:
    """Break ties by adding ``i * eps`` to vertex ``i``, then normalize.

    ``eps`` defaults to 2**-30 of the value range, shrunk if necessary so that no
    strictly ordered pair changes order.
    """
    vals = f.values
    lo, hi = min(vals), max(vals)
    if hi == lo:
        raise ValueError("cannot perturb a constant function")
    eps = tie_break_scale if tie_break_scale is not None else (hi - lo) * 2.0**-30
    distinct = sorted(set(vals))
    gap = min((b - a for a, b in zip(distinct, distinct[1:])), default=hi - lo)
    eps = min(eps, gap / (2 * len(vals)))
    out = normalize(VertexFunction(tuple(x + i * eps for i, x in enumerate(vals))))
    if len(set(out.values)) != len(vals):
        raise GenericityError("perturbation did not separate all values (range too small)")
    return out


@dataclass(frozen=True)
class Cell:
    """One cell of the extended filtration.

    ``simplex`` is the base simplex; cone cells (pass DESC) stand for apex * simplex.
    The apex itself has ``simplex == ()``.
    """

    simplex: Simplex
    pass_: Pass
    value: float

    @property
    def is_apex(self) -> bool:
        return not self.simplex

    @property
    def dim(self) -> int:
        # cone cells are one dimension up from their base
        return len(self.simplex) - 1 + (self.pass_ is Pass.DESC)


@dataclass(frozen=True)
class ExtendedFiltration:
    ordered_cells: tuple[Cell, ...]

    def __len__(self) -> int:
        return len(self.ordered_cells)

    def ascending(self) -> list[Cell]:
        return [c for c in self.ordered_cells if c.pass_ is Pass.ASC]

    def descending(self) -> list[Cell]:
        return [c for c in self.ordered_cells if c.pass_ is Pass.DESC and not c.is_apex]

    def boundary_indices(self) -> list[list[int]]:
        """Face indices of each cell, in filtration positions."""
        pos = {(c.simplex, c.pass_): i for i, c in enumerate(self.ordered_cells)}
        out = []
        for c in self.ordered_cells:
            s = c.simplex
            if c.is_apex:
                out.append([])
            elif c.pass_ is Pass.ASC:
                out.append([pos[f, Pass.ASC] for f in _faces(s)])
            else:
                # d(w*s) = s + w*d(s), with d(vertex) read as the apex
                fs = [pos[s, Pass.ASC]]
                if len(s) > 1:
                    fs.extend(pos[f, Pass.DESC] for f in _faces(s))
                else:
                    fs.append(pos[(), Pass.DESC])
                out.append(fs)
        return out


def _faces(s):
    return [s[:i] + s[i + 1:] for i in range(len(s))] if len(s) > 1 else []


def extended_filtration(k: SimplicialComplex, f: VertexFunction) -> ExtendedFiltration:
    """The apex, then the lower-star pass over k, then the cone cells in upper-star order.

    The apex comes first so that the reduced homology of every prefix is H(X_t) on
    the ascending pass and H(X, X^t) on the descending pass.
    """
    if k.is_empty():
        raise MalformedInput("extended filtration of an empty complex")
    check_generic(k, f)
    asc = sorted(k.simplices, key=lambda s: (f.lower(s), len(s), s))
    desc = sorted(k.simplices, key=lambda s: (-f.upper(s), len(s), s))
    cells = [Cell((), Pass.DESC, max(f.on(k)))]
    cells.extend(Cell(s, Pass.ASC, f.lower(s)) for s in asc)
    cells.extend(Cell(s, Pass.DESC, f.upper(s)) for s in desc)
    return ExtendedFiltration(tuple(cells))


def read_values(text: str) -> VertexFunction:
    """Parse the ``vertex,value`` CSV format."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["vertex", "value"]:
        raise MalformedInput("line 1: expected header 'vertex,value'")
    got: dict[int, float] = {}
    for lineno, row in enumerate(reader, 2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise MalformedInput(f"line {lineno}: expected two fields")
        try:
            v, x = int(row[0]), float(row[1])
        except ValueError:
            raise MalformedInput(f"line {lineno}: cannot parse {row!r}") from None
        if not math.isfinite(x):
            raise MalformedInput(f"line {lineno}: value must be finite")
        if v < 0 or v in got:
            raise MalformedInput(f"line {lineno}: bad or repeated vertex id {v}")
        got[v] = x
    n = max(got, default=-1) + 1
    if sorted(got) != list(range(n)):
        missing = sorted(set(range(n)) - set(got))
        raise MalformedInput(f"missing values for vertices {missing[:5]}")
    return VertexFunction(tuple(got[v] for v in range(n)))


def write_values(f: VertexFunction) -> str:
    return "vertex,value\n" + "".join(f"{i},{x!r}\n" for i, x in enumerate(f.values))


def restrict_values(f: VertexFunction, keep: Sequence[int]) -> dict[int, float]:
    return {v: f[v] for v in keep}


@dataclass(frozen=True)
class MorseReport:
    ok: bool
    minima: tuple[int, ...]
    maxima: tuple[int, ...]
    irregular: tuple[int, ...]
    problems: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def morse_report(s: SimplicialComplex, f: VertexFunction, n_plus_1: int) -> MorseReport:
    """PL critical-vertex census of f on the closed manifold s."""
    from .homology_oracle import reduced_betti
    from .simplicial import manifold_violations

    problems = manifold_violations(s, n_plus_1)
    if problems:
        return MorseReport(False, (), (), (), ("not a closed manifold: " + problems[0],))
    check_generic(s, f)
    minima, maxima, irregular = [], [], []
    for v in s.vertices():
        link = s.link((v,))
        x = f[v]
        lower = SimplicialComplex(frozenset(t for t in link.simplices if f.lower(t) < x), s.n_vertices)
        upper = link.simplices and frozenset(t for t in link.simplices if f.upper(t) > x)
        if lower.is_empty():
            minima.append(v)
        elif not upper:
            maxima.append(v)
        elif reduced_betti(lower).nonzero():
            irregular.append(v)
    out = []
    if len(minima) != 1:
        out.append(f"{len(minima)} local minima: {minima[:5]}")
    if len(maxima) != 1:
        out.append(f"{len(maxima)} local maxima: {maxima[:5]}")
    if irregular:
        out.append(f"non-regular vertices: {irregular[:5]}")
    return MorseReport(not out, tuple(minima), tuple(maxima), tuple(irregular), tuple(out))


def is_pl_perfect_morse(s: SimplicialComplex, f: VertexFunction, n_plus_1: int) -> bool:
    return morse_report(s, f, n_plus_1).ok
