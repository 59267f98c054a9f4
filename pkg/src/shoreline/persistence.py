"""Extended persistence by column reduction over GF(2).

Columns are Python ints used as bitsets over filtration positions, so adding
two columns is a single XOR and the pivot ("low") is ``bit_length() - 1``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Literal

from .filtration import ExtendedFiltration, Pass, VertexFunction, extended_filtration
from .simplicial import Decomposition, MalformedInput, SimplicialComplex

__all__ = [
    "Pass", "Subdiagram", "Dot", "PersistenceDiagram", "compute_diagram",
    "restrict_and_compute", "rectangle_count", "rectangle_counts", "reduce_columns", "pairs_of",
]


class Subdiagram(str, Enum):
    ORDINARY = "ordinary"
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    RELATIVE = "relative"


def classify(birth_value: float, birth_pass: Pass, death_value: float, death_pass: Pass) -> Subdiagram:
    if birth_pass is Pass.ASC and death_pass is Pass.ASC:
        return Subdiagram.ORDINARY
    if birth_pass is Pass.DESC and death_pass is Pass.DESC:
        return Subdiagram.RELATIVE
    if birth_pass is Pass.DESC:
        raise ValueError("a class born on the descending pass cannot die on the ascending pass")
    return Subdiagram.HORIZONTAL if birth_value <= death_value else Subdiagram.VERTICAL


@dataclass(frozen=True)
class Dot:
    dim: int
    birth_value: float
    birth_pass: Pass
    death_value: float
    death_pass: Pass
    subdiagram: Subdiagram = field(init=False, compare=False)

    def __post_init__(self):
        if self.dim < -1:
            raise ValueError(f"dot dimension {self.dim} < -1")
        sub = classify(self.birth_value, self.birth_pass, self.death_value, self.death_pass)
        object.__setattr__(self, "subdiagram", sub)
        if sub is Subdiagram.ORDINARY and self.birth_value > self.death_value:
            raise ValueError(f"ordinary dot with birth after death: {self}")
        if sub is Subdiagram.RELATIVE and self.birth_value < self.death_value:
            raise ValueError(f"relative dot with birth below death: {self}")

    @classmethod
    def make(cls, dim: int, birth: float, death: float, birth_pass: Pass | str = Pass.ASC,
             death_pass: Pass | str = Pass.DESC) -> Dot:
        return cls(dim, birth, Pass(birth_pass), death, Pass(death_pass))

    @property
    def is_diagonal(self) -> bool:
        """Same pass and equal values; horizontal/vertical dots are never diagonal."""
        return self.birth_pass is self.death_pass and self.birth_value == self.death_value

    @property
    def values(self) -> tuple[float, float]:
        return (self.birth_value, self.death_value)

    def sort_key(self):
        return (self.dim, self.birth_pass is Pass.DESC, self.birth_value,
                self.death_pass is Pass.DESC, self.death_value)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "birth": {"value": self.birth_value, "pass": self.birth_pass.value},
            "death": {"value": self.death_value, "pass": self.death_pass.value},
            "subdiagram": self.subdiagram.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Dot:
        try:
            dot = cls(int(d["dim"]), float(d["birth"]["value"]), Pass(d["birth"]["pass"]),
                      float(d["death"]["value"]), Pass(d["death"]["pass"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad dot {d!r}: {exc}") from None
        if "subdiagram" in d and d["subdiagram"] != dot.subdiagram.value:
            raise MalformedInput(f"dot {d!r} is labelled {d['subdiagram']} but is {dot.subdiagram.value}")
        return dot

    def __str__(self) -> str:
        b = f"{self.birth_value:g}{'' if self.birth_pass is Pass.ASC else '*'}"
        d = f"{self.death_value:g}{'' if self.death_pass is Pass.ASC else '*'}"
        return f"{self.subdiagram.value[0].upper()}{self.dim}({b}, {d})"


@dataclass(frozen=True)
class PersistenceDiagram:
    """A multiset of dots kept in canonical order."""

    dots: tuple[Dot, ...] = ()
    n: int | None = None
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "dots", tuple(sorted(self.dots, key=Dot.sort_key)))

    def __len__(self) -> int:
        return len(self.dots)

    def __iter__(self):
        return iter(self.dots)

    def of_dim(self, *dims: int) -> PersistenceDiagram:
        return replace(self, dots=tuple(d for d in self.dots if d.dim in dims))

    def of_subdiagram(self, sub: Subdiagram) -> PersistenceDiagram:
        return replace(self, dots=tuple(d for d in self.dots if d.subdiagram is sub))

    def without_diagonal(self) -> PersistenceDiagram:
        return replace(self, dots=tuple(d for d in self.dots if not d.is_diagonal))

    def with_dots(self, dots: Iterable[Dot], **meta) -> PersistenceDiagram:
        return replace(self, dots=tuple(dots), **meta)

    def value_pairs(self) -> list[tuple[float, float]]:
        return sorted(d.values for d in self.dots)

    def to_dict(self, keep_diagonal: bool = False) -> dict:
        dots = self.dots if keep_diagonal else self.without_diagonal().dots
        return {"n": self.n, "source": self.source, "dots": [d.to_dict() for d in dots]}

    def to_json(self, keep_diagonal: bool = False) -> str:
        return json.dumps(self.to_dict(keep_diagonal), indent=1) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> PersistenceDiagram:
        if not isinstance(doc, dict) or not isinstance(doc.get("dots"), list):
            raise MalformedInput("diagram document needs a 'dots' list")
        n = doc.get("n")
        if n is not None and not isinstance(n, int):
            raise MalformedInput("'n' must be an integer or null")
        return cls(tuple(Dot.from_dict(d) for d in doc["dots"]), n, str(doc.get("source", "")))

    @classmethod
    def from_json(cls, text: str) -> PersistenceDiagram:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"line {exc.lineno}: {exc.msg}") from None
        return cls.from_dict(doc)


ReductionMethod = Literal["twist", "standard", "random"]


def reduce_columns(boundary: list[list[int]], dims: list[int], method: ReductionMethod = "twist",
                   seed: int = 0) -> dict[int, int]:
    """Reduce the boundary matrix and return {destroyer: creator}.

    ``twist`` clears columns of creators dimension by dimension, top down.
    ``random`` also clears, but only a seeded random subset of the eligible
    columns, which is still a valid order. ``standard`` is plain left to right.
    """
    cols = [sum(1 << i for i in b) for b in boundary]
    owner: dict[int, int] = {}  # low -> column
    pairs: dict[int, int] = {}
    if method == "standard":
        order = list(range(len(cols)))
        clear = None
    elif method in ("twist", "random"):
        top = max(dims)
        order = [j for d in range(top, -1, -1) for j in range(len(cols)) if dims[j] == d]
        clear = random.Random(seed) if method == "random" else True
    else:
        raise ValueError(f"unknown reduction method {method!r}")
    cleared: set[int] = set()
    for j in order:
        if j in cleared:
            continue
        c = cols[j]
        while c:
            low = c.bit_length() - 1
            k = owner.get(low)
            if k is None:
                owner[low] = j
                pairs[j] = low
                if clear is True or (clear is not None and clear.random() < 0.5):
                    cleared.add(low)
                break
            c ^= cols[k]
        cols[j] = c
    return pairs


def pairs_of(filt: ExtendedFiltration, method: ReductionMethod = "twist", seed: int = 0) -> list[tuple[int, int]]:
    dims = [c.dim for c in filt.ordered_cells]
    pairs = reduce_columns(filt.boundary_indices(), dims, method, seed)
    paired = set(pairs) | set(pairs.values())
    unpaired = [i for i in range(len(filt)) if i not in paired]
    if unpaired != [0]:
        raise AssertionError(f"expected only the apex to survive, got {unpaired}")
    return sorted((c, d) for d, c in pairs.items())


def compute_diagram(k: SimplicialComplex, f: VertexFunction, n: int | None = None,
                    source: str = "", method: ReductionMethod = "twist", seed: int = 0) -> PersistenceDiagram:
    filt = extended_filtration(k, f)
    cells = filt.ordered_cells
    dots = []
    for ci, di in pairs_of(filt, method, seed):
        c, d = cells[ci], cells[di]
        dots.append(Dot(c.dim, c.value, c.pass_, d.value, d.pass_))
    return PersistenceDiagram(tuple(dots), n, source)


def restrict_and_compute(dec: Decomposition, f: VertexFunction, which: str, method: ReductionMethod = "twist") -> PersistenceDiagram:
    which = which.upper()
    part = dec.part(which)
    if part.is_empty():
        raise MalformedInput(f"part {which} is empty")
    n = dec.n + 1 if which == "S" else dec.n
    return compute_diagram(part, f, n=n, source=f"f|{which}", method=method)


def rectangle_count(dgm: PersistenceDiagram, t: float, p: int, side: str) -> int:
    """Dots of dimension p alive at the regular value t.

    Side L counts classes of the sublevel set, side R classes of the pair (X, X^t).
    """
    side = side.upper()
    if side not in ("L", "R"):
        raise ValueError(f"side must be L or R, not {side!r}")
    return rectangle_counts(dgm, t)[side].get(p, 0)


def rectangle_counts(dgm: PersistenceDiagram, t: float) -> dict[str, dict[int, int]]:
    """Both rectangle counts at t for every dimension at once."""
    left: dict[int, int] = {}
    right: dict[int, int] = {}
    for d in dgm.dots:
        if d.birth_value == t or d.death_value == t:
            raise ValueError(f"t={t!r} is a critical value of the diagram")
        if d.birth_pass is Pass.ASC and d.birth_value < t and (d.death_pass is Pass.DESC or d.death_value > t):
            left[d.dim] = left.get(d.dim, 0) + 1
        if d.death_pass is Pass.DESC and d.death_value < t and (d.birth_pass is Pass.ASC or d.birth_value > t):
            right[d.dim] = right.get(d.dim, 0) + 1
    return {"L": left, "R": right}
