"""Transforms on persistence diagrams: reflection, cascade, reduced diagrams, unions, comparison."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from .filtration import GenericityError, Pass
from .persistence import Dot, PersistenceDiagram, Subdiagram


@dataclass(frozen=True)
class CascadeReport:
    extreme_dots_in: tuple[Dot, ...]
    dots_out: tuple[Dot, ...]
    lo: float
    hi: float

    @property
    def ell(self) -> int:
        return len(self.extreme_dots_in) - 1


def extreme_dots(dgm: PersistenceDiagram) -> list[Dot]:
    """Dimension-0 dots not dominated by another dot with smaller birth and larger death.

    Only horizontal dots can be extreme: every ordinary dot is dominated by the
    horizontal dot of the older component it merges into.
    """
    zero = [d for d in dgm.dots if d.dim == 0 and not d.is_diagonal]
    hs = [d for d in zero if d.subdiagram is Subdiagram.HORIZONTAL]
    births = Counter(d.birth_value for d in hs)
    deaths = Counter(d.death_value for d in hs)
    for d in hs:
        if births[d.birth_value] > 1 or deaths[d.death_value] > 1:
            raise GenericityError(f"dimension-0 dots share a coordinate near {d}")
    out = []
    for d in zero:
        if any(o != d and o.birth_value <= d.birth_value and o.death_value >= d.death_value for o in hs):
            continue
        if d.subdiagram is not Subdiagram.HORIZONTAL:
            raise AssertionError(f"non-horizontal extreme dot {d}")
        out.append(d)
    out.sort(key=lambda d: d.birth_value)
    for a, b in zip(out, out[1:]):
        assert a.birth_value < b.birth_value and a.death_value < b.death_value
    return out


def cascade(dgm: PersistenceDiagram, lo: float, hi: float) -> tuple[PersistenceDiagram, CascadeReport]:
    """Replace extremes (u_k, w_{k+1}) by (lo, u_0), (u_k, w_k) for 1 <= k <= l, and (hi, w_{l+1})."""
    ext = extreme_dots(dgm)
    for d in dgm.dots:
        if d.dim == 0 and not (lo <= d.birth_value <= hi and lo <= d.death_value <= hi):
            raise ValueError(f"dot {d} lies outside [{lo}, {hi}]")
    new: list[Dot] = []
    if ext:
        us = [d.birth_value for d in ext]
        ws = [d.death_value for d in ext]
        new.append(Dot(-1, lo, Pass.ASC, us[0], Pass.ASC))
        for k in range(1, len(ext)):
            new.append(Dot(0, us[k], Pass.ASC, ws[k - 1], Pass.DESC))
        new.append(Dot(0, hi, Pass.DESC, ws[-1], Pass.DESC))
    rest = list(dgm.dots)
    for d in ext:
        rest.remove(d)
    out = dgm.with_dots(rest + new)
    return out, CascadeReport(tuple(ext), tuple(new), lo, hi)


def reduced_diagram(dgm: PersistenceDiagram, lo: float, hi: float) -> PersistenceDiagram:
    """Cascade the dimension-0 layer; higher dimensions are untouched."""
    zero = dgm.of_dim(0)
    cz, _ = cascade(zero, lo, hi)
    others = [d for d in dgm.dots if d.dim != 0]
    src = f"reduced({dgm.source})" if dgm.source else "reduced"
    return dgm.with_dots(others + list(cz.dots), source=src)


def reflect_dot(d: Dot, n: int) -> Dot:
    return Dot(n - d.dim, d.death_value, d.death_pass.flip(), d.birth_value, d.birth_pass.flip())


def reflect(dgm: PersistenceDiagram, n: int) -> PersistenceDiagram:
    if n < 0:
        raise ValueError("n must be non-negative")
    src = f"T({dgm.source})" if dgm.source else "T"
    return dgm.with_dots([reflect_dot(d, n) for d in dgm.dots], source=src)


def disjoint_union(d1: PersistenceDiagram, d2: PersistenceDiagram) -> PersistenceDiagram:
    n = d1.n if d1.n == d2.n else None
    return PersistenceDiagram(d1.dots + d2.dots, n, f"{d1.source} + {d2.source}")


@dataclass(frozen=True)
class Mismatch:
    only_in_left: tuple[Dot, ...] = ()
    only_in_right: tuple[Dot, ...] = ()

    def __bool__(self) -> bool:
        return bool(self.only_in_left or self.only_in_right)

    def to_dict(self) -> dict:
        return {
            "only_in_left": [d.to_dict() for d in self.only_in_left],
            "only_in_right": [d.to_dict() for d in self.only_in_right],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    def describe(self) -> str:
        left = ", ".join(map(str, self.only_in_left)) or "-"
        right = ", ".join(map(str, self.only_in_right)) or "-"
        return f"only left: {left}; only right: {right}"


def _key(d: Dot):
    return (d.dim, d.birth_pass, d.birth_value, d.death_pass, d.death_value)


def multiset_equal(d1: PersistenceDiagram, d2: PersistenceDiagram, value_tolerance: float = 0.0,
                   drop_diagonal: bool = True) -> tuple[bool, Mismatch]:
    a = [d for d in d1.dots if not (drop_diagonal and d.is_diagonal)]
    b = [d for d in d2.dots if not (drop_diagonal and d.is_diagonal)]
    if value_tolerance == 0:
        ca, cb = Counter(map(_key, a)), Counter(map(_key, b))
        mm = Mismatch(_expand(ca - cb, a), _expand(cb - ca, b))
        return not mm, mm
    rest = list(b)
    left = []
    for d in a:
        for i, o in enumerate(rest):
            if (d.dim, d.birth_pass, d.death_pass) == (o.dim, o.birth_pass, o.death_pass) and \
                    abs(d.birth_value - o.birth_value) <= value_tolerance and \
                    abs(d.death_value - o.death_value) <= value_tolerance:
                del rest[i]
                break
        else:
            left.append(d)
    mm = Mismatch(tuple(left), tuple(rest))
    return not mm, mm


def _expand(counts: Counter, dots: list[Dot]) -> tuple[Dot, ...]:
    out = []
    for d in dots:
        if counts[_key(d)] > 0:
            counts[_key(d)] -= 1
            out.append(d)
    return tuple(out)
