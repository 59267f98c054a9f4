"""Executable checks of the duality relations between U, V and their shared boundary M.

Every check returns a :class:`CheckReport`; a check never raises on a theorem
violation, only on malformed input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .diagram_ops import cascade, disjoint_union, extreme_dots, multiset_equal, reduced_diagram, reflect
from .filtration import VertexFunction, morse_report, sublevel_complex, superlevel_complex
from .homology_oracle import BettiVector, betti, relative_betti
from .persistence import PersistenceDiagram, compute_diagram, rectangle_counts
from .simplicial import (
    ConstructionError,
    Decomposition,
    MalformedInput,
    SimplicialComplex,
    boundary_of_pure_complex,
    close_faces,
    faces,
    manifold_violations,
)


class UnsupportedDimension(ValueError):
    pass


@dataclass
class CheckReport:
    name: str
    passed: bool = True
    details: list[dict] = field(default_factory=list)
    precondition_failed: bool = False

    def record(self, ok: bool, **info) -> bool:
        self.details.append({"ok": bool(ok), **info})
        if not ok:
            self.passed = False
        return ok

    def merge(self, other: CheckReport, **info) -> None:
        self.record(other.passed, check=other.name, **info,
                    failures=[d for d in other.details if not d.get("ok", True)][:10])
        self.precondition_failed |= other.precondition_failed

    @property
    def failures(self) -> list[dict]:
        return [d for d in self.details if not d.get("ok", True)]

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "precondition_failed": self.precondition_failed, "details": self.details}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, default=str) + "\n"

    def summary(self) -> str:
        tag = "PRECONDITION" if self.precondition_failed else ("PASS" if self.passed else "FAIL")
        extra = f" ({len(self.failures)} failing of {len(self.details)})" if not self.passed else ""
        return f"{tag} {self.name}{extra}"


def _diagram_doc(d: PersistenceDiagram) -> list[str]:
    return [str(x) for x in d.without_diagonal().dots]


# regular values -------------------------------------------------------------


def regular_values(dec: Decomposition, f: VertexFunction) -> list[float]:
    """One regular value of f|M in each gap of M's values, including below and above M.

    Each one is placed just above a vertex value of the ambient sphere, so it is
    regular for every part of the decomposition.
    """
    svals = sorted(f.on(dec.ambient))
    succ = {a: b for a, b in zip(svals, svals[1:])}
    starts = sorted(set(f.on(dec.m)) | {svals[0]})
    return [(x + succ[x]) / 2 for x in starts if x in succ]


def gap_values(k: SimplicialComplex, f: VertexFunction, lo: float, hi: float) -> list[float]:
    """A representative of every gap between k's vertex values inside [lo, hi]."""
    vals = sorted(f.on(k))
    ts = [(a + b) / 2 for a, b in zip(vals, vals[1:])]
    if lo < vals[0]:
        ts.insert(0, (lo + vals[0]) / 2)
    if vals[-1] < hi:
        ts.append((vals[-1] + hi) / 2)
    return ts


# Betti relations ------------------------------------------------------------


@dataclass(frozen=True)
class LevelBetti:
    """Oracle Betti numbers of one side at one level t."""

    whole: BettiVector
    sub: BettiVector
    rel: BettiVector
    sub_empty: bool


def _level(k: SimplicialComplex, f: VertexFunction, t: float, whole: BettiVector) -> LevelBetti:
    sub = sublevel_complex(k, f, t)
    return LevelBetti(whole, betti(sub), relative_betti(k, superlevel_complex(k, f, t)), sub.is_empty())


def _reduce(b: BettiVector, empty: bool) -> BettiVector:
    if empty:
        return BettiVector({-1: 1})
    out = dict(b.by_dim)
    out[0] = out.get(0, 0) - 1
    return BettiVector(out)


def _relations(n: int, u: LevelBetti, v: LevelBetti, m: LevelBetti, vt_reduced: BettiVector):
    """(name, p, lhs, rhs) for every relation, in the orientation (u, v)."""
    out = []
    q = lambda p: n - p  # noqa: E731
    out.append(("alexander sphere, p=0", 0, v.whole[0], u.whole[n] + 1))
    for p in range(1, n):
        out.append(("alexander sphere", p, v.whole[p], u.whole[q(p)]))
    out.append(("alexander sphere, p=n", n, v.whole[n], u.whole[0] - 1))
    if not v.sub_empty:
        out.append(("alexander ball, p=0", 0, v.sub[0], u.rel[n] + 1))
    for p in range(1, n + 1):
        out.append(("alexander ball", p, v.sub[p], u.rel[q(p)]))
    out.append(("mayer-vietoris sphere, p=0", 0, m.whole[0], u.whole[0] + v.whole[0] - 1))
    for p in range(1, n):
        out.append(("mayer-vietoris sphere", p, m.whole[p], u.whole[p] + v.whole[p]))
    out.append(("mayer-vietoris sphere, p=n", n, m.whole[n], u.whole[n] + v.whole[n] + 1))
    out.append(("mayer-vietoris sublevel, p=0", 0, m.sub[0], u.sub[0] + v.sub[0] - 1))
    for p in range(1, n + 1):
        out.append(("mayer-vietoris sublevel", p, m.sub[p], u.sub[p] + v.sub[p]))
    for p in range(0, n):
        out.append(("mayer-vietoris pair", p, m.rel[p], u.rel[p] + v.rel[p]))
    both = not (u.sub_empty or v.sub_empty)
    if both:
        # otherwise the extra generator lands in dimension n+1 of one side
        out.append(("mayer-vietoris pair, p=n", n, m.rel[n], u.rel[n] + v.rel[n] + 1))
    for p in range(0, n + 1):
        out.append(("separating manifold", p, m.whole[p], u.whole[p] + u.whole[q(p)]))
        if p > 0 or not v.sub_empty:
            out.append(("separating manifold sublevel", p, m.sub[p], u.sub[p] + u.rel[q(p)]))
        if p < n or both:
            out.append(("separating manifold pair", p, m.rel[p], u.rel[p] + u.sub[q(p)]))
    for p in range(-1, n + 1):
        out.append(("reduced alexander", p, vt_reduced[p], u.rel[q(p)]))
    for p in range(0, n + 1):
        out.append(("lefschetz", p, m.sub[p], m.rel[q(p)]))
    return out


def check_betti_relations(dec: Decomposition, f: VertexFunction, t: float | None = None) -> CheckReport:
    """Evaluate every Alexander / Mayer-Vietoris / Lefschetz relation with the oracle.

    With ``t=None`` all of :func:`regular_values` are used. Both orientations
    (U, V) and (V, U) are checked.
    """
    report = CheckReport("betti-relations")
    n = dec.n
    ts = regular_values(dec, f) if t is None else [t]
    mvals = set(f.on(dec.m))
    whole = {w: betti(dec.part(w)) for w in "UVM"}
    for t in ts:
        if t in mvals:
            raise ValueError(f"t={t!r} is a critical value of f|M")
        lv = {w: _level(dec.part(w), f, t, whole[w]) for w in "UVM"}
        for a, b in (("U", "V"), ("V", "U")):
            vt_red = _reduce(lv[b].sub, lv[b].sub_empty)
            for name, p, lhs, rhs in _relations(n, lv[a], lv[b], lv["M"], vt_red):
                report.record(lhs == rhs, t=t, orientation=a + b, relation=name, p=p, lhs=lhs, rhs=rhs)
    return report


# point calculus ---------------------------------------------------------------


def check_point_calculus(k: SimplicialComplex, f: VertexFunction, lo: float | None = None,
                         hi: float | None = None, dgm: PersistenceDiagram | None = None,
                         label: str = "") -> CheckReport:
    """Rectangle counts of the diagram against oracle Betti numbers at every gap.

    Also checks the reduced diagram against reduced Betti numbers when lo/hi
    (the ambient range) are given.
    """
    report = CheckReport(f"point-calculus{':' + label if label else ''}")
    dgm = dgm or compute_diagram(k, f)
    vals = f.on(k)
    lo = min(vals) if lo is None else lo
    hi = max(vals) if hi is None else hi
    rdgm = reduced_diagram(dgm, lo, hi)
    top = k.dim + 1
    for t in gap_values(k, f, lo, hi):
        sub = sublevel_complex(k, f, t)
        sup = superlevel_complex(k, f, t)
        b, r = betti(sub), relative_betti(k, sup)
        rb = _reduce(b, sub.is_empty())
        c, rc = rectangle_counts(dgm, t), rectangle_counts(rdgm, t)
        for p in range(-1, top + 1):
            got = (c["L"].get(p, 0), c["R"].get(p, 0), rc["L"].get(p, 0), rc["R"].get(p, 0))
            # the cone construction already is the reduced pair homology
            want = (b[p], r[p], rb[p], r[p])
            report.record(got == want, t=t, p=p, counts=got, oracle=want)
    return report


# diagram theorems -----------------------------------------------------------


def _range(dec: Decomposition, f: VertexFunction) -> tuple[float, float]:
    vals = f.on(dec.ambient)
    return min(vals), max(vals)


def _morse_precondition(report: CheckReport, dec: Decomposition, f: VertexFunction) -> bool:
    rep = morse_report(dec.ambient, f, dec.ambient_manifold_dim)
    if not rep.ok:
        report.passed = False
        report.precondition_failed = True
        report.details.append({"ok": False, "precondition": "perfect Morse", "problems": list(rep.problems)})
    return rep.ok


def part_diagrams(dec: Decomposition, f: VertexFunction) -> dict[str, PersistenceDiagram]:
    return {w: compute_diagram(dec.part(w), f, n=dec.n, source=f"f|{w}") for w in "UVM"}


def check_land_and_water(dec: Decomposition, f: VertexFunction,
                         diagrams: dict[str, PersistenceDiagram] | None = None) -> CheckReport:
    """Reduced diagram of f|V against the reflected reduced diagram of f|U."""
    report = CheckReport("land-and-water")
    if not _morse_precondition(report, dec, f):
        return report
    dg = diagrams or part_diagrams(dec, f)
    lo, hi = _range(dec, f)
    rv = reduced_diagram(dg["V"], lo, hi)
    ru = reduced_diagram(dg["U"], lo, hi)
    ok, mm = multiset_equal(rv, reflect(ru, dec.n))
    report.record(ok, rdgm_v=_diagram_doc(rv), reflected_rdgm_u=_diagram_doc(reflect(ru, dec.n)),
                  mismatch=mm.describe() if not ok else "")
    return report


@dataclass(frozen=True)
class Latitudinal:
    manifolds: tuple[tuple[SimplicialComplex, float, float], ...]
    components: tuple[tuple[str, SimplicialComplex, float, float], ...]
    south: int
    north: int

    @property
    def ell(self) -> int:
        return len(self.manifolds)


def _top_simplex_graph(dec: Decomposition, cut: SimplicialComplex):
    top = dec.ambient_manifold_dim + 1
    tops = [s for s in dec.ambient.simplices if len(s) == top]
    parent = list(range(len(tops)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    seen: dict = {}
    for i, s in enumerate(tops):
        for r in faces(s):
            if r in cut.simplices:
                continue
            j = seen.setdefault(r, i)
            if j != i:
                parent[find(i)] = find(j)
    return tops, find


def latitudinal_components(dec: Decomposition, f: VertexFunction) -> Latitudinal:
    verts = dec.ambient.vertices()
    south = min(verts, key=lambda v: f[v])
    north = max(verts, key=lambda v: f[v])
    mverts = set(dec.m.vertices())
    if south in mverts or north in mverts:
        raise ConstructionError("a pole lies on M")
    manifolds = []
    for comp in dec.m.components():
        tops, find = _top_simplex_graph(dec, comp)
        s_top = next(i for i, s in enumerate(tops) if south in s)
        n_top = next(i for i, s in enumerate(tops) if north in s)
        if find(s_top) != find(n_top):
            vals = f.on(comp)
            manifolds.append((comp, min(vals), max(vals)))
    manifolds.sort(key=lambda x: x[1])

    pieces = [(w, c) for w in "UV" for c in dec.part(w).components()]
    current = next((w, c) for w, c in pieces if south in c.vertices())
    chain = [current]
    for comp, _, _ in manifolds:
        v0 = comp.vertices()[0]
        nxt = [(w, c) for w, c in pieces if v0 in c.vertices() and c is not current[1]]
        if len(nxt) != 1:
            raise ConstructionError("latitudinal manifold does not have exactly two neighbors")
        current = nxt[0]
        chain.append(current)
    if north not in current[1].vertices():
        raise ConstructionError("northernmost latitudinal component does not contain the north pole")
    comps = tuple((w, c, min(f.on(c)), max(f.on(c))) for w, c in chain)
    return Latitudinal(tuple(manifolds), comps, south, north)


def check_general_shore(dec: Decomposition, f: VertexFunction,
                        diagrams: dict[str, PersistenceDiagram] | None = None) -> CheckReport:
    """M's diagram from the dimension-0 diagrams of U and V via cascade and reflection."""
    n = dec.n
    if n < 1:
        raise UnsupportedDimension("the shore relations need n >= 1")
    report = CheckReport("general-shore")
    if not _morse_precondition(report, dec, f):
        return report
    dg = diagrams or part_diagrams(dec, f)
    lo, hi = _range(dec, f)
    joint = disjoint_union(dg["U"].of_dim(0), dg["V"].of_dim(0))
    casc, crep = cascade(joint, lo, hi)
    dm = dg["M"]
    ok, mm = multiset_equal(dm.of_dim(-1, 0), casc.of_dim(-1, 0))
    report.record(ok, relation="dimension 0 by cascade", mismatch=mm.describe() if not ok else "",
                  extremes=[str(d) for d in crep.extreme_dots_in])
    for p in range(1, n):
        ok, mm = multiset_equal(dm.of_dim(p), disjoint_union(dg["U"].of_dim(p), dg["V"].of_dim(p)))
        report.record(ok, relation="middle dimension", p=p, mismatch=mm.describe() if not ok else "")
    top = reflect(casc, n).of_dim(n)
    ok, mm = multiset_equal(dm.of_dim(n), top)
    report.record(ok, relation="dimension n by cascade and reflection", mismatch=mm.describe() if not ok else "")

    lat = latitudinal_components(dec, f)
    ext = [(d.birth_value, d.death_value) for d in extreme_dots(joint)]
    comp = [(c[2], c[3]) for c in lat.components]
    report.record(ext == comp, relation="extrema lemma", ell=lat.ell, extremes=ext, latitudinal=comp)
    return report


def check_poincare(dec: Decomposition, f: VertexFunction, dgm_m: PersistenceDiagram | None = None) -> CheckReport:
    """Dimension-n diagram of f|M is the reflection of its dimension-0 diagram."""
    report = CheckReport("poincare")
    dm = dgm_m or compute_diagram(dec.m, f, n=dec.n)
    ok, mm = multiset_equal(dm.of_dim(dec.n), reflect(dm.of_dim(0), dec.n))
    report.record(ok, mismatch=mm.describe() if not ok else "")
    return report


def euclidean_decomposition(a: SimplicialComplex, e: VertexFunction, n: int,
                            box: SimplicialComplex) -> tuple[Decomposition, VertexFunction]:
    """Close the box to a sphere with a cone point above everything; A becomes U."""
    if not a.is_subcomplex_of(box):
        raise MalformedInput("region is not inside the box")
    bbox = boundary_of_pure_complex(box, n)
    apex = box.n_vertices
    capped = close_faces([s + (apex,) for s in bbox.maximal()], apex + 1)
    s = SimplicialComplex(box.simplices | capped.simplices, apex + 1)
    u = SimplicialComplex(a.simplices, apex + 1)
    top = n + 2
    v = close_faces([x for x in s.simplices if len(x) == top and x not in a.simplices], apex + 1)
    dec = Decomposition(s, u, v, u.intersection(v), n + 1)
    dec.validate()
    vals = list(e.values[:apex]) + [max(e.values[:apex]) + 1.0]
    return dec, VertexFunction(tuple(vals))


def check_euclidean_shore(a: SimplicialComplex, e: VertexFunction, n: int,
                          box: SimplicialComplex | None = None) -> CheckReport:
    """Diagram of e on the boundary of A against Dgm(e|A) together with its reflection."""
    report = CheckReport("euclidean-shore")
    bd = boundary_of_pure_complex(a, n)
    problems = manifold_violations(bd, n)
    if problems:
        raise MalformedInput(f"boundary of A is not a closed {n}-manifold: {problems[0]}")
    d_bd = compute_diagram(bd, e, n=n, source="e|dA")
    d_a = compute_diagram(a, e, n=n, source="e|A")
    rhs = disjoint_union(d_a, reflect(d_a, n))
    ok, mm = multiset_equal(d_bd, rhs)
    report.record(ok, relation="boundary = A + reflected A", boundary=_diagram_doc(d_bd),
                  region=_diagram_doc(d_a), mismatch=mm.describe() if not ok else "")
    if box is not None:
        dec, g = euclidean_decomposition(a, e, n, box)
        report.record(dec.m.simplices == bd.simplices, relation="shared boundary is dA")
        lw = check_land_and_water(dec, g)
        gs = check_general_shore(dec, g)
        report.merge(lw, relation="embedded land and water")
        report.merge(gs, relation="embedded general shore")
        lat = latitudinal_components(dec, g)
        report.record(lat.ell == 0 and lat.components[0][0] == "V", relation="both poles in V", ell=lat.ell)
    return report


def demonstrate_counterexample() -> CheckReport:
    """The annulus split where the Euclidean-style relation fails but the general one holds."""
    from .spaces import annulus_counterexample

    inst = annulus_counterexample()
    dec, f, n = inst.dec, inst.f, inst.n
    a, b, c, d = (inst.extra[x] for x in "abcd")
    report = CheckReport("counterexample")
    dg = part_diagrams(dec, f)
    m_pairs = dg["M"].without_diagonal().value_pairs()
    u_pairs = dg["U"].without_diagonal().value_pairs()
    report.record(m_pairs == sorted([(a, c), (b, d), (c, a), (d, b)]), claim="M dots", values=dict(a=a, b=b, c=c, d=d),
                  m_dots=_diagram_doc(dg["M"]))
    report.record({(a, d), (c, b)} <= set(u_pairs), claim="U dots", u_dots=_diagram_doc(dg["U"]))
    naive_ok, mm = multiset_equal(dg["M"], disjoint_union(dg["U"], reflect(dg["U"], n)))
    report.record(not naive_ok, claim="naive relation fails", mismatch=mm.describe())
    gs = check_general_shore(dec, f, dg)
    report.merge(gs, claim="general shore holds")
    lat = latitudinal_components(dec, f)
    report.record(lat.ell == 2 and len(lat.components) == 3, claim="two latitudinal circles", ell=lat.ell)
    return report


def check_all(dec: Decomposition, f: VertexFunction, label: str = "", betti_relations: bool = True,
              point_calculus: bool = True) -> CheckReport:
    """Every applicable check on one decomposition."""
    report = CheckReport(f"all{':' + label if label else ''}")
    if not _morse_precondition(report, dec, f):
        return report
    dg = part_diagrams(dec, f)
    if betti_relations:
        report.merge(check_betti_relations(dec, f))
    if point_calculus:
        lo, hi = _range(dec, f)
        for w in "UVM":
            report.merge(check_point_calculus(dec.part(w), f, lo, hi, dg[w], label=w))
    report.merge(check_land_and_water(dec, f, dg))
    if dec.n >= 1:
        report.merge(check_general_shore(dec, f, dg))
    report.merge(check_poincare(dec, f, dg["M"]))
    return report
