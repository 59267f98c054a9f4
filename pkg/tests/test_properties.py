from __future__ import annotations

from itertools import combinations

from hypothesis import given, settings, strategies as st

from shoreline.diagram_ops import cascade, multiset_equal, reflect
from shoreline.filtration import VertexFunction, perturb
from shoreline.homology_oracle import betti
from shoreline.persistence import Dot, PersistenceDiagram, compute_diagram
from shoreline.simplicial import barycentric_subdivision, close_faces, join
from shoreline.theorems import check_point_calculus

from oracle import brute_force_diagram


@st.composite
def complexes(draw, max_vertices=6):
    n = draw(st.integers(1, max_vertices))
    pool = [c for d in (1, 2, 3) for c in combinations(range(n), d)]
    chosen = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=8, unique=True))
    used = sorted({v for s in chosen for v in s})
    relabel = {v: i for i, v in enumerate(used)}
    return close_faces([[relabel[v] for v in s] for s in chosen], len(used))


@st.composite
def complex_and_function(draw):
    k = draw(complexes())
    ranks = draw(st.permutations(range(k.n_vertices)))
    f = VertexFunction(tuple(r / max(1, k.n_vertices - 1) for r in ranks))
    return k, f


@st.composite
def dots(draw):
    dim = draw(st.integers(0, 3))
    kind = draw(st.sampled_from(["ordinary", "relative", "extended"]))
    a, b = sorted(draw(st.lists(st.integers(0, 20), min_size=2, max_size=2)))
    a, b = a / 20, b / 20
    if kind == "ordinary":
        return Dot.make(dim, a, b, "asc", "asc")
    if kind == "relative":
        return Dot.make(dim, b, a, "desc", "desc")
    return Dot.make(dim, *draw(st.permutations([a, b])), "asc", "desc")


diagrams = st.lists(dots(), max_size=8).map(lambda ds: PersistenceDiagram(tuple(ds), 3))


@settings(max_examples=60, deadline=None)
@given(complex_and_function())
def test_engine_matches_rank_function_oracle(kf):
    k, f = kf
    assert compute_diagram(k, f).dots == brute_force_diagram(k, f).dots


@settings(max_examples=60, deadline=None)
@given(complex_and_function(), st.integers(0, 1000))
def test_reduction_order_independence(kf, seed):
    k, f = kf
    base = compute_diagram(k, f).dots
    assert compute_diagram(k, f, method="standard").dots == base
    assert compute_diagram(k, f, method="random", seed=seed).dots == base


@settings(max_examples=60, deadline=None)
@given(complex_and_function())
def test_point_calculus_on_random_complexes(kf):
    k, f = kf
    assert check_point_calculus(k, f, 0.0, 1.0, compute_diagram(k, f)).passed


@settings(max_examples=60, deadline=None)
@given(complex_and_function())
def test_every_cell_but_the_apex_is_paired(kf):
    k, f = kf
    assert len(compute_diagram(k, f)) == len(k)


@settings(max_examples=40, deadline=None)
@given(complexes(max_vertices=5))
def test_subdivision_preserves_betti(k):
    sd, _ = barycentric_subdivision(k)
    top = k.dim
    assert betti(sd).as_tuple(0, top) == betti(k).as_tuple(0, top)


@settings(max_examples=40, deadline=None)
@given(complexes(max_vertices=4), complexes(max_vertices=4))
def test_join_euler_characteristic(k, l):
    assert 1 - join(k, l).euler_characteristic() == (1 - k.euler_characteristic()) * (1 - l.euler_characteristic())


@given(diagrams, st.integers(0, 4))
def test_reflect_is_an_involution(d, n):
    n = max(n, max((x.dim for x in d), default=0))
    assert reflect(reflect(d, n), n).dots == d.dots


@given(st.lists(st.tuples(st.integers(0, 9), st.integers(10, 19)), min_size=0, max_size=5, unique=True))
def test_cascade_adds_exactly_one_dot(pairs):
    # a chain of horizontal dots with increasing births and deaths is all extreme
    bs = sorted({b for b, _ in pairs})
    ds = sorted({d for _, d in pairs})
    m = min(len(bs), len(ds))
    d = PersistenceDiagram(tuple(Dot.make(0, bs[i] / 20, ds[i] / 20) for i in range(m)))
    out, rep = cascade(d, 0.0, 1.0)
    assert len(out) == len(d) + (1 if m else 0)
    assert rep.ell == m - 1


@given(diagrams)
def test_json_round_trip(d):
    assert PersistenceDiagram.from_json(d.to_json(keep_diagonal=True)) == d


@given(diagrams, diagrams)
def test_multiset_equal_is_symmetric(a, b):
    ab, mm = multiset_equal(a, b)
    ba, nn = multiset_equal(b, a)
    assert ab == ba
    assert mm.only_in_left == nn.only_in_right


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=10))
def test_perturb_keeps_strict_order(xs):
    f = VertexFunction(tuple(float(x) for x in xs))
    if len(set(xs)) == 1:
        return
    g = perturb(f)
    assert len(set(g.values)) == len(xs)
    for i in range(len(xs)):
        for j in range(len(xs)):
            if xs[i] < xs[j]:
                assert g[i] < g[j]
