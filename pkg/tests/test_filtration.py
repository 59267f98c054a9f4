from __future__ import annotations

import pytest

from shoreline import spaces
from shoreline.filtration import (
    GenericityError, Pass, VertexFunction, check_generic, critical_sequence, extended_filtration,
    is_pl_perfect_morse, morse_report, normalize, perturb, read_values, sublevel_complex, superlevel_complex,
    write_values,
)
from shoreline.homology_oracle import betti, relative_betti
from shoreline.simplicial import MalformedInput, close_faces

from _instances import torus


def test_sublevel_and_superlevel_extremes():
    k = close_faces([[0, 1, 2]])
    f = VertexFunction((0.1, 0.5, 0.9))
    assert sublevel_complex(k, f, 0.0).is_empty()
    assert sublevel_complex(k, f, 1.0).simplices == k.simplices
    assert superlevel_complex(k, f, 0.0).simplices == k.simplices
    assert superlevel_complex(k, f, 1.0).is_empty()
    assert set(sublevel_complex(k, f, 0.6).simplices) == {(0,), (1,), (0, 1)}


def test_half_solid_torus_level():
    inst = torus()
    u, f, t = inst.dec.u, inst.f, inst.extra["mid_t"]
    assert betti(sublevel_complex(u, f, t)).as_tuple(0, 2) == (1, 0, 0)
    assert relative_betti(u, superlevel_complex(u, f, t)).as_tuple(0, 2) == (0, 1, 0)


def test_critical_sequence():
    k = close_faces([[0, 1], [1, 2]])
    cs = critical_sequence(k, VertexFunction((0.1, 0.5, 0.9)))
    assert cs.critical_values == pytest.approx((0.1, 0.5, 0.9))
    assert cs.regular_values == pytest.approx((0.3, 0.7))
    one = critical_sequence(close_faces([[0]]), VertexFunction((0.4,)))
    assert one.critical_values == (0.4,) and one.regular_values == ()


def test_normalize():
    assert normalize(VertexFunction((2.0, 4.0))).values == (0.0, 1.0)
    f = VertexFunction((0.0, 0.25, 1.0))
    assert normalize(f) == f
    with pytest.raises(ValueError):
        normalize(VertexFunction((1.0, 1.0)))


def test_perturb_breaks_ties_by_vertex_id():
    g = perturb(VertexFunction((1.0, 1.0, 2.0)))
    assert g[0] < g[1] < g[2]
    assert g[0] == 0.0 and g[2] == 1.0


def test_check_generic():
    k = close_faces([[0, 1]])
    check_generic(k, VertexFunction((0.0, 1.0)))
    with pytest.raises(GenericityError):
        check_generic(k, VertexFunction((0.5, 0.5)))


def test_single_vertex_filtration():
    cells = extended_filtration(close_faces([[0]]), VertexFunction((0.3,))).ordered_cells
    assert [(c.simplex, c.pass_) for c in cells] == [((), Pass.DESC), ((0,), Pass.ASC), ((0,), Pass.DESC)]


def test_edge_filtration_order():
    cells = extended_filtration(close_faces([[0, 1]]), VertexFunction((0.0, 1.0))).ordered_cells
    asc = [c.simplex for c in cells if c.pass_ is Pass.ASC]
    desc = [c.simplex for c in cells if c.pass_ is Pass.DESC]
    assert asc == [(0,), (1,), (0, 1)]
    # every face precedes its cofaces, so the cone over the edge comes after the cone over its lower vertex
    assert desc == [(), (1,), (0,), (0, 1)]


def test_filtration_size_and_face_order():
    s, f = spaces.sphere_instance(2)
    filt = extended_filtration(s, f)
    assert len(filt) == 2 * len(s) + 1
    for j, b in enumerate(filt.boundary_indices()):
        assert all(i < j for i in b)


def test_perfect_morse_octahedron():
    s, f = spaces.sphere_instance(2)
    assert is_pl_perfect_morse(s, f, 2)


def test_two_maxima_fail():
    s, _ = spaces.cross_polytope_sphere(2)
    f = VertexFunction((0.1, 0.2, 0.3, 0.0, 0.9, 1.0))
    rep = morse_report(s, f, 2)
    assert not rep
    assert len(rep.maxima) == 2


def test_single_vertex_is_not_a_sphere_of_dimension_one():
    rep = morse_report(close_faces([[0]]), VertexFunction((0.0,)), 1)
    assert not rep.ok and rep.problems


def test_values_round_trip():
    f = VertexFunction((0.0, 0.1, 1 / 3, 1.0))
    assert read_values(write_values(f)) == f


@pytest.mark.parametrize("text", ["v,x\n0,1\n", "vertex,value\n0,1\n0,2\n", "vertex,value\n0,nan\n",
                                  "vertex,value\n1,0.5\n", "vertex,value\n0,abc\n"])
def test_malformed_values(text):
    with pytest.raises(MalformedInput):
        read_values(text)
