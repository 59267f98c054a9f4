from __future__ import annotations

import pytest

from shoreline.diagram_ops import (
    cascade, disjoint_union, extreme_dots, multiset_equal, reduced_diagram, reflect, reflect_dot,
)
from shoreline.filtration import GenericityError
from shoreline.persistence import Dot, PersistenceDiagram, Subdiagram


def H(b, d, dim=0):
    return Dot.make(dim, b, d, "asc", "desc")


def O(b, d, dim=0):
    return Dot.make(dim, b, d, "asc", "asc")


def dgm(*dots, n=None):
    return PersistenceDiagram(tuple(dots), n)


def test_single_extreme():
    assert extreme_dots(dgm(H(0, 1))) == [H(0, 1)]


def test_dominated_dot_is_not_extreme():
    assert extreme_dots(dgm(H(0, 1), H(0.2, 0.5))) == [H(0, 1)]
    assert extreme_dots(dgm(H(0, 1), O(0.2, 0.5))) == [H(0, 1)]


def test_tied_extremes_are_rejected():
    with pytest.raises(GenericityError):
        extreme_dots(dgm(H(0, 0.5), H(0, 1)))


FOUR = [H(0.0, 0.3), H(0.1, 0.5), H(0.2, 0.7), H(0.4, 1.0)]


def test_cascade_of_four_extremes():
    out, rep = cascade(dgm(*FOUR, O(0.6, 0.8)), 0.0, 1.0)
    assert rep.ell == 3
    assert len(rep.dots_out) == 5
    assert set(rep.dots_out) == {
        Dot.make(-1, 0.0, 0.0, "asc", "asc"), H(0.1, 0.3), H(0.2, 0.5), H(0.4, 0.7),
        Dot.make(0, 1.0, 1.0, "desc", "desc"),
    }
    assert O(0.6, 0.8) in out.dots


def test_cascade_single_extreme_is_diagonal_only():
    out, rep = cascade(dgm(H(0, 1)), 0.0, 1.0)
    assert len(out) == 2
    assert all(d.is_diagonal for d in out)
    assert out.dots[0].dim == -1 and out.dots[1].subdiagram is Subdiagram.RELATIVE
    assert len(out.without_diagonal()) == 0


def test_cascade_two_extremes():
    out, _ = cascade(dgm(H(0, 0.6), H(0.4, 1)), 0.0, 1.0)
    assert out.without_diagonal().dots == (H(0.4, 0.6),)


def test_cascade_adds_one_dot():
    d = dgm(*FOUR)
    assert len(cascade(d, 0.0, 1.0)[0]) == len(d) + 1
    assert len(cascade(dgm(), 0.0, 1.0)[0]) == 0


def test_cascade_rejects_out_of_range():
    with pytest.raises(ValueError):
        cascade(dgm(H(0, 1)), 0.1, 1.0)


def test_reduced_sphere_diagram():
    top = Dot.make(2, 1.0, 0.0)
    r = reduced_diagram(dgm(H(0, 1), top, n=2), 0.0, 1.0)
    assert r.without_diagonal().dots == (top,)


def test_reduced_without_dimension_zero_is_unchanged():
    d = dgm(Dot.make(1, 0.3, 0.6))
    assert reduced_diagram(d, 0.0, 1.0).dots == d.dots


def test_reflect_dot():
    assert reflect_dot(O(0.2, 0.6, dim=1), 2) == Dot.make(1, 0.6, 0.2, "desc", "desc")
    assert reflect_dot(H(0, 1), 2) == Dot.make(2, 1.0, 0.0, "asc", "desc")
    assert reflect_dot(H(0, 1), 2).subdiagram is Subdiagram.VERTICAL


def test_reflect_involution():
    d = dgm(*FOUR, O(0.6, 0.8, dim=1), n=3)
    assert reflect(reflect(d, 3), 3).dots == d.dots
    with pytest.raises(ValueError):
        reflect(d, -1)


def test_union():
    d = dgm(*FOUR)
    assert disjoint_union(d, dgm()).dots == d.dots
    assert len(disjoint_union(dgm(), dgm())) == 0
    assert len(disjoint_union(d, d)) == 2 * len(d)


def test_multiset_equal():
    d = dgm(*FOUR)
    assert multiset_equal(d, d)[0]
    changed = dgm(*FOUR[:-1], H(0.4, 1.0, dim=1))
    ok, mm = multiset_equal(d, changed)
    assert not ok
    assert mm.only_in_left == (H(0.4, 1.0),)
    assert "H1(0.4, 1*)" in mm.describe()
    assert multiset_equal(reflect(reflect(d, 2), 2), d)[0]


def test_multiset_equal_multiplicity_and_tolerance():
    assert not multiset_equal(dgm(H(0, 1), H(0, 1)), dgm(H(0, 1)))[0]
    assert multiset_equal(dgm(H(0, 1)), dgm(H(1e-12, 1)), value_tolerance=1e-9)[0]
    assert not multiset_equal(dgm(H(0, 1)), dgm(H(1e-12, 1)))[0]


def test_multiset_equal_diagonal_handling():
    a, b = dgm(H(0, 1), O(0.5, 0.5)), dgm(H(0, 1))
    assert multiset_equal(a, b)[0]
    assert not multiset_equal(a, b, drop_diagonal=False)[0]
