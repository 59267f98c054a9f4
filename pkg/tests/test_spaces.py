from __future__ import annotations

import pytest

from shoreline import spaces
from shoreline.filtration import is_pl_perfect_morse
from shoreline.homology_oracle import betti
from shoreline.simplicial import ConstructionError, MalformedInput, boundary_of_pure_complex, is_closed_manifold

from _instances import annulus, disk_pair, random_instance, torus


@pytest.mark.parametrize("dim,want", [(1, (1, 1)), (2, (1, 0, 1)), (3, (1, 0, 0, 1))])
def test_cross_polytope(dim, want):
    s, coords = spaces.cross_polytope_sphere(dim)
    assert betti(s).as_tuple(0, dim) == want
    assert len(coords) == 2 * (dim + 1)
    if dim == 1:
        assert s.f_vector() == (4, 4)


def test_height_order_on_square():
    s, coords = spaces.cross_polytope_sphere(1)
    f = spaces.height_function(coords, 1)
    order = sorted(range(4), key=f.__getitem__)
    assert coords[order[0]][1] < 0 and coords[order[-1]][1] > 0


def test_octahedron_height_is_perfect_morse():
    s, f = spaces.sphere_instance(2)
    assert is_pl_perfect_morse(s, f, 2)


def test_torus_generator():
    inst = torus()
    assert betti(inst.dec.m).as_tuple(0, 2) == (1, 2, 1)
    assert betti(inst.dec.u).as_tuple(0, 3) == (1, 1, 0, 0)
    assert inst.dec.ambient.euler_characteristic() == 0
    assert is_closed_manifold(inst.dec.m, 2)


def test_smallest_torus_generator():
    inst = spaces.solid_torus_decomposition(3, 3)
    assert betti(inst.dec.m).as_tuple(0, 2) == (1, 2, 1)
    with pytest.raises(ValueError):
        spaces.solid_torus_decomposition(2, 3)


def test_annulus_values_interleave():
    e = annulus().extra
    assert e["a"] < e["b"] < e["c"] < e["d"]
    assert betti(annulus().dec.u).as_tuple(0, 2) == (1, 1, 0)


def test_disk_pair():
    dec = disk_pair().dec
    assert betti(dec.m).as_tuple(0, 1) == (1, 1)


def test_random_reproducible():
    a = spaces.random_decomposition(2, 7)
    b = spaces.random_decomposition(2, 7)
    assert a.dec.u.simplices == b.dec.u.simplices and a.f == b.f


@pytest.mark.parametrize("seed", range(4))
def test_random_is_valid(seed):
    inst = random_instance(2, seed)
    inst.dec.validate()
    assert is_pl_perfect_morse(inst.dec.ambient, inst.f, 2)


def test_full_square_mask():
    r = spaces.terrain_region([[1, 1], [1, 1]])
    assert r.n == 1
    assert betti(r.a).as_tuple(0, 2) == (1, 0, 0)
    assert betti(boundary_of_pure_complex(r.a, 1)).as_tuple(0, 1) == (1, 1)


def test_annular_mask():
    r = spaces.terrain_region([[1, 1, 1], [1, 0, 1], [1, 1, 1]])
    assert betti(r.a).as_tuple(0, 1) == (1, 1)
    assert betti(boundary_of_pure_complex(r.a, 1)).as_tuple(0, 1) == (2, 2)


def test_pinched_mask_is_rejected():
    with pytest.raises(MalformedInput, match="near grid point"):
        spaces.terrain_region([[1, 0], [0, 1]])


def test_voxel_ball():
    r = spaces.voxel_region([[[1, 1], [1, 1]], [[1, 1], [1, 1]]])
    assert r.n == 2
    assert betti(boundary_of_pure_complex(r.a, 2)).as_tuple(0, 2) == (1, 0, 1)


def test_mask_round_trip():
    grid = [[[True, False], [True, True]], [[False, False], [True, True]]]
    assert spaces.read_mask(spaces.write_mask(grid)) == grid
    flat = [[True, True, False]]
    assert spaces.read_mask(spaces.write_mask(flat)) == flat
    assert spaces.read_mask("1 1\n1,0\n") == [[True, True], [True, False]]


@pytest.mark.parametrize("text", ["", "12\n", "11\n1\n"])
def test_bad_masks(text):
    with pytest.raises(MalformedInput):
        spaces.read_mask(text)


def test_empty_mask_region():
    with pytest.raises((MalformedInput, ConstructionError)):
        spaces.terrain_region([[0, 0], [0, 0]])
