from __future__ import annotations

import pytest

from shoreline import spaces, theorems
from shoreline.filtration import VertexFunction
from shoreline.homology_oracle import betti

from _instances import annulus, disk_pair, torus


def test_betti_relations_torus():
    inst = torus()
    assert theorems.check_betti_relations(inst.dec, inst.f).passed


def test_betti_relations_below_all_of_m():
    inst = disk_pair()
    t = min(inst.f.on(inst.dec.m)) - 1e-9
    rep = theorems.check_betti_relations(inst.dec, inst.f, t)
    assert rep.passed
    names = {d.get("relation") for d in rep.details}
    assert names


def test_point_calculus_sphere():
    s, f = spaces.sphere_instance(3)
    from shoreline.persistence import compute_diagram
    assert theorems.check_point_calculus(s, f, 0.0, 1.0, compute_diagram(s, f)).passed


def test_land_and_water_known_instances():
    for inst in (torus(), disk_pair(), annulus()):
        assert theorems.check_land_and_water(inst.dec, inst.f).passed, inst.label


def test_land_and_water_precondition():
    inst = disk_pair()
    vals = list(inst.f.values)
    # swap the top vertex with one next to the bottom to create extra critical points
    order = sorted(range(len(vals)), key=vals.__getitem__)
    vals[order[-1]], vals[order[1]] = vals[order[1]], vals[order[-1]]
    rep = theorems.check_land_and_water(inst.dec, VertexFunction(tuple(vals)))
    assert rep.precondition_failed and not rep.passed
    assert rep.summary().startswith("PRECONDITION")


def test_latitudinal_counts():
    assert theorems.latitudinal_components(torus().dec, torus().f).ell == 1
    lat = theorems.latitudinal_components(annulus().dec, annulus().f)
    assert lat.ell == 2 and len(lat.components) == 3
    assert theorems.latitudinal_components(disk_pair().dec, disk_pair().f).ell == 0


def test_general_shore_known_instances():
    for inst in (torus(), disk_pair(), annulus()):
        assert theorems.check_general_shore(inst.dec, inst.f).passed, inst.label


def test_poincare():
    assert theorems.check_poincare(torus().dec, torus().f).passed


def test_euclidean_disk_annulus_ball():
    for grid in ([[1, 1], [1, 1]], [[1, 1, 1], [1, 0, 1], [1, 1, 1]], [[[1, 1], [1, 1]], [[1, 1], [1, 1]]]):
        r = spaces.voxel_region(grid) if isinstance(grid[0][0], list) else spaces.terrain_region(grid)
        assert theorems.check_euclidean_shore(r.a, r.e, r.n, r.box).passed


def test_euclidean_decomposition_shape():
    r = spaces.terrain_region([[1, 1], [1, 1]])
    dec, f = theorems.euclidean_decomposition(r.a, r.e, r.n, r.box)
    assert betti(dec.ambient).as_tuple(0, 2) == (1, 0, 1)
    assert betti(dec.m).as_tuple(0, 1) == (1, 1)


def test_counterexample():
    rep = theorems.demonstrate_counterexample()
    assert rep.passed, rep.failures


def test_report_serialization():
    rep = theorems.CheckReport("x")
    rep.record(True, a=1)
    rep.record(False, b=2)
    assert not rep.passed and rep.failures == [{"ok": False, "b": 2}]
    assert '"passed": false' in rep.to_json()
    assert rep.summary().startswith("FAIL")
