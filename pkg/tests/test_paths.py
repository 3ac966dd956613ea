"""Path construction, closure rules, lengths, and loop surgery.

Lengths are checked against closed forms (chart lines, latitude circles)
and refinement invariance; loop closure distinguishes exact chart closure
from closure modulo the declared periodic sheet.
"""

import math

import numpy as np
import pytest

from surfgeo import paths, surface as sf

SPHERE = sf.builtin_surface("sphere", {"r": 1.0})
PLANE = sf.builtin_surface("plane", {})
TORUS = sf.builtin_surface("torus", {"R": 2.0, "r": 0.7})


def test_line_generator_endpoints_and_step():
    p = paths.sample_path(PLANE, "line", {"u0": 0.0, "v0": 0.0, "u1": 3.0, "v1": 4.0}, 0.25)
    assert isinstance(p, paths.Path) and not isinstance(p, paths.Loop)
    assert np.allclose(p.points[0], [0, 0]) and np.allclose(p.points[-1], [3, 4])
    steps = np.linalg.norm(np.diff(p.points, axis=0), axis=1)
    assert steps.max() <= 0.25 + 1e-12
    assert abs(paths.path_length(PLANE, p) - 5.0) < 1e-12


def test_latitude_circle_length_closed_form():
    for u0 in (0.5, 1.0, math.pi / 2):
        l = paths.sample_path(SPHERE, "latitude_circle", {"u": u0}, 0.02)
        assert isinstance(l, paths.Loop)
        want = 2.0 * math.pi * math.sin(u0)
        # inscribed-polygon length converges from below at O(step^2)
        assert abs(paths.path_length(SPHERE, l) - want) < 2e-4 * want


def test_circle_generator_closes_exactly():
    l = paths.sample_path(PLANE, "circle", {"cu": 1.0, "cv": -2.0, "r": 0.5}, 0.05)
    assert isinstance(l, paths.Loop) and l.chart_closed
    assert np.allclose(l.points[0], l.points[-1])
    assert abs(paths.path_length(PLANE, l) - 2 * math.pi * 0.5) < 2e-3


def test_chart_rectangle_is_ccw_region():
    r = paths.chart_rectangle(PLANE, 0.0, 0.0, 2.0, 1.0)
    assert isinstance(r, paths.RegionBoundary)
    assert r.signed_area > 0
    assert abs(r.signed_area - 2.0) < 1e-12


def test_loop_closure_modulo_period():
    """A latitude-like track that wraps the torus tube closes only modulo
    the declared 2*pi period, and is flagged accordingly."""
    way = np.column_stack([np.linspace(0.0, 2 * math.pi, 80), np.full(80, 1.0)])
    l = paths.loop_from_waypoints(TORUS, way, 0.2)
    assert isinstance(l, paths.Loop)
    assert not l.chart_closed
    with pytest.raises(ValueError):
        paths.region_from_loop(l)  # no chart interior to bound


def test_open_endpoints_rejected_as_loop():
    way = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 0.7]])
    with pytest.raises(ValueError):
        paths.loop_from_waypoints(PLANE, way, 0.5)


def test_arclengths_monotone_and_consistent():
    p = paths.sample_path(SPHERE, "line", {"u0": 0.4, "v0": 0.0, "u1": 1.4, "v1": 2.0}, 0.05)
    arcs = paths.arclengths(SPHERE, p)
    assert arcs[0] == 0.0
    assert np.all(np.diff(arcs) > 0)
    assert abs(arcs[-1] - paths.path_length(SPHERE, p)) < 1e-12
    segs = paths.segment_lengths(SPHERE, p.points)
    assert np.allclose(np.cumsum(segs), arcs[1:])


def test_refine_preserves_geometry_and_length():
    p = paths.sample_path(PLANE, "arc", {"cu": 0.0, "cv": 0.0, "r": 2.0, "t0": 0.0, "t1": 1.0}, 0.3)
    fine = paths.refine_path(PLANE, p, 0.01)
    assert fine.max_step <= 0.01 + 1e-12
    # chord subdivision inserts points on the same polyline
    assert abs(paths.path_length(PLANE, fine) - paths.path_length(PLANE, p)) < 1e-12
    assert np.allclose(fine.points[0], p.points[0])
    assert np.allclose(fine.points[-1], p.points[-1])


def test_reverse_path_flips_orientation():
    l = paths.sample_path(PLANE, "circle", {"cu": 0.0, "cv": 0.0, "r": 1.0}, 0.1)
    rl = paths.reverse_path(l)
    assert np.allclose(rl.points, l.points[::-1])
    from surfgeo import _chartgeom
    a = _chartgeom.shoelace_area(l.points)
    assert abs(_chartgeom.shoelace_area(rl.points) + a) < 1e-14 * abs(a)


def test_is_simple_detects_crossing():
    good = paths.sample_path(PLANE, "circle", {"cu": 0.0, "cv": 0.0, "r": 1.0}, 0.1)
    assert paths.is_simple(good)
    bowtie = np.array([[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    bad = paths.Loop(bowtie, 2.0, chart_closed=True)
    assert not paths.is_simple(bad)
    with pytest.raises(ValueError):
        paths.RegionBoundary(bad)


def test_compose_requires_shared_basepoint():
    a = paths.sample_path(PLANE, "circle", {"cu": 1.0, "cv": 0.0, "r": 1.0}, 0.1)
    b = paths.sample_path(PLANE, "circle", {"cu": -1.0, "cv": 0.0, "r": 1.0}, 0.1)
    # both circles start at their rightmost point; rebase b so its start
    # coincides with a's start at (2, 0) -- impossible, so compose raises
    with pytest.raises(ValueError):
        paths.compose(a, b)


def test_compose_concatenates_at_base():
    a = paths.loop_from_waypoints(
        PLANE, [[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]], 0.5)
    b = paths.loop_from_waypoints(
        PLANE, [[0, 0], [-1, 0], [-1, -1], [0, -1], [0, 0]], 0.5)
    c = paths.compose(a, b)
    assert isinstance(c, paths.Loop)
    assert np.allclose(c.points[0], [0, 0]) and np.allclose(c.points[-1], [0, 0])
    assert len(c.points) == len(a.points) + len(b.points) - 1


def test_add_detour_out_and_back():
    l = paths.loop_from_waypoints(
        PLANE, [[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]], 0.5)
    spur = paths.path_from_waypoints(PLANE, [[1, 0], [2.0, 0.3]], 0.5)
    with_spur = paths.add_detour(l, spur)
    # out-and-back: spur forward then backward spliced at the matching vertex
    assert len(with_spur.points) == len(l.points) + 2 * (len(spur.points) - 1)
    k = np.argmin(np.linalg.norm(l.points - np.array([1.0, 0.0]), axis=1))
    seg = with_spur.points[k : k + 2 * (len(spur.points) - 1) + 1]
    assert np.allclose(seg[0], [1, 0]) and np.allclose(seg[-1], [1, 0])
    assert np.allclose(seg[len(spur.points) - 1], [2.0, 0.3])


def test_add_detour_requires_vertex_on_loop():
    l = paths.loop_from_waypoints(
        PLANE, [[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]], 0.5)
    spur = paths.path_from_waypoints(PLANE, [[5.0, 5.0], [6.0, 5.0]], 0.5)
    with pytest.raises(ValueError):
        paths.add_detour(l, spur)


def test_rebase_rotates_samples():
    l = paths.loop_from_waypoints(
        PLANE, [[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]], 0.5)
    r = paths.rebase(l, 2)
    assert np.allclose(r.points[0], l.points[2])
    assert np.allclose(r.points[-1], l.points[2])
    assert len(r.points) == len(l.points)
    assert abs(paths.path_length(PLANE, r) - paths.path_length(PLANE, l)) < 1e-12


def test_subdivide_region_splits_area():
    r = paths.chart_rectangle(PLANE, 0.0, 0.0, 2.0, 1.0, max_step=0.1)
    chord = paths.path_from_waypoints(PLANE, [[1.0, 0.0], [1.0, 1.0]], 0.1)
    r1, r2 = paths.subdivide_region(r, chord)
    a = sf.area_of_region(PLANE, r1) + sf.area_of_region(PLANE, r2)
    assert abs(a - 2.0) < 1e-9
    assert r1.signed_area > 0 and r2.signed_area > 0


def test_waypoints_off_domain_rejected():
    with pytest.raises(ValueError):
        paths.path_from_waypoints(SPHERE, [[0.5, 0.0], [4.0, 0.0]], 0.2)  # u > pi


def test_default_max_step_scales_with_feature():
    big = sf.builtin_surface("sphere", {"r": 10.0})
    p_small = paths.sample_path(SPHERE, "line", {"u0": 1.0, "v0": 0.0, "u1": 1.0, "v1": 1.0})
    p_big = paths.sample_path(big, "line", {"u0": 1.0, "v0": 0.0, "u1": 1.0, "v1": 1.0})
    assert p_small.max_step == p_big.max_step  # chart step, same chart geometry
    assert len(p_small.points) >= 3
