"""Parallel transport and chariot checks against closed forms and laws.

The sphere's latitude circles give the classic closed-form holonomy
-2*pi*cos(u0); chart rectangles give Delta_v*(cos u0 - cos u1) via the
curvature integral. The loop-algebra laws (homomorphism, detour and rebase
invariance, region additivity) are checked on explicit cases here; the
acceptance suite repeats them over randomized batches.
"""

import math

import numpy as np
import pytest

from surfgeo import paths, surface as sf, transport

SPHERE = sf.builtin_surface("sphere", {"r": 1.0})
PLANE = sf.builtin_surface("plane", {})
CYL = sf.builtin_surface("cylinder", {"r": 1.3})


def _latitude(u0, max_step=0.05):
    return paths.sample_path(SPHERE, "latitude_circle", {"u": u0}, max_step)


@pytest.mark.parametrize("u0", [0.4, math.pi / 3, 1.2, math.pi / 2, 2.0])
def test_latitude_holonomy_closed_form(u0):
    got = transport.loop_holonomy(SPHERE, _latitude(u0))
    want = -2.0 * math.pi * math.cos(u0)
    assert abs(got - want) < 1e-9


def test_sphere_rectangle_holonomy_equals_curvature_integral():
    for (u0, u1, v0, v1) in [(0.3, 1.1, 0.0, 2.0), (1.0, 2.4, -1.0, 0.5)]:
        r = paths.chart_rectangle(SPHERE, u0, v0, u1, v1, max_step=0.02)
        got = transport.loop_holonomy(SPHERE, r.loop)
        want = (v1 - v0) * (math.cos(u0) - math.cos(u1))
        assert abs(got - want) < 1e-9


def test_flat_surfaces_have_zero_holonomy():
    rng = np.random.default_rng(2)
    for s, vmax in ((PLANE, 8.0), (CYL, 5.0)):
        for _ in range(5):
            cu = rng.uniform(0.5, 1.5)
            cv = rng.uniform(0.5, vmax - 1.5)
            r = rng.uniform(0.2, 0.45)
            l = paths.sample_path(s, "circle", {"cu": cu, "cv": cv, "r": r}, 0.05)
            assert abs(transport.loop_holonomy(s, l)) < 1e-12


def test_transport_preserves_norm_and_rotation_is_vector_independent():
    rng = np.random.default_rng(5)
    l = _latitude(1.0)
    base = transport.holonomy_transport(SPHERE, l)
    for _ in range(4):
        w = rng.normal(size=2) * rng.uniform(0.5, 3.0)
        res = transport.parallel_transport(SPHERE, l, w)
        assert abs(res.total_rotation - base.total_rotation) < 1e-12
        n0 = sf.metric_norm(SPHERE, l.points[0], w)
        v = res.final_vector
        n1 = sf.metric_norm(SPHERE, v.base, (v.du, v.dv))
        assert abs(n1 - n0) < 1e-12 * max(1.0, n0)


def test_final_vector_angle_matches_trace():
    l = _latitude(0.8)
    res = transport.holonomy_transport(SPHERE, l)
    v = res.final_vector
    theta_end = sf.frame_angle(SPHERE, v.base, (v.du, v.dv))
    wrapped = (res.angle_trace[-1, 1] + math.pi) % (2 * math.pi) - math.pi
    assert abs(theta_end - wrapped) < 1e-9


def test_reversal_negates_holonomy():
    l = _latitude(1.1, max_step=0.03)
    h = transport.loop_holonomy(SPHERE, l)
    hr = transport.loop_holonomy(SPHERE, paths.reverse_path(l))
    assert abs(h + hr) < 1e-7


def test_holonomy_is_a_homomorphism_on_composition():
    a = paths.loop_from_waypoints(
        SPHERE, [[1.0, 1.0], [1.5, 1.0], [1.5, 1.6], [1.0, 1.6], [1.0, 1.0]], 0.03)
    b = paths.loop_from_waypoints(
        SPHERE, [[1.0, 1.0], [0.6, 1.0], [0.6, 0.5], [1.0, 0.5], [1.0, 1.0]], 0.03)
    hab = transport.loop_holonomy(SPHERE, paths.compose(a, b))
    ha = transport.loop_holonomy(SPHERE, a)
    hb = transport.loop_holonomy(SPHERE, b)
    assert abs(hab - (ha + hb)) < 1e-9


def test_detour_leaves_holonomy_unchanged():
    l = paths.loop_from_waypoints(
        SPHERE, [[1.0, 1.0], [1.5, 1.0], [1.5, 1.6], [1.0, 1.6], [1.0, 1.0]], 0.03)
    h = transport.loop_holonomy(SPHERE, l)
    spur = paths.path_from_waypoints(SPHERE, [[1.5, 1.0], [1.8, 0.7], [2.0, 0.9]], 0.03)
    h2 = transport.loop_holonomy(SPHERE, paths.add_detour(l, spur))
    assert abs(h2 - h) < 1e-9


def test_rebase_leaves_holonomy_unchanged():
    l = paths.loop_from_waypoints(
        SPHERE, [[0.7, 0.2], [1.4, 0.4], [1.2, 1.3], [0.6, 1.0], [0.7, 0.2]], 0.03)
    h = transport.loop_holonomy(SPHERE, l)
    for k in (10, 37, 80):
        assert abs(transport.loop_holonomy(SPHERE, paths.rebase(l, k)) - h) < 1e-12
    with pytest.raises(ValueError):
        paths.rebase(_latitude(1.0), 5)  # closes only modulo the chart period


def test_region_additivity_through_chord():
    r = paths.chart_rectangle(SPHERE, 0.5, 0.0, 1.5, 1.2, max_step=0.02)
    chord = paths.path_from_waypoints(SPHERE, [[0.5, 0.7], [1.5, 0.7]], 0.02)
    r1, r2 = paths.subdivide_region(r, chord)
    h = transport.loop_holonomy(SPHERE, r.loop)
    h1 = transport.loop_holonomy(SPHERE, r1.loop)
    h2 = transport.loop_holonomy(SPHERE, r2.loop)
    assert abs(h - (h1 + h2)) < 1e-9


def test_cylinder_transport_matches_unrolled_plane():
    """Unrolling the cylinder (u, v) -> (u, r v) is an isometry, so the
    whole angle trace must match the plane's."""
    r = 1.3
    way = np.array([[0.3, 0.5], [1.0, 1.2], [1.4, 2.0], [0.8, 2.6], [0.3, 0.5]])
    lc = paths.loop_from_waypoints(CYL, way, 0.04)
    flat = way.copy()
    flat[:, 1] *= r
    lp = paths.loop_from_waypoints(PLANE, flat, 0.04 * r)
    a = transport.holonomy_transport(CYL, lc)
    b = transport.holonomy_transport(PLANE, lp)
    assert abs(a.total_rotation) < 1e-12 and abs(b.total_rotation) < 1e-12
    # arclength profiles agree too (same metric lengths)
    assert abs(a.angle_trace[-1, 0] - b.angle_trace[-1, 0]) < 1e-9


def test_transport_rejects_margin_touching_path():
    way = np.array([[1e-4, 0.0], [0.5, 0.0]])  # inside pole margin
    p = paths.Path(way, 0.5)
    with pytest.raises(ValueError):
        transport.parallel_transport(SPHERE, p, (1.0, 0.0))


def test_refine_gap_meets_tolerance():
    l = _latitude(0.7, max_step=0.1)
    res = transport.holonomy_transport(SPHERE, l, tol=1e-11)
    assert res.refine_gap <= 1e-11


# ---------------------------------------------------------------------------
# finite chariot
# ---------------------------------------------------------------------------


def test_chariot_straight_line_wheels_match():
    p = paths.sample_path(PLANE, "line", {"u0": 0.0, "v0": 0.0, "u1": 4.0, "v1": 3.0}, 0.05)
    res = transport.finite_chariot(PLANE, p, transport.ChariotConfig(0.2))
    assert abs(res.d_left[-1] - res.d_right[-1]) < 1e-12
    assert abs(res.total_rotation) < 1e-12


def test_chariot_plane_arc_wheel_difference():
    """CW quarter arc of radius 2: the outer (left) wheel gains w*theta."""
    p = paths.sample_path(
        PLANE, "arc", {"cu": 0.0, "cv": 0.0, "r": 2.0, "t0": 0.0, "t1": -math.pi / 2}, 0.005)
    res = transport.finite_chariot(PLANE, p, transport.ChariotConfig(0.1))
    assert abs((res.d_left[-1] - res.d_right[-1]) - 0.1 * math.pi / 2) < 1e-6
    assert abs(res.total_rotation) < 1e-6  # statue holds its bearing on the plane


def test_chariot_statue_tracks_transport_on_sphere():
    p = paths.Path(_latitude(math.pi / 3, 0.01).points[:40], 0.01)
    cont = transport.parallel_transport(SPHERE, p, sf.frame_at(SPHERE, p.points[0])[0])
    fin = transport.finite_chariot(SPHERE, p, transport.ChariotConfig(0.05))
    assert abs(fin.total_rotation - cont.total_rotation) < 2e-3  # O(w^2)


def test_chariot_width_fold_raises():
    p = paths.sample_path(
        PLANE, "arc", {"cu": 0.0, "cv": 0.0, "r": 0.2, "t0": 0.0, "t1": 2.0}, 0.01)
    with pytest.raises(ValueError):
        transport.finite_chariot(PLANE, p, transport.ChariotConfig(0.5))


def test_chariot_convergence_is_second_order():
    p = paths.Path(_latitude(math.pi / 3, 0.005).points[:200], 0.005)
    errs = transport.chariot_convergence(SPHERE, p, [0.2, 0.1, 0.05])
    vals = [e for _, e in errs]
    assert vals[0] > vals[1] > vals[2] > 0
    orders = [math.log(vals[i] / vals[i + 1]) / math.log(2.0) for i in range(2)]
    assert min(orders) > 1.7


def test_chariot_config_validation():
    with pytest.raises(ValueError):
        transport.ChariotConfig(-0.1)
    with pytest.raises(ValueError):
        transport.ChariotConfig(0.1, step=0.0)
