"""Curvature estimates against closed forms and a symbolic oracle.

Sphere 1/r^2, cylinder 0, torus cos(u)/(r(R + r cos u)), hill peak
4h^2/sigma^4; the ellipsoid has no such one-liner, so its reference value
comes from a sympy second-fundamental-form computation frozen below.
"""

import math

import numpy as np
import pytest

from surfgeo import curvature, geodesics, paths, surface as sf

SPHERE = sf.builtin_surface("sphere", {"r": 1.0})
PLANE = sf.builtin_surface("plane", {})
CYL = sf.builtin_surface("cylinder", {"r": 1.3})
TORUS = sf.builtin_surface("torus", {"R": 2.0, "r": 0.5})
HILL = sf.builtin_surface("hill", {"h": 1.0, "sigma": 1.0})


def _ellipsoid_K_oracle(a, b, c, u, v):
    """K = (LN - M^2)/(EG - F^2) from the embedding, via sympy."""
    import sympy as sp

    su, sv = sp.symbols("u v")
    x = sp.Matrix([a * sp.sin(su) * sp.cos(sv), b * sp.sin(su) * sp.sin(sv), c * sp.cos(su)])
    xu, xv = x.diff(su), x.diff(sv)
    n = xu.cross(xv)
    n = n / sp.sqrt(n.dot(n))
    E, F, G = xu.dot(xu), xu.dot(xv), xv.dot(xv)
    L, M, N = x.diff(su, 2).dot(n), x.diff(su, sv).dot(n), x.diff(sv, 2).dot(n)
    K = (L * N - M * M) / (E * G - F * F)
    return float(K.subs({su: u, sv: v}))


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_sphere_curvature_is_one_over_r_squared(r):
    s = sf.builtin_surface("sphere", {"r": r})
    rng = np.random.default_rng(7)
    for _ in range(2):
        p = (rng.uniform(0.6, 2.5), rng.uniform(0.0, 2 * math.pi))
        est = curvature.curvature_at(s, p)
        assert abs(est.extrapolated - 1.0 / r**2) < 1e-4 / r**2


def test_flat_surfaces_report_zero():
    for s, p in ((PLANE, (0.3, -0.8)), (CYL, (0.5, 2.0))):
        est = curvature.curvature_at(s, p)
        assert abs(est.extrapolated) < 1e-8


def test_torus_signed_curvature():
    for u0 in (0.5, 2.6):
        want = math.cos(u0) / (0.5 * (2.0 + 0.5 * math.cos(u0)))
        est = curvature.curvature_at(TORUS, (u0, 1.0))
        assert abs(est.extrapolated - want) < 1e-4 * max(1.0, abs(want))
    assert math.cos(2.6) < 0  # the inner point really is saddle-shaped


def test_hill_peak_curvature():
    est = curvature.curvature_at(HILL, (0.0, 0.0))
    assert abs(est.extrapolated - 4.0) < 5e-3
    assert abs(est.extrapolated - est.ratios[-1].ratio) <= 10 * est.error_estimate


def test_ellipsoid_matches_symbolic_oracle():
    s = sf.builtin_surface("ellipsoid", {"a": 1.0, "b": 1.3, "c": 0.8})
    for p in ((1.0, 0.7), (2.0, 2.5)):
        want = _ellipsoid_K_oracle(1.0, 1.3, 0.8, *p)
        est = curvature.curvature_at(s, p)
        assert abs(est.extrapolated - want) < 1e-3 * max(1.0, abs(want))


def test_estimate_structure_and_invariants():
    est = curvature.curvature_at(SPHERE, (1.1, 0.4))
    scales = [r.scale for r in est.ratios]
    areas = [r.area for r in est.ratios]
    assert scales == sorted(scales, reverse=True)
    assert all(a > b for a, b in zip(areas, areas[1:]))
    for r in est.ratios:
        assert abs(r.ratio - r.holonomy / r.area) < 1e-15
    assert abs(est.extrapolated - est.ratios[-1].ratio) <= 10 * est.error_estimate
    assert est.error_estimate < 1e-6


def test_aspect_and_custom_scales_agree():
    p = (1.2, 0.9)
    a = curvature.curvature_at(SPHERE, p)
    b = curvature.curvature_at(SPHERE, p, aspect=2.0)
    c = curvature.curvature_at(SPHERE, p, scales=[0.2, 0.1, 0.05])
    assert abs(a.extrapolated - b.extrapolated) < 1e-6
    assert abs(a.extrapolated - c.extrapolated) < 1e-6
    # where K varies the loop shape still must not matter
    q = (0.7, 0.2)
    base = curvature.curvature_at(HILL, q).extrapolated
    for aspect in (2.0, 3.0):
        got = curvature.curvature_at(HILL, q, aspect=aspect).extrapolated
        assert abs(got - base) < 1e-3 * max(1.0, abs(base))


def test_sphere_estimate_is_isotropic():
    rng = np.random.default_rng(23)
    for _ in range(20):
        p = (rng.uniform(0.4, math.pi - 0.4), rng.uniform(0.0, 2 * math.pi))
        est = curvature.curvature_at(SPHERE, p)
        assert abs(est.extrapolated - 1.0) < 1e-4


def test_margin_point_raises():
    with pytest.raises(ValueError):
        curvature.curvature_at(SPHERE, (1.0000001e-3, 0.0))
    with pytest.raises(ValueError):
        curvature.curvature_at(SPHERE, (1.0, 0.0), scales=[0.1])


def test_gauss_bonnet_on_sphere_octant():
    r = paths.chart_rectangle(SPHERE, 1e-3, 0.0, math.pi / 2, math.pi / 2, max_step=0.02)
    res = curvature.gauss_bonnet_check(SPHERE, r, grid=8)
    assert abs(res.holonomy - math.pi / 2) < 1e-5
    assert abs(res.residual) < 4e-3
    assert abs(res.integral - res.holonomy - res.residual) < 1e-15


def test_gauss_bonnet_octant_fine_grid_residual():
    """The octant residual is pure quadrature error, so a fine grid pushes
    it below 1e-4."""
    r = paths.chart_rectangle(SPHERE, 1e-3, 0.0, math.pi / 2, math.pi / 2, max_step=0.02)
    res = curvature.gauss_bonnet_check(SPHERE, r, grid=48)
    assert abs(res.residual) < 1e-4


def test_gauss_bonnet_on_triangulated_region():
    l, _, _ = geodesics.geodesic_polygon(
        SPHERE, [[1.0, 0.2], [1.5, 0.8], [0.9, 1.1]], step=0.02)
    res = curvature.gauss_bonnet_check(SPHERE, l, grid=6)
    assert res.holonomy > 0.05  # a real chunk of positive curvature
    assert abs(res.residual) < 2e-3 * max(1.0, res.holonomy)


def test_gauss_bonnet_torus_outer_rectangle():
    """Small rectangle on the outer equator: integral ~ K * area with K from
    the independent quadratic fit at the center."""
    t = sf.builtin_surface("torus", {"R": 2.0, "r": 1.0})
    r = paths.chart_rectangle(t, -0.1, -0.1, 0.1, 0.1, max_step=0.01)
    res = curvature.gauss_bonnet_check(t, r, grid=6)
    k_fit = curvature.quadratic_fit_curvature(t, (0.0, 0.0)).curvature
    area = sf.area_of_region(t, r)
    assert abs(k_fit - 1.0 / 3.0) < 1e-4
    assert abs(res.integral - k_fit * area) < 1e-4
    assert abs(res.residual) < 1e-3


def test_polygon_excess_tall_thin_triangle():
    """Two near-right angles and one near-zero apex angle: the excess is
    small and tracks K times the enclosed area."""
    res = curvature.polygon_angle_excess(
        SPHERE, [[math.pi / 2, 0.0], [math.pi / 2, 0.02], [0.002, 0.01]], step=0.005)
    interior = [math.pi - e for e in res.exterior_angles]
    assert abs(interior[0] - math.pi / 2) < 0.01
    assert abs(interior[1] - math.pi / 2) < 0.01
    assert interior[2] < 0.03
    excess = sum(interior) - math.pi
    area = sf.area_of_region(SPHERE, paths.region_from_loop(res.loop))
    assert 0 < excess < 0.03
    assert abs(excess - area) < 1e-6


def test_polygon_excess_plane_square():
    res = curvature.polygon_angle_excess(
        PLANE, [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    assert abs(res.exterior_angle_sum - 2 * math.pi) < 1e-9
    assert abs(res.holonomy) < 1e-9
    assert len(res.exterior_angles) == 4


def test_polygon_excess_sphere_triangle_closure():
    res = curvature.polygon_angle_excess(SPHERE, [[1.0, 0.2], [1.5, 0.8], [0.9, 1.1]])
    assert abs(res.exterior_angle_sum + res.holonomy - 2 * math.pi) < 1e-6
    assert res.holonomy > 0.05


def test_polygon_excess_rejects_self_crossing():
    with pytest.raises(ValueError):
        curvature.polygon_angle_excess(
            PLANE, [[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])


def test_quadratic_fit_on_paraboloid():
    def emb(u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return np.stack([u, v, u * u + v * v], axis=-1)

    s = sf.surface_from_embedding("paraboloid", sf.ChartDomain(-2.0, 2.0, -2.0, 2.0), emb)
    fit = curvature.quadratic_fit_curvature(s, (0.0, 0.0), stencil_radius=0.01)
    assert abs(fit.a - 1.0) < 1e-6 and abs(fit.b - 1.0) < 1e-6
    assert abs(fit.curvature - 4.0) < 1e-5
    assert fit.residual < 1e-5


def test_quadratic_fit_principal_curvatures():
    fit = curvature.quadratic_fit_curvature(SPHERE, (1.2, 0.5))
    assert abs(abs(2 * fit.a) - 1.0) < 1e-4 and abs(abs(2 * fit.b) - 1.0) < 1e-4
    assert abs(fit.curvature - 1.0) < 1e-4
    big = sf.builtin_surface("sphere", {"r": 2.0})
    fit = curvature.quadratic_fit_curvature(big, (0.9, 3.0), stencil_radius=1e-2)
    assert abs(fit.curvature - 0.25) < 1e-5
    fit = curvature.quadratic_fit_curvature(CYL, (0.5, 1.0))
    assert abs(abs(2 * fit.a) - 1.0 / 1.3) < 1e-4
    assert abs(fit.curvature) < 5e-6


def test_quadratic_fit_guards():
    with pytest.raises(ValueError):
        curvature.quadratic_fit_curvature(SPHERE, (1.0, 0.0), stencil_radius=-1.0)
    with pytest.raises(ValueError):
        curvature.quadratic_fit_curvature(HILL, (5.8, 0.0), stencil_radius=0.5)


def test_egregium_agreement():
    recs = curvature.egregium_check(SPHERE, [(0.8, 0.1), (1.4, 2.0), (2.2, 4.0)])
    assert all(r.relative_gap < 1e-3 for r in recs)
    recs = curvature.egregium_check(TORUS, [(0.5, 1.0), (2.6, 0.3)])
    assert all(r.relative_gap < 1e-2 for r in recs)
    for r in recs:
        assert abs(r.relative_gap - abs(r.intrinsic - r.extrinsic) / max(1.0, abs(r.extrinsic))) < 1e-15


def test_egregium_oblate_spheroid_and_cylinder():
    rng = np.random.default_rng(17)
    oblate = sf.builtin_surface("ellipsoid", {"a": 1.0, "b": 1.0, "c": 0.5})
    pts = [(rng.uniform(0.4, math.pi - 0.4), rng.uniform(0.0, 2 * math.pi)) for _ in range(10)]
    assert all(r.relative_gap < 1e-2 for r in curvature.egregium_check(oblate, pts))
    pts = [(rng.uniform(-3.0, 3.0), rng.uniform(0.0, 2 * math.pi)) for _ in range(10)]
    for r in curvature.egregium_check(CYL, pts):
        assert abs(r.intrinsic) < 1e-6 and abs(r.extrinsic) < 1e-4
        assert r.relative_gap < 1e-4
