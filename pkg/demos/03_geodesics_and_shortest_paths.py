"""Shoot, connect, relax, and probe geodesics.

A geodesic is the track you get by driving with both wheels rolling equally:
zero statue rotation rate. This script shoots one from initial conditions,
solves the two-point problem against the great-circle closed form, shortens
a detour into a geodesic by relaxation, and shows the quarter-vs-three-quarter
great-circle arc asymmetry: past the antipode a geodesic stops minimizing.
"""

import math

import numpy as np

from surfgeo import (
    builtin_surface,
    connect_geodesic,
    path_from_waypoints,
    relax_to_geodesic,
    rotation_rate_profile,
    second_variation_probe,
    shoot_geodesic,
)

sphere = builtin_surface("sphere", {"r": 1.0})
hill = builtin_surface("hill", {"h": 1.0, "sigma": 1.0})

shot = shoot_geodesic(sphere, (1.2, 0.3), (0.4, 1.0), length=2.0, step=0.01)
rate = np.max(np.abs(rotation_rate_profile(sphere, shot)))
print(f"shot a length-2 geodesic; max statue rotation rate {rate:.2e}")

a, b = (1.3, 0.2), (0.7, 1.9)


def xyz(p):
    return np.array([
        math.sin(p[0]) * math.cos(p[1]),
        math.sin(p[0]) * math.sin(p[1]),
        math.cos(p[0]),
    ])


arc = connect_geodesic(sphere, a, b, step=0.01)
true = math.acos(float(np.dot(xyz(a), xyz(b))))
print(f"connected {a} to {b}: length {arc.length:.8f}, arccos oracle {true:.8f}")

print()
print("relaxing a detour over the hill's shoulder:")
detour = path_from_waypoints(hill, [[-1.2, 0.5], [0.0, 1.1], [1.2, 0.5]], max_step=0.05)
report = relax_to_geodesic(hill, detour, tol=1e-6)
print(f"  length {report.length_history[0]:.6f} -> {report.length_history[-1]:.6f} "
      f"in {report.iterations} iterations")
print(f"  final max rotation rate {report.final_max_rotation_rate:.2e}")

print()
print("second variation along great-circle arcs from the equator:")
for frac, label in ((0.5, "half"), (0.75, "three-quarter")):
    g = shoot_geodesic(
        sphere, (math.pi / 2, 0.0), (0.0, 1.0), length=frac * 2 * math.pi, step=0.01
    )
    d_left, d_right = second_variation_probe(sphere, g, amplitude=0.02)
    verdict = "still minimal" if min(d_left, d_right) > 0 else "a shortcut exists"
    print(f"  {label:>14} arc: bump deltas ({d_left:+.2e}, {d_right:+.2e}) -> {verdict}")
