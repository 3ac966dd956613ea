"""Check that boundary holonomy equals integrated curvature over a region.

Two ledgers for the same quantity: walk the boundary and record the statue's
turn, or sweep the interior adding up K dA cell by cell. They must agree,
and the disagreement should shrink by about 4x when the integration grid
doubles. For geodesic polygons the same bookkeeping appears as an angle
excess: interior angles sum to more than the flat value by exactly the
enclosed curvature.
"""

import math

from surfgeo import (
    builtin_surface,
    chart_rectangle,
    gauss_bonnet_check,
    polygon_angle_excess,
)

sphere = builtin_surface("sphere", {"r": 1.0})
hill = builtin_surface("hill", {"h": 1.0, "sigma": 1.0})

print("sphere octant (enclosed curvature pi/2):")
octant = chart_rectangle(sphere, 1e-3, 0.0, math.pi / 2, math.pi / 2, max_step=0.02)
for grid in (8, 16):
    res = gauss_bonnet_check(sphere, octant, grid=grid)
    print(f"  grid {grid:2d}: holonomy {res.holonomy:.6f}  integral {res.integral:.6f}"
          f"  residual {res.residual:+.2e}")

print()
print("rectangle on the hill's shoulder:")
shoulder = chart_rectangle(hill, 0.4, -0.6, 1.6, 0.6, max_step=0.02)
for grid in (12, 24):
    res = gauss_bonnet_check(hill, shoulder, grid=grid)
    print(f"  grid {grid:2d}: holonomy {res.holonomy:.6f}  integral {res.integral:.6f}"
          f"  residual {res.residual:+.2e}")

print()
print("geodesic triangle angle excess:")
tri = [[1.5, 0.2], [1.5, 1.2], [0.6, 0.7]]
res = polygon_angle_excess(sphere, tri)
interior = [math.pi - e for e in res.exterior_angles]
print(f"  interior angles: {', '.join(f'{a:.5f}' for a in interior)}")
print(f"  sum - pi = {sum(interior) - math.pi:+.6f}")
print(f"  holonomy = {res.holonomy:+.6f}  (the same number, measured by transport)")
