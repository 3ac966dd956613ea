"""Why every flat map of the earth lies about distances.

Mercator multiplies east-west and north-south lengths alike by sec(latitude),
so shapes survive but Greenland balloons. Equirectangular keeps meridians
honest and stretches parallels. Random great-circle pairs expose the spread
either way. The holonomy obstruction then shows this is not a failure of
cartographic ingenuity: a region with nonzero loop holonomy cannot be mapped
to the plane at true scale, period.
"""

import math

from surfgeo import (
    builtin_projection,
    builtin_surface,
    chart_rectangle,
    distortion_report,
    holonomy_obstruction,
    local_scales,
)

earth = builtin_surface("sphere", {"r": 6.371})  # thousands of km

print("mercator local scale factors (east-west, north-south):")
m = builtin_projection("mercator", earth)
for lat in (0, 30, 60, 75):
    u = math.pi / 2 - math.radians(lat)
    ew, ns = local_scales(m, earth, (u, 0.0))
    print(f"  latitude {lat:3d}: ew {ew:8.4f}  ns {ns:8.4f}  sec {1 / math.cos(math.radians(lat)):8.4f}")

print()
for name in ("mercator", "equirectangular"):
    rep = distortion_report(builtin_projection(name, earth), earth, n_pairs=200, seed=7)
    print(f"{name}: {len(rep.samples)} great-circle pairs, "
          f"ratio spread {rep.min_ratio:.3f} .. {rep.max_ratio:.3f} "
          f"({rep.spread:.2f}x)")

print()
print("holonomy obstruction:")
octant = chart_rectangle(earth, 1e-3, 0.0, math.pi / 2, math.pi / 2, max_step=0.02)
hol, verdict = holonomy_obstruction(earth, octant)
print(f"  sphere octant: {verdict.explanation}")

cylinder = builtin_surface("cylinder", {"r": 1.0})
band = chart_rectangle(cylinder, 0.0, 0.0, 1.5, 3.0, max_step=0.05)
hol, verdict = holonomy_obstruction(cylinder, band)
print(f"  cylinder band: {verdict.explanation}")
print()
print("the cylinder clears the test: slit it and unroll it flat, scale true.")
