"""Carry a direction around closed loops on a sphere and watch it come back turned.

On curved ground the chariot's statue does change bearing around a closed
circuit. The turn (the loop's holonomy) does not depend on the carried
direction, only on the loop. Latitude circles have the closed form
-2 pi cos(u0); an octant bounded by two meridians and the equator turns a
vector by a quarter revolution.
"""

import math

from surfgeo import (
    builtin_surface,
    chart_rectangle,
    loop_holonomy,
    parallel_transport,
    sample_path,
    vector_from_frame,
)

sphere = builtin_surface("sphere", {"r": 1.0})

print("latitude circles: holonomy against -2 pi cos(u0)")
print(f"{'colatitude':>12} {'holonomy':>12} {'closed form':>12}")
for u0 in (0.4, math.pi / 3, math.pi / 2, 2.2):
    belt = sample_path(sphere, "latitude_circle", {"u": u0}, max_step=0.02)
    h = loop_holonomy(sphere, belt)
    print(f"{u0:12.4f} {h:12.6f} {-2 * math.pi * math.cos(u0):12.6f}")

print()
print("the equator is a geodesic: no turn at all.")
print()

# an octant: equator from v=0 to pi/2, up a meridian, back down another.
# chart_rectangle walks it with the pole edge truncated just off the chart.
octant = chart_rectangle(sphere, 1e-3, 0.0, math.pi / 2, math.pi / 2, max_step=0.01)
h = loop_holonomy(sphere, octant.loop)
print(f"octant boundary holonomy: {h:.8f}  (pi/2 = {math.pi / 2:.8f})")

# the turn is the same whatever vector you carry
start = octant.loop.points[0]
for a, b in ((1.0, 0.0), (0.3, -0.8), (0.0, 2.0)):
    v0 = vector_from_frame(sphere, start, a, b)
    res = parallel_transport(sphere, octant.loop, v0)
    print(f"  carrying frame components ({a:+.1f}, {b:+.1f}): turn {res.total_rotation:.8f}")
