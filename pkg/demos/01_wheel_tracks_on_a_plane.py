"""Drive a two-wheeled cart along plane arcs and read the turn off its wheels.

A cart with wheels a fixed distance w apart turns exactly when its wheels
roll different amounts: steering through a heading change of theta makes the
outer wheel travel w * theta farther than the inner one. A statue mounted on
a differential pointing (d_right - d_left) / w against the cart's own turn
therefore never changes bearing on flat ground, no matter how the cart is
driven. That constancy is the mechanical picture of parallel transport.
"""

import math

import numpy as np

from surfgeo import builtin_surface, finite_chariot, sample_path, ChariotConfig

plane = builtin_surface("plane", {})

print("quarter arcs of different radii, wheel separation w = 0.1")
print(f"{'radius':>8} {'d_left - d_right':>18} {'w * theta':>12} {'statue turn':>12}")
for radius in (0.5, 1.0, 2.0, 4.0):
    arc = sample_path(
        plane,
        "arc",
        {"cu": 0.0, "cv": 0.0, "r": radius, "t0": 0.0, "t1": -math.pi / 2},
        max_step=0.004,
    )
    res = finite_chariot(plane, arc, ChariotConfig(width_w=0.1))
    diff = res.d_left[-1] - res.d_right[-1]
    print(
        f"{radius:8.2f} {diff:18.8f} {0.1 * math.pi / 2:12.8f} "
        f"{res.total_rotation:12.2e}"
    )

print()
print("the wheel difference depends only on the heading change,")
print("never on the radius, and the statue's bearing stays put.")

u = np.linspace(0.0, 4.0, 400)
wiggle = sample_path(
    plane,
    "waypoints",
    {"points": np.column_stack([u, 0.3 * np.sin(math.pi * u / 2)]).tolist()},
    max_step=0.02,
)
res = finite_chariot(plane, wiggle, ChariotConfig(width_w=0.1))
print()
print("a wiggly track with equal start and end headings:")
print(f"  net wheel difference {res.d_left[-1] - res.d_right[-1]:+.6f}")
print(f"  statue rotation      {res.total_rotation:+.2e}")
