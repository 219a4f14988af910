"""
Short-CORPSE as a closed error curve
====================================

The first-order error coefficient ``g1(t)`` traces a unit-speed planar curve whose
curvature is the drive. A sequence cancels the off-resonance error to first order
exactly when this curve closes. Here we build Short-CORPSE for a 3pi/2 rotation and
look at its vertices, its enclosed area and the second-order coefficient.
"""

import math

import numpy as np

from dcgeom import (g2_at, is_closed, sample_trajectory, short_corpse, short_corpse_angles,
                    signed_area, trajectory_of)

theta = 1.5 * math.pi
seq = short_corpse(theta)
angles = short_corpse_angles(theta)
print(f"kappa = {angles.kappa:.6f}, theta1 = {angles.theta1:.6f}, theta2 = {angles.theta2:.6f}")
print("segments (omega, duration):", [(s.omega, round(s.duration, 6)) for s in seq])

###############################################################################
# Three circular arcs. The curve starts at the origin heading along +x; the
# negative drive on the outer arcs bends it clockwise.
traj = trajectory_of(seq)
for k, z in enumerate(traj.vertices):
    print(f"vertex {k}: ({z.real:+.6f}, {z.imag:+.6f})")
print("closed:", is_closed(traj, 1e-10))

###############################################################################
# The enclosed signed area is tied to the second-order coefficient:
# ``Im g2(T) = -2 S``.
area = signed_area(traj)
print(f"S = {area:.12f}  (S / pi = {area / math.pi:.5f})")
print(f"Im g2(T) = {g2_at(seq).imag:.12f},  -2 S = {-2 * area:.12f}")

###############################################################################
# A few sample points, ready for an external plotter.
t, z = sample_trajectory(traj, 9)
print(np.column_stack([t, z.real, z.imag])[::4].round(6))
