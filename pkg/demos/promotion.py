"""
Promoting a first-order sequence to second order
================================================

Appending a 2pi pulse leaves the endpoint of the error curve where it is, since a
full circle returns to its start. Picking the radius ``r = sqrt(|S| / pi)`` and the
opposite turning sense cancels the enclosed area, and with it ``g2(T)``.
"""

import math

from dcgeom import (g_coefficients, promote_second_order, promote_unit_strength,
                    short_corpse, signed_area, trajectory_of)

for theta in (math.pi / 2, math.pi, 1.5 * math.pi):
    seed = short_corpse(theta)
    promoted, report = promote_second_order(seed)
    c = g_coefficients(promoted)
    print(f"theta = {theta / math.pi:.1f}pi  S = {report.seed_area:.6f}  "
          f"1/r = {1 / report.radius:.5f}  appended omega = {report.appended_omega:+.5f}  "
          f"|g1| = {abs(c.g1):.1e}  |g2| = {abs(c.g2):.1e}")

###############################################################################
# For 3pi/2 the required strength is within a percent of the nominal one, so a
# unit-strength 2pi pulse already removes most of the area.
seed = short_corpse(1.5 * math.pi)
unit, report = promote_unit_strength(seed)
print(f"unit-strength residual area = {report.residual_area:.6f} "
      f"(seed area {signed_area(trajectory_of(seed)):.6f})")
print(f"unit-strength |g2(T)| = {abs(g_coefficients(unit).g2):.6f}")
