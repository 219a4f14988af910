"""
Reading the robustness order off an infidelity sweep
====================================================

An ``n``-th order robust gate has infidelity ``E ~ delta**(2(n+1))`` for small
off-resonance error ``delta``. We sweep square, Short-CORPSE and promoted
sequences and fit the log-log slope, then compare with the order certified by the
error coefficients.
"""

import math
import warnings

import numpy as np

from dcgeom import estimate_order, infidelity_sweep, promote_second_order, short_corpse, square_pulse

theta = math.pi
sc = short_corpse(theta)
seqs = [square_pulse(theta), sc, promote_second_order(sc)[0]]

###############################################################################
# Infidelity on a coarse grid. Each column drops by orders of magnitude.
table = infidelity_sweep(seqs, np.array([0.01, 0.03, 0.1, 0.3]), theta)
print("delta    " + "  ".join(f"{label:>22}" for label in table.labels))
for d, row in zip(table.deltas, table.infidelities):
    print(f"{d:<8.2f} " + "  ".join(f"{v:22.3e}" for v in row))

###############################################################################
# Slope fits in per-order windows, next to the g-coefficient certificate.
for seq in seqs:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # round-off floor points are dropped
        est = estimate_order(seq, theta)
    print(f"{seq.label:<24} slope = {est.slope:.3f}  order = {est.inferred_order}  "
          f"certified = {est.certified_order}  agree = {est.agrees}")
