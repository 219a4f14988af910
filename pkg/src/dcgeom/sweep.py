"""Infidelity sweeps over the off-resonance error and robustness-order estimates.

An ``n``-th order robust gate has infidelity ``E ~ c delta**(2(n+1))``, so the slope of
``log E`` against ``log delta`` identifies the order. Each hypothesised order is
fitted inside its own window, chosen so that ``E`` stays well above round-off.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .evolution import evolve, infidelity
from .perturbation import g_coefficients
from .pulse_model import PulseSequence, total_rotation_angle

__all__ = [
    "ORDER_WINDOWS",
    "SweepTable",
    "OrderEstimate",
    "delta_grid",
    "infidelity_curve",
    "infidelity_sweep",
    "fit_slope",
    "certificate_order",
    "estimate_order",
]

ORDER_WINDOWS = {0: (1e-3, 1e-1), 1: (1e-2, 1e-1), 2: (5e-2, 2.5e-1)}
MIN_FIT_POINTS = 8
SLOPE_TOL = 0.3
RESIDUAL_TOL = 0.05
E_FLOOR = 1e-13


@dataclass(frozen=True)
class SweepTable:
    """Infidelity against ``delta`` for one or more labelled sequences."""

    theta: float | None
    deltas: np.ndarray
    labels: tuple[str, ...]
    infidelities: np.ndarray  # (n_delta, n_sequences)

    def column(self, label: str) -> np.ndarray:
        return self.infidelities[:, self.labels.index(label)]


@dataclass(frozen=True)
class OrderEstimate:
    slope: float
    intercept: float
    inferred_order: int
    fit_range: tuple[float, float]
    fit_residual: float
    n_points: int
    accepted: bool
    g1_norm: float
    g2_norm: float
    certified_order: int
    notes: tuple[str, ...] = field(default=())

    @property
    def agrees(self) -> bool:
        """Slope route and coefficient route give the same order."""
        return self.accepted and self.inferred_order == self.certified_order


def delta_grid(delta_min: float, delta_max: float, points: int, log: bool = False) -> np.ndarray:
    if points < 2:
        raise ValueError("points must be >= 2")
    if not delta_min < delta_max:
        raise ValueError("delta_min must be smaller than delta_max")
    if log:
        if delta_min <= 0:
            raise ValueError("log spacing needs delta_min > 0")
        return np.geomspace(delta_min, delta_max, points)
    return np.linspace(delta_min, delta_max, points)


def infidelity_curve(seq: PulseSequence, deltas, theta: float | None = None,
                     threads: int = 1) -> np.ndarray:
    """``E(delta)`` at each grid point; ``theta`` defaults to the sequence's own angle."""
    if theta is None:
        theta = total_rotation_angle(seq)
    deltas = [float(d) for d in deltas]

    def one(d):
        return infidelity(evolve(seq, d), theta)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(one, deltas))
    else:
        values = [one(d) for d in deltas]
    return np.array(values, dtype=float)


def infidelity_sweep(seqs: Sequence[PulseSequence], deltas, theta: float | None = None,
                     threads: int = 1) -> SweepTable:
    labels = tuple(s.label for s in seqs)
    if len(set(labels)) != len(labels):
        dup = sorted({x for x in labels if labels.count(x) > 1})
        raise ValueError(f"duplicate sequence labels: {dup}")
    deltas = np.asarray(deltas, dtype=float)
    if np.any(np.diff(deltas) <= 0):
        raise ValueError("deltas must be strictly increasing")
    cols = [infidelity_curve(s, deltas, theta, threads) for s in seqs]
    data = np.column_stack(cols) if cols else np.empty((deltas.size, 0))
    return SweepTable(theta, deltas, labels, data)


def fit_slope(deltas, values) -> tuple[float, float, float]:
    """Least-squares line through ``(log delta, log E)``: slope, intercept, RMS residual."""
    x = np.log(np.asarray(deltas, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    rms = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return float(slope), float(intercept), rms


def certificate_order(g1_norm: float, g2_norm: float, tol1: float = 1e-9,
                      tol2: float = 1e-8) -> int:
    if g1_norm > tol1:
        return 0
    return 1 if g2_norm > tol2 else 2


def _fit_window(seq, theta, order, points, notes):
    lo, hi = ORDER_WINDOWS[order]
    deltas = np.geomspace(lo, hi, points)
    values = infidelity_curve(seq, deltas, theta)
    keep = values >= E_FLOOR
    if not keep.all():
        msg = f"order-{order} window: dropped {int((~keep).sum())} points with E < {E_FLOOR:g}"
        notes.append(msg)
        warnings.warn(msg, stacklevel=3)
    deltas, values = deltas[keep], values[keep]
    if deltas.size < MIN_FIT_POINTS:
        notes.append(f"order-{order} window: too few valid points ({deltas.size})")
        return None
    slope, intercept, rms = fit_slope(deltas, values)
    inferred = int(round(slope / 2)) - 1
    return slope, intercept, rms, inferred, (float(deltas[0]), float(deltas[-1])), deltas.size


def estimate_order(seq: PulseSequence, theta: float | None = None, points: int = 16,
                   orders: Sequence[int] = (0, 1, 2)) -> OrderEstimate:
    """Infer the robustness order from log-log slopes, with a g-coefficient certificate.

    Windows are tried from low to high order; the first fit whose slope is within 0.3
    of ``2(n+1)`` with RMS log-residual at most 0.05 is accepted. When none qualifies
    the last valid fit is returned with ``accepted=False``.
    """
    coeffs = g_coefficients(seq)
    g1n, g2n = abs(coeffs.g1), abs(coeffs.g2)
    cert = certificate_order(g1n, g2n)
    notes: list[str] = []
    best = None
    for order in orders:
        fit = _fit_window(seq, theta, order, points, notes)
        if fit is None:
            continue
        slope, intercept, rms, inferred, rng, n = fit
        ok = (inferred == order and abs(slope - 2 * (order + 1)) <= SLOPE_TOL
              and rms <= RESIDUAL_TOL)
        best = OrderEstimate(slope, intercept, inferred, rng, rms, n, ok, g1n, g2n, cert,
                             tuple(notes))
        if ok:
            return best
    if best is None:
        warnings.warn("no valid fit window; only the g-coefficient certificate is available",
                      stacklevel=2)
        return OrderEstimate(math.nan, math.nan, -1, (math.nan, math.nan), math.nan, 0, False,
                             g1n, g2n, cert, tuple(notes))
    return best
