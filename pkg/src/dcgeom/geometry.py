"""Error-trajectory geometry.

The curve ``(x, y) = (Re g1(t), Im g1(t))`` starts at the origin heading along +x,
moves at unit speed, and has signed curvature ``omega(t)``: positive drive bends it
counterclockwise. A piecewise-constant drive therefore traces a chain of circular
arcs (straight lines where ``omega = 0``).

Areas use the counterclockwise-positive convention ``S = 1/2 int (x dy - y dx)``, for
which ``Im g2(T) = -2 S`` on every closed trajectory.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._numerics import phi1, phi1_array, x_minus_sin_over_x2
from .perturbation import g1_at
from .pulse_model import DomainError, PulseSequence, normalize

__all__ = [
    "TrajectoryArc",
    "ErrorTrajectory",
    "trajectory_of",
    "is_closed",
    "signed_area",
    "signed_area_numeric_oracle",
    "sample_trajectory",
    "curvature_reconstruction_check",
]


@dataclass(frozen=True)
class TrajectoryArc:
    """Circular arc (or line) of the error trajectory."""

    start: complex
    signed_curvature: float
    arc_length: float
    start_heading: float

    def point_at(self, s):
        """Position after arc length ``s`` (scalar or array)."""
        s = np.asarray(s, dtype=float)
        k = self.signed_curvature
        e0 = cmath.exp(1j * self.start_heading)
        if k == 0.0:
            return self.start + e0 * s
        res = self.start + e0 * s * phi1_array(1j * k * s)
        return complex(res) if res.ndim == 0 else res

    @property
    def end(self) -> complex:
        return self.start + cmath.exp(1j * self.start_heading) * self.arc_length * phi1(
            1j * self.signed_curvature * self.arc_length
        )

    @property
    def end_heading(self) -> float:
        return self.start_heading + self.signed_curvature * self.arc_length

    @property
    def center(self) -> complex | None:
        """Center of curvature, ``None`` for a straight piece."""
        if self.signed_curvature == 0.0:
            return None
        return self.start + 1j * cmath.exp(1j * self.start_heading) / self.signed_curvature

    @property
    def center_angle(self) -> float:
        """Signed angle swept about the center (equals the segment's rotation angle)."""
        return self.signed_curvature * self.arc_length

    def area_term(self) -> float:
        """Contribution ``1/2 int (x dy - y dx)`` of this arc.

        Chord (shoelace) term plus the signed circular segment between chord and arc,
        ``(k L - sin(k L)) / (2 k^2)``, valid for any swept angle.
        """
        a, b = self.start, self.end
        chord = 0.5 * (a.conjugate() * b).imag
        length = self.arc_length
        return chord + 0.5 * length * length * x_minus_sin_over_x2(self.signed_curvature * length)


@dataclass(frozen=True)
class ErrorTrajectory:
    arcs: tuple[TrajectoryArc, ...]

    @property
    def endpoint(self) -> complex:
        return self.arcs[-1].end if self.arcs else 0j

    @property
    def length(self) -> float:
        return math.fsum(a.arc_length for a in self.arcs)

    @property
    def vertices(self) -> list[complex]:
        """Start point followed by the end point of every arc."""
        return [0j] + [a.end for a in self.arcs]


def trajectory_of(seq: PulseSequence) -> ErrorTrajectory:
    """Arc chain of the normalized sequence, one arc per segment."""
    arcs = []
    pos, heading = 0j, 0.0
    for seg in normalize(seq).segments:
        arc = TrajectoryArc(pos, seg.omega, seg.duration, heading)
        arcs.append(arc)
        pos, heading = arc.end, arc.end_heading
    return ErrorTrajectory(tuple(arcs))


def is_closed(traj: ErrorTrajectory, tol: float = 1e-10) -> bool:
    """True iff the trajectory ends within ``tol`` of the origin (first-order robustness)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return abs(traj.endpoint) <= tol


def signed_area(traj: ErrorTrajectory) -> float:
    """Signed enclosed area, counterclockwise positive.

    For an open trajectory this is the bare line integral ``1/2 int (x dy - y dx)``
    with no closing chord. Self-intersecting curves give the winding-weighted sum.
    """
    return math.fsum(a.area_term() for a in traj.arcs)


def sample_trajectory(traj: ErrorTrajectory, samples_per_arc: int = 64):
    """Dense ``(t, z)`` samples, ``samples_per_arc`` points per arc including both ends.

    Shared arc endpoints appear once; the final sample is the trajectory endpoint.
    """
    if samples_per_arc < 2:
        raise ValueError("samples_per_arc must be >= 2")
    ts, zs = [np.zeros(1)], [np.zeros(1, dtype=complex)]
    t0 = 0.0
    for arc in traj.arcs:
        s = np.linspace(0.0, arc.arc_length, samples_per_arc)[1:]
        z = arc.point_at(s)
        z[-1] = arc.end
        ts.append(t0 + s)
        zs.append(z)
        t0 += arc.arc_length
    return np.concatenate(ts), np.concatenate(zs)


def signed_area_numeric_oracle(traj: ErrorTrajectory, n_samples: int = 10_000) -> float:
    """Shoelace sum over a dense polyline through the trajectory (error ~ 1/n^2)."""
    if n_samples < 3:
        raise ValueError("n_samples must be >= 3 per arc")
    _, z = sample_trajectory(traj, n_samples)
    if z.size < 2:
        return 0.0
    return 0.5 * float(np.sum((z[:-1].conj() * z[1:]).imag))


def curvature_reconstruction_check(seq: PulseSequence, t: float, h: float = 1e-4) -> float:
    """Finite-difference signed curvature ``(x' y'' - y' x'') / |z'|^3`` of ``g1`` at ``t``.

    ``t`` must sit farther than ``h`` from every segment boundary.
    """
    bounds = normalize(seq).boundaries
    if not (h > 0 and t - h > 0 and t + h < bounds[-1]):
        raise DomainError(f"t={t!r} with h={h!r} not interior to [0, {bounds[-1]!r}]")
    nearest = min(abs(t - b) for b in bounds)
    if nearest <= h:
        raise DomainError(f"t={t!r} is within h={h!r} of a segment boundary")
    zm, z0, zp = (g1_at(seq, t - h), g1_at(seq, t), g1_at(seq, t + h))
    d1 = (zp - zm) / (2 * h)
    d2 = (zp - 2 * z0 + zm) / (h * h)
    return (d1.conjugate() * d2).imag / abs(d1) ** 3
