"""Square pulses, Short-CORPSE, and promotion of first-order robust sequences.

A sequence whose error trajectory is closed is robust to first order in the
off-resonance error. Appending one full circle (a 2pi pulse) whose signed area
cancels the enclosed area of the seed makes ``g2(T)`` vanish as well, giving
second-order robustness. The circle closes on itself, so ``g1(T)`` is untouched.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .geometry import signed_area, trajectory_of
from .perturbation import g_coefficients
from .pulse_model import DomainError, PulseSegment, PulseSequence, RotationTarget

__all__ = [
    "PreconditionError",
    "ShortCorpseAngles",
    "PromotionReport",
    "format_angle",
    "square_pulse",
    "short_corpse_angles",
    "short_corpse",
    "short_corpse_area",
    "promote_second_order",
    "promote_unit_strength",
]

FIRST_ORDER_TOL = 1e-9
SECOND_ORDER_TOL = 1e-8
ZERO_AREA_TOL = 1e-12


class PreconditionError(ValueError):
    """Raised when a seed sequence is not first-order robust."""

    def __init__(self, message: str, g1_norm: float):
        super().__init__(message)
        self.g1_norm = g1_norm


@dataclass(frozen=True)
class ShortCorpseAngles:
    kappa: float
    theta1: float
    theta2: float


@dataclass(frozen=True)
class PromotionReport:
    """Bookkeeping for one promotion.

    ``phase_flip`` is set when a 2pi rotation was appended: the promoted gate then
    equals ``-R_z(theta)`` as a matrix, which the phase-insensitive infidelity ignores.
    """

    seed_area: float
    radius: float
    appended_omega: float
    appended_duration: float
    residual_g1: float
    residual_g2: float
    residual_area: float
    phase_flip: bool
    unit_strength: bool = False

    def as_items(self) -> list[tuple[str, object]]:
        inv_r = 1.0 / self.radius if self.radius > 0 else 0.0
        return [
            ("seed_area", self.seed_area),
            ("radius", self.radius),
            ("inverse_radius", inv_r),
            ("appended_omega", self.appended_omega),
            ("appended_duration", self.appended_duration),
            ("residual_g1", self.residual_g1),
            ("residual_g2", self.residual_g2),
            ("residual_area", self.residual_area),
            ("phase_flip", self.phase_flip),
            ("unit_strength", self.unit_strength),
        ]


def _theta_of(theta) -> float:
    return theta.theta if isinstance(theta, RotationTarget) else float(theta)


def format_angle(theta: float) -> str:
    """Compact label text, e.g. ``1.5pi`` for 3pi/2."""
    k = theta / math.pi
    if abs(k - round(k, 6)) < 1e-12:
        return f"{round(k, 6):g}pi"
    return f"{theta:.17g}"


def square_pulse(theta) -> PulseSequence:
    """Single segment with ``omega = sign(theta)`` lasting ``|theta|``."""
    theta = _theta_of(theta)
    label = f"square({format_angle(theta)})"
    if theta == 0:
        return PulseSequence((), label)
    return PulseSequence.from_pairs([(math.copysign(1.0, theta), abs(theta))], label)


def short_corpse_angles(theta) -> ShortCorpseAngles:
    theta = _theta_of(theta)
    kappa = math.asin(math.sin(theta / 2) / 2)
    return ShortCorpseAngles(
        kappa=kappa,
        theta1=math.pi - kappa - theta / 2,
        theta2=2 * math.pi - 2 * kappa,
    )


def short_corpse(theta) -> PulseSequence:
    """Short-CORPSE ``[(-1, theta1), (+1, theta2), (-1, theta1)]`` for ``theta`` in (0, 2pi).

    ``theta = 0`` gives the empty sequence; ``theta = 2pi`` is reduced to 0 with a
    warning. Anything else outside ``(0, 2pi)`` raises :class:`DomainError`.
    """
    theta = _theta_of(theta)
    if theta == 2 * math.pi:
        warnings.warn("short_corpse(2pi) reduced to the equivalent empty sequence",
                      stacklevel=2)
        theta = 0.0
    label = f"short-corpse({format_angle(theta)})"
    if theta == 0:
        return PulseSequence((), label)
    if not 0 < theta < 2 * math.pi:
        raise DomainError(f"Short-CORPSE needs theta in (0, 2pi), got {theta!r}")
    a = short_corpse_angles(theta)
    pairs = [(-1.0, a.theta1), (1.0, a.theta2), (-1.0, a.theta1)]
    return PulseSequence(tuple(PulseSegment(o, d) for o, d in pairs if d > 0), label)


def short_corpse_area(theta) -> float:
    """Closed-form area enclosed by the Short-CORPSE error trajectory."""
    theta = _theta_of(theta)
    if not 0 < theta < 2 * math.pi:
        raise DomainError(f"Short-CORPSE needs theta in (0, 2pi), got {theta!r}")
    return 0.5 * (theta + math.sin(theta)
                  + math.sqrt(14 + 2 * math.cos(theta)) * math.sin(theta / 2))


def _require_first_order(seed: PulseSequence) -> float:
    g1 = abs(g_coefficients(seed).g1)
    if g1 > FIRST_ORDER_TOL:
        raise PreconditionError(
            f"seed is not first-order robust: |g1(T)| = {g1:.3e} > {FIRST_ORDER_TOL:g}", g1
        )
    return g1


def _append_circle(seed: PulseSequence, seed_area: float, radius: float,
                   omega: float, unit: bool) -> tuple[PulseSequence, PromotionReport]:
    duration = 2 * math.pi * radius
    suffix = "+unit2pi" if unit else "+2pi"
    promoted = PulseSequence(seed.segments + (PulseSegment(omega, duration),),
                             (seed.label or "seed") + suffix)
    final = g_coefficients(promoted)
    report = PromotionReport(
        seed_area=seed_area,
        radius=radius,
        appended_omega=omega,
        appended_duration=duration,
        residual_g1=abs(final.g1),
        residual_g2=abs(final.g2),
        residual_area=abs(signed_area(trajectory_of(promoted))),
        phase_flip=True,
        unit_strength=unit,
    )
    return promoted, report


def promote_second_order(seed: PulseSequence) -> tuple[PulseSequence, PromotionReport]:
    """Append the area-cancelling 2pi pulse to a first-order robust ``seed``.

    The circle has radius ``r = sqrt(|S| / pi)`` (drive ``1/r``, duration ``2 pi r``)
    and is traversed opposite to the seed's net orientation, so its signed area is
    ``-S``. Seeds with ``|S| <= 1e-12`` are returned unchanged.
    """
    g1 = _require_first_order(seed)
    area = signed_area(trajectory_of(seed))
    if abs(area) <= ZERO_AREA_TOL:
        g2 = abs(g_coefficients(seed).g2)
        return seed, PromotionReport(area, 0.0, 0.0, 0.0, g1, g2, abs(area), False)
    radius = math.sqrt(abs(area) / math.pi)
    # positive drive turns counterclockwise and adds +pi r^2
    omega = -math.copysign(1.0, area) / radius
    return _append_circle(seed, area, radius, omega, unit=False)


def promote_unit_strength(seed: PulseSequence) -> tuple[PulseSequence, PromotionReport]:
    """Like :func:`promote_second_order` but with a unit-strength, unit-radius circle.

    Cancellation is then only approximate; the leftover ``|g2(T)| = 2 |pi - |S||`` is
    reported as ``residual_g2``.
    """
    _require_first_order(seed)
    area = signed_area(trajectory_of(seed))
    omega = -1.0 if area >= 0 else 1.0
    return _append_circle(seed, area, 1.0, omega, unit=True)
