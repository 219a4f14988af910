"""Second-order off-resonance error expansion.

Writing the propagator as ``U = [[u1, -u2*], [u2, u1*]]`` with

    u1 = exp(-i phi/2) (1 + g2 (delta/2)^2 + O(delta^3))
    u2 = -i exp(i phi/2) (g1* delta/2 + O(delta^3))

the coefficients obey ``dg1/dt = exp(i phi)`` and ``dg2/dt = -exp(i phi) g1*`` with
``phi(t) = int_0^t omega``. For piecewise-constant drives both integrals are done in
closed form segment by segment; :func:`g_coefficients_quadrature_oracle` evaluates
them by brute-force quadrature for cross-checking.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from ._numerics import phi1, phi2
from .evolution import evolve
from .pulse_model import DomainError, PulseSequence

__all__ = [
    "GCoefficients",
    "phase_at",
    "g_coefficients",
    "g1_at",
    "g2_at",
    "g_coefficients_quadrature_oracle",
    "reconstruct_unitary",
    "expansion_vs_exact_check",
]

# relative slack when deciding whether t == T
_TIME_SLACK = 1e-12


@dataclass(frozen=True)
class GCoefficients:
    """Error coefficients at time ``t``; ``g0`` is identically 1."""

    t: float
    phi: float
    g1: complex
    g2: complex
    g0: complex = 1.0 + 0j

    @property
    def unitarity_defect(self) -> float:
        """``|g1|^2 + 2 Re(g2)``, zero for exact coefficients."""
        return abs(self.g1) ** 2 + 2.0 * self.g2.real


def _check_time(seq: PulseSequence, t: float) -> float:
    total = seq.duration
    slack = _TIME_SLACK * max(1.0, total)
    if not (-slack <= t <= total + slack):
        raise DomainError(f"t={t!r} outside [0, {total!r}]")
    return min(max(float(t), 0.0), total)


def phase_at(seq: PulseSequence, t: float) -> float:
    """Accumulated rotation angle ``phi(t)``."""
    t = _check_time(seq, t)
    return g_coefficients(seq, t).phi


def g_coefficients(seq: PulseSequence, t: float | None = None) -> GCoefficients:
    """``phi``, ``g1`` and ``g2`` at time ``t`` (default: the final time)."""
    t = seq.duration if t is None else _check_time(seq, t)
    phi, g1, g2 = 0.0, 0j, 0j
    elapsed = 0.0
    for seg in seq.segments:
        if elapsed >= t:
            break
        length = min(seg.duration, t - elapsed)
        if length <= 0:
            continue
        z = 1j * seg.omega * length
        e0 = cmath.exp(1j * phi)
        # int_0^L exp(i omega s) ds
        ramp = length * phi1(z)
        g2 += -e0 * g1.conjugate() * ramp - length * length * phi2(z)
        g1 += e0 * ramp
        phi += seg.omega * length
        elapsed += seg.duration
    return GCoefficients(t=t, phi=phi, g1=complex(g1), g2=complex(g2))


def g1_at(seq: PulseSequence, t: float | None = None) -> complex:
    """First-order coefficient ``g1(t) = int_0^t exp(i phi)``."""
    return g_coefficients(seq, t).g1


def g2_at(seq: PulseSequence, t: float | None = None) -> complex:
    """Second-order coefficient ``g2(t) = -int_0^t exp(i phi) g1*``."""
    return g_coefficients(seq, t).g2


def g_coefficients_quadrature_oracle(seq: PulseSequence, t: float | None = None,
                                     n_steps: int = 64, nodes: int = 5) -> GCoefficients:
    """Evaluate ``g1``, ``g2`` by composite Gauss-Legendre quadrature.

    Each segment is cut into ``n_steps`` panels. ``g1`` at every quadrature node is
    itself obtained by a nested Gauss-Legendre rule on ``[panel start, node]``, so the
    only ingredient shared with the closed form is the pointwise phase ``phi(tau)``.
    The composite rule converges as ``h**(2 * nodes)``.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    t = seq.duration if t is None else _check_time(seq, t)
    x, w = np.polynomial.legendre.leggauss(nodes)
    x01, w01 = 0.5 * (x + 1.0), 0.5 * w
    phi, g1, g2 = 0.0, 0j, 0j
    elapsed = 0.0
    for seg in seq.segments:
        if elapsed >= t:
            break
        length = min(seg.duration, t - elapsed)
        if length <= 0:
            continue
        h = length / n_steps
        starts = h * np.arange(n_steps)

        def expiphi(s):
            return np.exp(1j * (phi + seg.omega * s))

        nodes_t = starts[:, None] + h * x01[None, :]             # (panel, j)
        f_nodes = expiphi(nodes_t)
        panel_g1 = h * (f_nodes @ w01)
        g1_start = g1 + np.concatenate(([0j], np.cumsum(panel_g1)[:-1]))
        # nested rule on [start, node_j]: sub-nodes at start + x01_j * x01_k * h
        sub_t = starts[:, None, None] + h * x01[None, :, None] * x01[None, None, :]
        inner = (expiphi(sub_t) @ w01) * (h * x01)[None, :]
        g1_nodes = g1_start[:, None] + inner
        panel_g2 = -h * ((f_nodes * np.conj(g1_nodes)) @ w01)
        g1 = g1 + panel_g1.sum()
        g2 = g2 + panel_g2.sum()
        phi += seg.omega * length
        elapsed += seg.duration
    return GCoefficients(t=t, phi=phi, g1=complex(g1), g2=complex(g2))


def reconstruct_unitary(coeffs: GCoefficients, delta: float) -> np.ndarray:
    """Second-order truncation of the propagator from its error coefficients."""
    eps = 0.5 * delta
    u1 = cmath.exp(-0.5j * coeffs.phi) * (1.0 + coeffs.g2 * eps**2)
    u2 = -1j * cmath.exp(0.5j * coeffs.phi) * (coeffs.g1.conjugate() * eps)
    return np.array([[u1, -u2.conjugate()], [u2, u1.conjugate()]], dtype=complex)


def expansion_vs_exact_check(seq: PulseSequence, delta: float) -> float:
    """Max-entry deviation between the exact final propagator and its O(delta^2) truncation."""
    if abs(delta) > 0.3:
        raise DomainError(f"|delta| must be <= 0.3, got {delta!r}")
    approx = reconstruct_unitary(g_coefficients(seq), delta)
    return float(np.max(np.abs(evolve(seq, delta) - approx)))

