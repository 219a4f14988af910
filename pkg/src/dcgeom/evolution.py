"""Exact propagation under ``H = omega sigma_z/2 + delta sigma_x/2``.

Unitaries are plain ``(2, 2)`` complex numpy arrays. ``delta`` is the signed
off-resonance error, constant over the whole sequence.
"""
from __future__ import annotations

import math

import numpy as np

from .pulse_model import PulseSegment, PulseSequence, RotationTarget

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "IDENTITY",
    "segment_propagator",
    "evolve",
    "evolve_ode_oracle",
    "target_unitary",
    "infidelity",
]

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _theta_of(target) -> float:
    return target.theta if isinstance(target, RotationTarget) else float(target)


def segment_propagator(seg: PulseSegment, delta: float = 0.0) -> np.ndarray:
    r"""Closed-form :math:`\exp(-i(\Omega\sigma_z + \delta\sigma_x)\Delta t/2)`."""
    omega, dt = seg.omega, seg.duration
    w = math.hypot(omega, delta)
    if w == 0.0:
        return IDENTITY.copy()
    c = math.cos(0.5 * w * dt)
    s = math.sin(0.5 * w * dt)
    nz, nx = omega / w, delta / w
    return np.array(
        [[c - 1j * s * nz, -1j * s * nx],
         [-1j * s * nx, c + 1j * s * nz]],
        dtype=complex,
    )


def evolve(seq: PulseSequence, delta: float = 0.0) -> np.ndarray:
    """Time-ordered product ``U_n ... U_1``; later segments act on the left."""
    u = IDENTITY.copy()
    for seg in seq.segments:
        u = segment_propagator(seg, delta) @ u
    return u


def evolve_ode_oracle(seq: PulseSequence, delta: float = 0.0, max_step: float = 0.02,
                      order: int = 8) -> np.ndarray:
    """Integrate ``i dU/dt = H U`` with a fixed-step Taylor method of the given order.

    Reference solution for tests only; steps never straddle a segment boundary.
    """
    u = IDENTITY.copy()
    for seg in seq.segments:
        if seg.duration == 0:
            continue
        n = max(1, math.ceil(seg.duration / max_step))
        h = seg.duration / n
        gen = -0.5j * h * (seg.omega * SIGMA_Z + delta * SIGMA_X)
        # one-step map sum_k (h A)^k / k!
        step = IDENTITY.copy()
        term = IDENTITY.copy()
        for k in range(1, order + 1):
            term = term @ gen / k
            step = step + term
        for _ in range(n):
            u = step @ u
    return u


def target_unitary(target) -> np.ndarray:
    """``R_z(theta) = diag(exp(-i theta/2), exp(i theta/2))``."""
    theta = _theta_of(target)
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def infidelity(u: np.ndarray, target) -> float:
    """Gate infidelity ``1 - |Tr(R_z(theta)^dagger u)| / 2``.

    Insensitive to global phase. For unitary ``u`` the value is evaluated as
    ``|V - (Tr V / 2) I|_F^2 / (2 (1 + |Tr V| / 2))`` with ``V = R^dagger u``, which is
    algebraically identical but free of the cancellation in ``1 - |Tr V|/2``.
    """
    v = target_unitary(target).conj().T @ np.asarray(u, dtype=complex)
    half_trace = 0.5 * (v[0, 0] + v[1, 1])
    a = abs(half_trace)
    off = v - half_trace * IDENTITY
    e = float(np.vdot(off, off).real) / (2.0 * (1.0 + a))
    return min(max(e, 0.0), 1.0)
