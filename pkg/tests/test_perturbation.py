import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_sequence, sequences
from dcgeom import (DomainError, PulseSegment, PulseSequence, expansion_vs_exact_check,
                    g1_at, g2_at, g_coefficients, g_coefficients_quadrature_oracle,
                    phase_at, short_corpse, short_corpse_angles, square_pulse,
                    total_rotation_angle)

SQRT7 = math.sqrt(7)


def test_phase_square():
    s = square_pulse(3.0)
    for t in (0.0, 0.4, 2.9, 3.0):
        assert phase_at(s, t) == pytest.approx(t, abs=1e-15)


def test_phase_short_corpse_end():
    s = short_corpse(1.5 * math.pi)
    assert phase_at(s, s.duration) == pytest.approx(total_rotation_angle(s), abs=1e-12)


def test_time_domain():
    s = square_pulse(1.0)
    for bad in (-0.1, 1.1):
        with pytest.raises(DomainError):
            g1_at(s, bad)
        with pytest.raises(DomainError):
            phase_at(s, bad)


@pytest.mark.parametrize("t", [0.0, 0.3, 1.7, 4.0, 2 * math.pi])
def test_g1_single_segment(t):
    s = square_pulse(2 * math.pi)
    assert g1_at(s, t) == pytest.approx(-1j * (cmath.exp(1j * t) - 1), abs=1e-14)


@pytest.mark.parametrize("theta", [math.pi / 4, math.pi / 2, math.pi, 1.5 * math.pi])
def test_short_corpse_closes(theta):
    assert abs(g1_at(short_corpse(theta))) <= 1e-12


def test_short_corpse_vertex_b():
    # mirror image (complex conjugate) of the printed vertex B; see README on orientation
    s = short_corpse(1.5 * math.pi)
    t1 = short_corpse_angles(1.5 * math.pi).theta1
    b = complex((-1 + SQRT7) / 4, (3 - SQRT7) / 4)
    assert g1_at(s, t1) == pytest.approx(b.conjugate(), abs=1e-12)


def test_g2_initial():
    assert g2_at(short_corpse(math.pi), 0.0) == 0


def test_g2_full_circle():
    # -int_0^{2pi} e^{it} * i(e^{-it} - 1) dt = -2 pi i
    s = square_pulse(2 * math.pi)
    assert g2_at(s) == pytest.approx(-2j * math.pi, abs=1e-13)
    assert g_coefficients_quadrature_oracle(s, n_steps=256).g2 == pytest.approx(-2j * math.pi, abs=1e-12)


def test_g2_short_corpse_three_halves():
    g2 = g2_at(short_corpse(1.5 * math.pi))
    assert g2.imag == pytest.approx(-(2 * SQRT7 - 2 + 3 * math.pi) / 2, abs=1e-9)
    assert abs(g2.real) <= 1e-10


@settings(max_examples=150, deadline=None)
@given(sequences, st.floats(0.0, 1.0))
def test_unitarity_identity(s, frac):
    c = g_coefficients(s, frac * s.duration)
    assert abs(c.unitarity_defect) <= 1e-10 * max(1.0, abs(c.g1) ** 2)
    assert c.g0 == 1


@settings(max_examples=60, deadline=None)
@given(sequences.filter(lambda s: s.duration > 1e-3), st.floats(0.0, 1.0))
def test_unit_speed(s, frac):
    h = 1e-6
    t = frac * (s.duration - h)
    assert abs(g1_at(s, t + h) - g1_at(s, t)) / h == pytest.approx(1.0, abs=1e-5)


@settings(max_examples=60, deadline=None)
@given(sequences, st.sampled_from([-1.0, 1.0, 0.5, -2.0]))
def test_appending_2pi_circle_keeps_g1(s, omega):
    circle = PulseSegment(omega, 2 * math.pi / abs(omega))
    assert g1_at(s.append(circle)) == pytest.approx(g1_at(s), abs=1e-12)


def test_small_omega_branch_is_continuous():
    base = g_coefficients(PulseSequence.from_pairs([(0.0, 2.0), (1.0, 1.0)]))
    for eps in (1e-12, 1e-9, 1e-7, 1e-5):
        near = g_coefficients(PulseSequence.from_pairs([(eps, 2.0), (1.0, 1.0)]))
        assert near.g1 == pytest.approx(base.g1, abs=10 * eps + 1e-15)
        assert near.g2 == pytest.approx(base.g2, abs=10 * eps + 1e-15)


def test_quadrature_oracle_short_corpse():
    s = short_corpse(math.pi)
    ref = g_coefficients(s)
    q = g_coefficients_quadrature_oracle(s, n_steps=100_000)
    assert abs(q.g1 - ref.g1) <= 1e-8
    assert abs(q.g2 - ref.g2) <= 1e-8


def test_quadrature_oracle_square_pi():
    q = g_coefficients_quadrature_oracle(square_pulse(math.pi))
    assert q.g1 == pytest.approx(2j, abs=1e-12)


def test_quadrature_oracle_at_zero():
    q = g_coefficients_quadrature_oracle(short_corpse(math.pi), 0.0)
    assert (q.g1, q.g2) == (0, 0)


def test_quadrature_oracle_random(random_sequences):
    for s in random_sequences:
        for t in (0.37 * s.duration, s.duration):
            ref = g_coefficients(s, t)
            q = g_coefficients_quadrature_oracle(s, t)
            assert abs(q.g1 - ref.g1) <= 1e-8
            assert abs(q.g2 - ref.g2) <= 1e-8


def test_quadrature_oracle_convergence_order():
    # two-node Gauss-Legendre: global error ~ h^4
    s = short_corpse(1.5 * math.pi)
    ref = g2_at(s)
    errs = [abs(g_coefficients_quadrature_oracle(s, n_steps=n, nodes=2).g2 - ref)
            for n in (16, 32, 64)]
    rates = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
    assert all(abs(r - 4) < 0.2 for r in rates), rates


def test_expansion_zero_delta():
    assert expansion_vs_exact_check(short_corpse(math.pi), 0.0) <= 1e-12


@pytest.mark.parametrize("make", [lambda: short_corpse(math.pi), lambda: square_pulse(math.pi)])
def test_expansion_is_third_order(make):
    s = make()
    r1 = expansion_vs_exact_check(s, 1e-2)
    r2 = expansion_vs_exact_check(s, 5e-3)
    assert r1 <= 10 * 1e-6
    assert r2 / r1 == pytest.approx(0.125, abs=0.02)


def test_expansion_domain():
    with pytest.raises(DomainError):
        expansion_vs_exact_check(square_pulse(1.0), 0.4)


def test_expansion_random(rng):
    for _ in range(10):
        s = random_sequence(rng)
        r1 = expansion_vs_exact_check(s, 2e-3)
        r2 = expansion_vs_exact_check(s, 1e-3)
        assert r2 / r1 == pytest.approx(0.125, abs=0.02)
