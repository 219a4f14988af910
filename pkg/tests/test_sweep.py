import math
import warnings

import numpy as np
import pytest

from dcgeom import (estimate_order, evolve_ode_oracle, infidelity, infidelity_sweep,
                    promote_second_order, short_corpse, square_pulse)
from dcgeom.sweep import certificate_order, delta_grid, fit_slope, infidelity_curve


def family(theta):
    sc = short_corpse(theta)
    return [square_pulse(theta), sc, promote_second_order(sc)[0]]


def test_delta_grid():
    np.testing.assert_allclose(delta_grid(-0.3, 0.3, 121), np.linspace(-0.3, 0.3, 121))
    g = delta_grid(1e-3, 1e-1, 3, log=True)
    np.testing.assert_allclose(g, [1e-3, 1e-2, 1e-1])
    for bad in [(0.1, 0.1, 5, False), (0.0, 0.1, 5, True), (-0.1, 0.1, 1, False)]:
        with pytest.raises(ValueError):
            delta_grid(*bad)


def test_sweep_symmetric_in_delta():
    table = infidelity_sweep(family(1.5 * math.pi), delta_grid(-0.3, 0.3, 121), 1.5 * math.pi)
    np.testing.assert_allclose(table.infidelities, table.infidelities[::-1], rtol=1e-9, atol=1e-16)
    assert np.all(table.infidelities >= 0)


def test_sweep_zero_delta():
    table = infidelity_sweep([square_pulse(math.pi)], [-0.1, 0.0, 0.1], math.pi)
    assert table.column("square(1pi)")[1] == 0.0


def test_sweep_duplicate_labels():
    with pytest.raises(ValueError, match="duplicate"):
        infidelity_sweep([square_pulse(math.pi), square_pulse(math.pi)], [0.1, 0.2])


def test_sweep_requires_increasing():
    with pytest.raises(ValueError):
        infidelity_sweep([square_pulse(math.pi)], [0.2, 0.1])


def test_promoted_pi_against_ode_oracle():
    promoted = promote_second_order(short_corpse(math.pi))[0]
    e = infidelity_curve(promoted, [0.05], math.pi)[0]
    assert e == pytest.approx(infidelity(evolve_ode_oracle(promoted, 0.05), math.pi), abs=1e-10)


def test_threads_do_not_change_results():
    seqs = family(math.pi)
    grid = delta_grid(-0.3, 0.3, 61)
    a = infidelity_sweep(seqs, grid, math.pi, threads=1).infidelities
    b = infidelity_sweep(seqs, grid, math.pi, threads=4).infidelities
    assert a.tobytes() == b.tobytes()


def test_fit_slope_exact_power_law():
    d = np.geomspace(1e-3, 1e-1, 10)
    slope, intercept, rms = fit_slope(d, 3.0 * d**4)
    assert slope == pytest.approx(4.0, abs=1e-12)
    assert intercept == pytest.approx(math.log(3.0), abs=1e-10)
    assert rms < 1e-12


def test_certificate_order():
    assert certificate_order(2.0, 1.0) == 0
    assert certificate_order(0.0, 3.0) == 1
    assert certificate_order(1e-12, 1e-12) == 2


@pytest.mark.parametrize("theta", [math.pi, 1.5 * math.pi])
def test_slope_and_certificate_agree(theta):
    for expected, seq in enumerate(family(theta)):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            est = estimate_order(seq, theta)
        assert est.accepted
        assert est.inferred_order == expected
        assert est.certified_order == expected
        assert est.agrees
        assert abs(est.slope - 2 * (expected + 1)) <= 0.3
        assert est.fit_residual <= 0.05


def test_estimate_order_rejects_higher_order_windows():
    # a promoted sequence fitted only in the order-0 window cannot be accepted
    promoted = family(math.pi)[2]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        est = estimate_order(promoted, math.pi, orders=(0,))
    assert not est.accepted
    assert est.inferred_order == 2



def test_floor_points_are_dropped_with_warning():
    # promoted sequences fall below the round-off floor in the order-0 window
    promoted = family(math.pi)[2]
    with pytest.warns(UserWarning, match="dropped"):
        est = estimate_order(promoted, math.pi, orders=(0, 2))
    assert est.accepted and est.inferred_order == 2
    assert any("dropped" in n for n in est.notes)
