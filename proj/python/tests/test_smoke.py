import math

import numpy as np
import pytest

import elliptic_dyson as ed


def test_theta_values():
    assert abs(ed.theta(1, 0.0, 1j)) < 1e-15
    direct = sum(math.exp(-math.pi * n * n) for n in range(-30, 31))
    assert abs(ed.theta(3, 0.0, 1j) - direct) < 1e-12


def test_eta_and_a_function():
    assert abs(ed.dedekind_eta(1j) - 0.7682254223260566) < 1e-12
    assert ed.a_func(3, 0.4, -0.7) == pytest.approx(-ed.a_func(3, 0.4, 0.7), rel=1e-12)
    assert ed.eta1(2, 1e4) == pytest.approx(math.pi / 12, rel=1e-12)


def test_factorization():
    u = [0.4, 1.3, 2.5]
    for fam in ["B", "C", "D", "BC"]:
        a = ed.macdonald_det(fam, u, 0.9)
        b = ed.factorized_det(fam, u, 0.9)
        assert abs(a / b - 1) < 1e-9
    assert ed.cal_n("D", 3) == 4


def test_martingale_normalized_at_start():
    u = [0.7, 2.0]
    assert ed.d_mart("C", u, 0.0, u) == pytest.approx(1.0, abs=1e-12)


def test_kernel_mass_and_gap():
    k = ed.Kernel("D", [0.8, 2.3])
    xs = np.linspace(0.0, math.pi, 2001)
    dens = k.density_grid(0.3, xs)
    assert np.all(dens > -1e-9)
    assert np.trapezoid(dens, xs) == pytest.approx(2.0, abs=1e-5)
    g = k.gap_probability(0.3, 0.5, 1.5)
    assert 0.0 <= g <= 1.0


def test_equilibrium_density_mass():
    xs = np.linspace(0.0, math.pi, 4001)
    vals = [ed.equilibrium_density("C", x, 3) for x in xs]
    assert np.trapezoid(vals, xs) == pytest.approx(3.0, abs=1e-6)


def test_simulation_shapes_and_determinism():
    a = ed.simulate("EllipticD", [0.8, 2.3], [0.1, 0.2], n_paths=200, dt=1e-3, seed=4, t_star=1.0)
    b = ed.simulate("EllipticD", [0.8, 2.3], [0.1, 0.2], n_paths=200, dt=1e-3, seed=4, t_star=1.0, threads=2)
    assert a["positions"].shape == (200, 2, 2)
    assert np.array_equal(a["positions"], b["positions"])
    assert not a["flagged"].any()


def test_errors_are_raised():
    with pytest.raises(ed.EllipticDysonError):
        ed.cal_n("E8", 3)
    with pytest.raises(ed.EllipticDysonError):
        ed.a_func(3, 0.4, 0.0)


def test_run_suite_report():
    rep = ed.run_suite("kolmogorov", families=["D"])
    assert rep["schema"] == 1
    assert rep["summary"]["all_pass"]
