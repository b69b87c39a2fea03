"""End-to-end smoke tests for the Python bindings.

Each test pins one operation from a different module against a value that is
known in closed form, so an import, conversion, or linking problem in the
extension shows up immediately.
"""

import math

import numpy as np
import pytest

import qworldline as qw

ZERO3 = [0.0, 0.0, 0.0]
ZERO33 = [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]


def test_version_is_exposed():
    assert qw.__version__ == qw._core.__version__
    assert qw.__version__.count(".") == 2


def test_localization_bound_of_accelerated_worldline():
    traj = qw.TrajectoryModel.uniform_acceleration(2.0)
    assert math.isclose(qw.fermi_bound(traj, [0.0]), 0.5, rel_tol=1e-12)
    inertial = qw.TrajectoryModel.inertial()
    assert math.isinf(qw.fermi_bound(inertial, [0.0]))


def test_volume_identity_on_a_curved_frame():
    frame = qw.constant_curvature_sample(0.0, 0.04, [0.3, 0.0, 0.0])
    g = qw.eval_fermi_metric(frame, [0.05, -0.02, 0.01])
    v = qw.volume_factors(g)
    assert math.isclose(v.sqrt_g_sigma * qw.redshift_exact(g), v.sqrt_minus_g, rel_tol=1e-12)


def test_corrected_oscillator_closed_form():
    corr = qw.oscillator_corrected_spectrum(qw.OscillatorSpec(1.0, 1.0), 0.19, [0.09, 0.0, 0.0])
    assert corr.valid
    assert math.isclose(corr.omega_prime, 0.9, rel_tol=1e-12)
    assert math.isclose(corr.ground_shift, -0.005, rel_tol=1e-12)


def test_momentum_acts_as_derivative():
    n = 1001
    grid = qw.Grid1D.uniform(n, -10.0, 10.0)
    ops = qw.build_grid_operators(grid)
    x = np.array([grid.x(k) for k in range(n)])
    psi = np.exp(-0.5 * x * x).astype(complex)
    psi[0] = psi[-1] = 0.0
    out = qw.apply(ops.p, qw.WaveFunction.from_samples(grid, psi))
    expected = -1j * (-x) * np.exp(-0.5 * x * x)
    assert np.max(np.abs(out[1:-1] - expected[1:-1])) < 1e-6


def test_oscillator_ladder_from_diagonalization():
    grid = qw.Grid1D.uniform(401, -8.0, 8.0)
    frame = qw.constant_curvature_sample(0.0, 0.0, ZERO3)
    h = qw.assemble_hamiltonian(qw.OscillatorSpec(1.0, 1.0), frame, qw.HamiltonianMode.Bare, grid)
    for k, pair in enumerate(qw.diagonalize(h, grid, 3)):
        assert abs(pair.energy - (1.0 + k + 0.5)) < 1e-4


def test_noise_probability_hand_value():
    det = qw.UDWDetector(
        gap=0.0,
        coupling=1.0,
        switching=qw.GaussianSwitching.of(1.0),
        internal=qw.OscillatorSpec(1.0, 1.0),
    )
    frame = qw.FermiFrameSample(0.0, [0.1, 0.0, 0.0], ZERO33)
    p = qw.rel_noise_probability(det, frame, 0, 1)
    assert math.isclose(p, 0.005 * 2.0 * math.pi * math.exp(-1.0), rel_tol=1e-12)


def test_config_run_is_deterministic():
    doc = "command = bound\na = 2\n"
    csv = qw.run_config_text(doc)
    assert "5.00000000000e-01" in csv
    assert csv == qw.run_config_text(doc)
    assert qw.config_hash(doc) == qw.config_hash("a = 2\ncommand = bound\n")


def test_config_errors_surface_as_value_error():
    with pytest.raises(ValueError):
        qw.run_config_text("command = orbit\n")
    with pytest.raises(ValueError):
        qw.run_config_text("command = respond\nn = 1\nm = 1\n")
