import numpy as np
import pytest

import oscbath as ob
from oscbath.amplitudes import (amplitudes_at, survival_amplitude,
                                survival_series, system_row_series)

G = 0.1


class TestAmplitudesAt:
    def test_t_zero_series(self, two_osc_sd, two_osc_spec):
        h = ob.build_hamiltonian(two_osc_spec)
        amps = amplitudes_at(two_osc_sd, 0.0)
        assert np.abs(amps.a - np.eye(2)).max() <= 1e-15
        assert np.abs(amps.adot - (-1j) * h).max() <= 1e-15
        assert np.abs(amps.addot - (-(h @ h))).max() <= 1e-14

    def test_uncoupled_is_diagonal_phases(self):
        spec = ob.ModelSpec(omega=1.0, bath_frequencies=np.array([0.5, 1.5]),
                            couplings=np.zeros(2))
        sd = ob.eigendecompose(ob.build_hamiltonian(spec))
        t = 2.7
        amps = amplitudes_at(sd, t)
        expected = np.diag(np.exp(-1j * np.array([1.0, 0.5, 1.5]) * t))
        assert np.abs(amps.a - expected).max() <= 1e-14

    def test_resonant_closed_form(self, two_osc_sd):
        for t in (0.3, 1.7, 4.0):
            amps = amplitudes_at(two_osc_sd, t)
            phase = np.exp(-1j * t)
            assert abs(amps.a[0, 0] - phase * np.cos(G * t)) <= 1e-12
            assert abs(amps.a[0, 1] - (-1j) * phase * np.sin(G * t)) <= 1e-12

    def test_unitarity_and_bound(self, bath51_sd):
        for t in (0.0, 1.0, 10.0, 50.0):
            amps = amplitudes_at(bath51_sd, t)
            assert amps.unitarity_defect() <= 1e-10
            assert np.abs(amps.a).max() <= 1 + 1e-12

    def test_derivative_finite_difference(self, bath51_sd):
        t, step = 3.0, 1e-5
        amps = amplitudes_at(bath51_sd, t)
        fd = (amplitudes_at(bath51_sd, t + step).a
              - amplitudes_at(bath51_sd, t - step).a) / (2 * step)
        assert np.abs(amps.adot - fd).max() <= 1e-6
        fd2 = (amplitudes_at(bath51_sd, t + step).adot
               - amplitudes_at(bath51_sd, t - step).adot) / (2 * step)
        assert np.abs(amps.addot - fd2).max() <= 1e-6

    def test_group_property(self, bath51_sd):
        rng = np.random.default_rng(11)
        for t1, t2 in rng.uniform(0, 10, size=(4, 2)):
            a1 = amplitudes_at(bath51_sd, t1).a
            a2 = amplitudes_at(bath51_sd, t2).a
            a12 = amplitudes_at(bath51_sd, t1 + t2).a
            # A[n, m](t) = <m|e^{-iht}|n>  =>  matrices compose transposed
            assert np.abs(a12 - (a2.T @ a1.T).T).max() <= 1e-9

    def test_rejects_nonfinite_time(self, two_osc_sd):
        with pytest.raises(ValueError, match="finite"):
            amplitudes_at(two_osc_sd, np.inf)


class TestSurvival:
    def test_t_zero(self, two_osc_sd):
        assert survival_amplitude(two_osc_sd, 0.0) == pytest.approx(1.0)

    def test_uncoupled_phase(self):
        spec = ob.ModelSpec(omega=1.3, bath_frequencies=np.zeros(0),
                            couplings=np.zeros(0))
        sd = ob.eigendecompose(ob.build_hamiltonian(spec))
        t = 5.0
        assert abs(survival_amplitude(sd, t) - np.exp(-1.3j * t)) <= 1e-14

    def test_matches_matrix_entry(self, bath51_sd):
        t = 7.3
        assert abs(survival_amplitude(bath51_sd, t)
                   - amplitudes_at(bath51_sd, t).a[0, 0]) <= 1e-13
        assert abs(survival_amplitude(bath51_sd, t)) <= 1 + 1e-12

    def test_series_matches_pointwise(self, bath51_sd):
        times = np.linspace(0, 20, 9)
        a00, adot00, addot00 = survival_series(bath51_sd, times)
        for i, t in enumerate(times):
            amps = amplitudes_at(bath51_sd, t)
            assert abs(a00[i] - amps.a[0, 0]) <= 1e-13
            assert abs(adot00[i] - amps.adot[0, 0]) <= 1e-12
            assert abs(addot00[i] - amps.addot[0, 0]) <= 1e-11

    def test_system_row_series(self, bath51_sd):
        times = np.array([0.0, 4.2])
        rows = system_row_series(bath51_sd, times)
        full = amplitudes_at(bath51_sd, 4.2).a[0, :]
        assert np.abs(rows[1] - full).max() <= 1e-13


def test_recurrence_revival(bath51_sd, bath51_spec):
    spacing = np.diff(bath51_spec.bath_frequencies)[0]
    t_rec = 2 * np.pi / spacing
    decayed = np.abs(survival_series(bath51_sd, np.arange(0.3 * t_rec, 0.7 * t_rec, 0.5))[0])
    revival = np.abs(survival_series(
        bath51_sd, np.arange(0.9 * t_rec, 1.1 * t_rec, 0.5))[0])
    assert revival.max() >= 5 * decayed.min()
