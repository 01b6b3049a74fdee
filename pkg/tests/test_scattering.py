import unittest
from dataclasses import replace

import numpy as np
from scipy.signal import find_peaks

from antiptkit.domain.dips import combined_spectrum, dip_analysis
from antiptkit.domain.effective import eliminate_cavity
from antiptkit.domain.errors import ParameterError
from antiptkit.domain.models import params_digest, swap_magnons
from antiptkit.domain.scattering import (
    ProbeSpec,
    default_grid,
    reflection,
    reflection_cavity,
    reflection_cavity_effective,
    reflection_effective,
    reflection_magnon1,
    reflection_magnon2,
    reflection_oracle,
    spectrum,
    steady_state,
)
from tests.helpers import cavity_readout, decoupled, magnon_readout, random_params

PORTS = ("magnon1", "magnon2", "cavity")


class OracleEquivalenceTests(unittest.TestCase):
    def test_closed_forms_match_linear_solve(self):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            params = random_params(rng)
            frequencies = rng.uniform(-15, 15, size=16)
            for port in PORTS:
                closed = reflection(params, port, frequencies)
                for omega_p, value in zip(frequencies, closed):
                    oracle = reflection_oracle(params, port, float(omega_p))
                    self.assertLess(abs(complex(value) - oracle), 1e-10, msg=(port, omega_p, params))

    def test_coupling_phases_enter_consistently(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            params = replace(
                random_params(rng),
                coupling_phase13=rng.uniform(-0.2, 0.2),
                coupling_phase23=rng.uniform(-0.2, 0.2),
            )
            omega_p = rng.uniform(-10, 10)
            for port in PORTS:
                closed = complex(reflection(params, port, omega_p))
                self.assertLess(abs(closed - reflection_oracle(params, port, omega_p)), 1e-10)


class PhysicalPropertyTests(unittest.TestCase):
    def test_passivity_on_random_configs(self):
        rng = np.random.default_rng(99)
        grid = np.linspace(-20, 20, 201)
        for _ in range(300):
            params = random_params(rng)
            for port in PORTS:
                self.assertLessEqual(np.max(np.abs(reflection(params, port, grid))), 1 + 1e-12)

    def test_cavity_readout_ignores_drive_phases(self):
        params = cavity_readout()
        grid = default_grid(params, points=101)
        reference = np.abs(reflection_cavity(params, grid))
        shifted = replace(params, phi13=1.1, phi23=-2.3)
        np.testing.assert_allclose(np.abs(reflection_cavity(shifted, grid)), reference, atol=1e-15)

    def test_relabeling_swaps_magnon_ports(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            params = random_params(rng)
            grid = rng.uniform(-10, 10, size=8)
            swapped = swap_magnons(params)
            np.testing.assert_allclose(
                reflection_magnon1(swapped, grid), reflection_magnon2(params, grid), atol=1e-12
            )
            np.testing.assert_allclose(
                reflection_magnon2(swapped, grid), reflection_magnon1(params, grid), atol=1e-12
            )

    def test_steady_state_is_linear_in_drive(self):
        params = magnon_readout()
        one = steady_state(params, ProbeSpec("magnon1", np.array([1.0]), drive=1.0), 1.0)
        two = steady_state(params, ProbeSpec("magnon1", np.array([1.0]), drive=2.0), 1.0)
        np.testing.assert_allclose(two, 2.0 * one, rtol=1e-13)

    def test_critical_coupling_extinguishes_reflection(self):
        params = decoupled(magnon_readout())
        self.assertAlmostEqual(abs(reflection_magnon1(params, 2.7)), 0.0, places=14)
        self.assertAlmostEqual(abs(reflection_magnon2(params, -2.7)), 0.0, places=14)


class EffectiveReflectionTests(unittest.TestCase):
    def test_decoupled_effective_matches_closed_form(self):
        params = decoupled(magnon_readout())
        grid = np.linspace(-10, 10, 51)
        H = eliminate_cavity(params).H
        np.testing.assert_allclose(
            reflection_effective(H, (1.11, 1.11), 0, grid), reflection_magnon1(params, grid), atol=1e-13
        )
        np.testing.assert_allclose(
            reflection_effective(H, (1.11, 1.11), 1, grid), reflection_magnon2(params, grid), atol=1e-13
        )

    def test_effective_close_to_full_model_at_large_kappa(self):
        params = magnon_readout(1000.0)
        grid = np.linspace(-10, 10, 201)
        H = eliminate_cavity(params).H
        effective = np.abs(reflection_effective(H, (1.11, 1.11), 0, grid))
        full = np.abs(reflection_magnon1(params, grid))
        self.assertLess(np.max(np.abs(effective - full)), 0.03)

    def test_scalar_input_gives_scalar(self):
        H = eliminate_cavity(magnon_readout()).H
        self.assertIsInstance(reflection_effective(H, (1.11, 1.11), 0, 0.5), complex)


class SpectrumTests(unittest.TestCase):
    def test_spectrum_fields(self):
        params = magnon_readout()
        grid = default_grid(params, points=401)
        spec = spectrum(params, ProbeSpec("magnon1", grid))
        self.assertEqual(len(spec), 401)
        self.assertEqual(spec.port, "magnon1")
        self.assertEqual(spec.params_hash, params_digest(params))
        np.testing.assert_allclose(spec.magnitude, np.abs(spec.t))
        np.testing.assert_allclose(spec.magnitude_db, 20 * np.log10(spec.magnitude))

    def test_default_grid(self):
        grid = default_grid(magnon_readout())
        self.assertEqual(grid.size, 2001)
        self.assertAlmostEqual(grid[0], -25.0)
        self.assertAlmostEqual(grid[-1], 25.0)

    def test_table1_combined_shows_dips_near_detunings(self):
        params = magnon_readout()
        grid = default_grid(params)
        combined = combined_spectrum(
            spectrum(params, ProbeSpec("magnon1", grid)),
            spectrum(params, ProbeSpec("magnon2", grid)),
        )
        report = dip_analysis(combined)
        deepest = sorted(report.dips, key=lambda d: -d.depth)[:2]
        centers = sorted(d.frequency for d in deepest)
        # Antenna cross terms pull the dips off the eigenfrequencies ±2.66 unevenly.
        self.assertAlmostEqual(centers[0], -2.7, delta=0.45)
        self.assertAlmostEqual(centers[1], 2.7, delta=0.45)
        self.assertAlmostEqual(report.separation, 5.4, delta=0.27)
        self.assertTrue(report.resolvable)

    def test_magnon1_dip_at_its_own_frequency(self):
        params = magnon_readout()
        grid = default_grid(params)
        spec = spectrum(params, ProbeSpec("magnon1", grid))
        self.assertAlmostEqual(grid[int(np.argmin(spec.magnitude))], 2.7, delta=0.3)

    def test_missing_antenna_is_rejected(self):
        with self.assertRaises(ParameterError):
            spectrum(cavity_readout(), ProbeSpec("magnon1", np.array([0.0])))


class CavityReadoutTests(unittest.TestCase):
    def test_critical_cavity_extinguishes_without_magnons(self):
        params = decoupled(cavity_readout())
        self.assertAlmostEqual(params.cavity.gamma_int, params.cavity.port_rate(3))
        self.assertLess(abs(reflection_cavity(params, params.cavity.omega)), 1e-6)
        self.assertLess(abs(reflection_oracle(params, "cavity", params.cavity.omega)), 1e-6)

    def test_two_peaks_persist_as_kappa_decreases(self):
        for kappa in (80.0, 50.0, 34.8, 20.0, 10.0):
            params = cavity_readout(kappa)
            grid = np.linspace(-10.0, 10.0, 4001)
            magnitude = np.abs(reflection_cavity(params, grid))
            peaks, props = find_peaks(magnitude, prominence=1e-3)
            self.assertGreaterEqual(peaks.size, 2, msg=kappa)
            top = peaks[np.argsort(props["prominences"])[-2:]]
            left, right = sorted(grid[top])
            self.assertLess(left, 0.0, msg=kappa)
            self.assertGreater(right, 0.0, msg=kappa)
            for position in (-left, right):
                self.assertGreater(position, 2.8, msg=kappa)
                self.assertLess(position, 4.1, msg=kappa)


class EffectiveCavityReflectionTests(unittest.TestCase):
    def test_uncoupled_cavity_matches_closed_form(self):
        params = decoupled(cavity_readout())
        grid = np.linspace(-30, 30, 61)
        t = reflection_cavity_effective(
            eliminate_cavity(params).H,
            (0.0, 0.0),
            (0.0, 0.0),
            params.kappa,
            params.cavity.port_rate(3),
            params.cavity.omega,
            grid,
        )
        np.testing.assert_allclose(t, reflection_cavity(params, grid), atol=1e-13)

    def test_close_to_full_model_at_large_kappa(self):
        params = cavity_readout(400.0)
        grid = np.linspace(-10, 10, 201)
        t = reflection_cavity_effective(
            eliminate_cavity(params).H,
            (params.g13, params.g23),
            (params.g13, params.g23),
            params.kappa,
            params.cavity.port_rate(3),
            params.cavity.omega,
            grid,
        )
        self.assertLess(np.max(np.abs(np.abs(t) - np.abs(reflection_cavity(params, grid)))), 0.02)

    def test_scalar_input_gives_scalar(self):
        params = cavity_readout()
        value = reflection_cavity_effective(
            eliminate_cavity(params).H, (1.0, 1.0), (1.0, 1.0), 50.0, 25.0, 0.0, 0.5
        )
        self.assertIsInstance(value, complex)


class ProbeSpecTests(unittest.TestCase):
    def test_invalid_probe_specs(self):
        with self.assertRaises(ParameterError):
            ProbeSpec("magnon1", np.array([]))
        with self.assertRaises(ParameterError):
            ProbeSpec("magnon1", np.array([1.0, 1.0]))
        with self.assertRaises(ParameterError):
            ProbeSpec("magnon1", np.array([0.0]), drive=0.0)
        with self.assertRaises(ParameterError):
            ProbeSpec("antenna9", np.array([0.0]))

    def test_unknown_port(self):
        with self.assertRaises(ParameterError):
            reflection(magnon_readout(), "antenna9", 0.0)


if __name__ == "__main__":
    unittest.main()
