import math
import unittest
from dataclasses import replace

import numpy as np

from antiptkit.domain.effective import (
    antipt_matrix,
    antipt_parameters,
    antipt_residual,
    classify_phase,
    discriminant,
    effective_coupling,
    eigvals_antipt,
    eigvals_general,
    eliminate_cavity,
    ep_kappa,
    reduce_to_antipt,
)
from antiptkit.domain.errors import EPUnattainableError, ParameterError
from antiptkit.domain.models import ModeParams, Port, SystemParams, build_dynamical_matrix, with_kappa
from tests.helpers import magnon_readout, random_params


def pair_distance(first, second) -> float:
    """Largest mismatch of two eigenvalue pairs under the better of the two pairings."""
    a, b = complex(first[0]), complex(first[1])
    c, d = complex(second[0]), complex(second[1])
    return min(max(abs(a - c), abs(b - d)), max(abs(a - d), abs(b - c)))


def _degenerate(center: float = 5.0) -> SystemParams:
    return SystemParams(
        magnon1=ModeParams("magnon1", center, 1.0, (Port(1, 0.8),)),
        magnon2=ModeParams("magnon2", center, 1.0, (Port(2, 0.8),)),
        cavity=ModeParams("cavity", center, 2.0, (Port(3, 40.0),)),
        g13=5.0,
        g23=5.0,
    )


class EffectiveCouplingTests(unittest.TestCase):
    def test_table1_ep_coupling(self):
        self.assertAlmostEqual(effective_coupling(6.53, 15.8), 2.699, places=3)

    def test_trivial_values(self):
        self.assertEqual(effective_coupling(0.0, 3.0), 0.0)
        self.assertEqual(effective_coupling(1.0, 1.0), 1.0)

    def test_zero_kappa(self):
        with self.assertRaises(ParameterError):
            effective_coupling(1.0, 0.0)


class EliminateCavityTests(unittest.TestCase):
    def test_decoupled_limit_is_diagonal(self):
        p = replace(magnon_readout(), g13=0.0, g23=0.0)
        H = eliminate_cavity(p).H
        np.testing.assert_allclose(H, np.diag([2.7 - 2.22j, -2.7 - 2.22j]), atol=1e-14)

    def test_degenerate_limit_is_the_antipt_form(self):
        p = _degenerate(center=5.0)
        shifted = eliminate_cavity(p).H - 5.0 * np.eye(2)
        np.testing.assert_allclose(shifted, reduce_to_antipt(p).H, atol=1e-14)

    def test_table1_entries(self):
        p = magnon_readout()
        eff = eliminate_cavity(p)
        self.assertEqual((eff.form, eff.frame), ("general", "lab"))
        H = eff.H
        g2 = 6.65 * 6.41
        delta13 = 0.0 - 2.7
        delta23 = 0.0 - (-2.7)
        self.assertAlmostEqual(H[0, 1], -1j * g2 / (105.0 - 1j * delta23), places=12)
        self.assertAlmostEqual(H[1, 0], -1j * g2 / (105.0 - 1j * delta13), places=12)
        self.assertAlmostEqual(H[0, 1], 0.0104 - 0.4057j, delta=1e-4)
        self.assertNotAlmostEqual(H[0, 1], H[1, 0], places=6)

    def test_matches_entrywise_formula(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            p = random_params(rng)
            w1, w2, w3 = p.magnon1.omega, p.magnon2.omega, p.cavity.omega
            r13 = 1.0 / (p.kappa - 1j * (w3 - w1))
            r23 = 1.0 / (p.kappa - 1j * (w3 - w2))
            expected = np.array(
                [
                    [w1 - 1j * (p.gamma1 + p.g13**2 * r13), -1j * p.g13 * p.g23 * r23],
                    [-1j * p.g13 * p.g23 * r13, w2 - 1j * (p.gamma2 + p.g23**2 * r23)],
                ]
            )
            np.testing.assert_allclose(eliminate_cavity(p).H, expected, atol=1e-12)

    def test_off_diagonals_are_antipt_for_mirrored_detunings(self):
        H = eliminate_cavity(magnon_readout()).H
        self.assertAlmostEqual(H[1, 0], -H[0, 1].conjugate(), places=14)

    def test_converges_to_full_model(self):
        base = magnon_readout()
        errors = []
        for factor in (50, 100, 200, 400):
            kappa = factor * base.gamma1
            p = with_kappa(base, kappa)
            effective = eigvals_general(eliminate_cavity(p))
            full = np.linalg.eigvals(1j * build_dynamical_matrix(p).M)
            magnon = full[np.argsort(np.abs(full.imag))[:2]]
            errors.append(pair_distance(effective, magnon) / np.max(np.abs(magnon)))
        self.assertTrue(all(b < a for a, b in zip(errors, errors[1:])), errors)
        self.assertLess(errors[-1], 0.02)


class AntiPTFormTests(unittest.TestCase):
    def test_antipt_relation_holds_exactly(self):
        rng = np.random.default_rng(5)
        sigma_x = np.array([[0, 1], [1, 0]])
        for _ in range(50):
            eff = reduce_to_antipt(random_params(rng))
            self.assertEqual((eff.form, eff.frame), ("antiPT", "rotating"))
            np.testing.assert_allclose(sigma_x @ eff.H.conj() @ sigma_x, -eff.H, atol=1e-14)

    def test_table1_gamma_at_reported_ep(self):
        sym = antipt_parameters(magnon_readout(15.8))
        self.assertAlmostEqual(sym.Gamma, 2.7, delta=0.01)
        self.assertAlmostEqual(sym.Omega, 2.7)
        self.assertAlmostEqual(sym.g, 6.53)

    def test_large_kappa_limit(self):
        H = reduce_to_antipt(magnon_readout(1e9)).H
        np.testing.assert_allclose(H, np.diag([2.7 - 2.22j, -2.7 - 2.22j]), atol=1e-6)

    def test_weak_elimination_is_a_warning(self):
        with self.assertLogs("antiptkit.domain.effective", level="WARNING") as logs:
            reduce_to_antipt(magnon_readout(15.8))
        self.assertIn("Warning", logs.output[0])


class EigenvalueTests(unittest.TestCase):
    def test_exceptional_point_is_degenerate(self):
        plus, minus = eigvals_antipt(2.7, 2.7, 2.22)
        self.assertEqual(plus, minus)
        self.assertAlmostEqual(plus, complex(0, -(2.22 + 2.7)))

    def test_uncoupled_modes(self):
        plus, minus = eigvals_antipt(2.7, 0.0, 2.22)
        self.assertAlmostEqual(plus, 2.7 - 2.22j)
        self.assertAlmostEqual(minus, -2.7 - 2.22j)

    def test_broken_phase_values(self):
        plus, minus = eigvals_antipt(2.7, 1.35, 2.22)
        self.assertAlmostEqual(plus.real, math.sqrt(2.7**2 - 1.35**2), places=12)
        self.assertAlmostEqual(plus.real, 2.338, places=3)
        self.assertAlmostEqual(minus.real, -plus.real, places=12)
        self.assertAlmostEqual(plus.imag, -(2.22 + 1.35), places=12)
        self.assertAlmostEqual(minus.imag, plus.imag, places=12)

    def test_symmetric_phase_is_purely_imaginary(self):
        plus, minus = eigvals_antipt(2.7, 3.5, 2.22)
        self.assertEqual(plus.real, 0.0)
        self.assertEqual(minus.real, 0.0)
        self.assertNotAlmostEqual(plus.imag, minus.imag)

    def test_closed_form_matches_numeric_eigensolve(self):
        rng = np.random.default_rng(9)
        for _ in range(200):
            omega, gamma_c, gamma = rng.uniform(-5, 5), rng.uniform(0, 8), rng.uniform(0, 3)
            closed = eigvals_antipt(omega, gamma_c, gamma)
            numeric = np.linalg.eigvals(antipt_matrix(omega, gamma_c, gamma))
            self.assertLess(pair_distance(closed, numeric), 1e-11)

    def test_general_diagonal(self):
        plus, minus = eigvals_general(np.diag([1.0 - 1j, 3.0 - 2j]))
        self.assertEqual((plus, minus), (3.0 - 2j, 1.0 - 1j))

    def test_general_characteristic_identities(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            H = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            plus, minus = eigvals_general(H)
            self.assertAlmostEqual(plus + minus, np.trace(H), places=10)
            self.assertAlmostEqual(plus * minus, np.linalg.det(H), places=10)
            self.assertGreaterEqual(plus.real, minus.real)

    def test_general_table1_real_parts(self):
        p = magnon_readout()
        plus, minus = eigvals_general(eliminate_cavity(p))
        for value in (plus.real - p.frame_center, -(minus.real - p.frame_center)):
            self.assertLess(abs(value - 2.7) / 2.7, 0.05)

    def test_discriminant_of_antipt_pair(self):
        pair = eigvals_antipt(2.7, 1.35, 2.22)
        self.assertAlmostEqual(discriminant(pair), 2.7**2 - 1.35**2, places=12)

    def test_general_requires_2x2(self):
        with self.assertRaises(ParameterError):
            eigvals_general(np.eye(3))


class ClassifyPhaseTests(unittest.TestCase):
    def test_regimes(self):
        self.assertEqual(classify_phase(2.7, 2.0).regime, "broken")
        self.assertEqual(classify_phase(2.7, 3.5).regime, "symmetric")
        self.assertEqual(classify_phase(2.7, 2.7).regime, "exceptional")

    def test_discriminant_sign(self):
        self.assertGreater(classify_phase(2.7, 2.0).discriminant, 0)
        self.assertLess(classify_phase(2.7, 3.5).discriminant, 0)

    def test_tolerance_widens_the_exceptional_band(self):
        self.assertEqual(classify_phase(2.7, 2.69).regime, "broken")
        self.assertEqual(classify_phase(2.7, 2.69, tol=0.01).regime, "exceptional")

    def test_negative_tolerance(self):
        with self.assertRaises(ParameterError):
            classify_phase(1.0, 1.0, tol=-1.0)


class EPKappaTests(unittest.TestCase):
    def test_table1_values(self):
        self.assertAlmostEqual(ep_kappa(6.53, 2.7), 15.79, places=2)
        self.assertAlmostEqual(ep_kappa(9.69, 2.7), 34.78, places=2)
        self.assertEqual(ep_kappa(1.0, 1.0), 1.0)

    def test_zero_detuning_is_unattainable(self):
        with self.assertRaises(EPUnattainableError):
            ep_kappa(6.53, 0.0)

    def test_regime_flips_at_ep_kappa(self):
        kappa0 = ep_kappa(6.53, 2.7)
        below = classify_phase(2.7, effective_coupling(6.53, 0.99 * kappa0)).regime
        above = classify_phase(2.7, effective_coupling(6.53, 1.01 * kappa0)).regime
        self.assertEqual((below, above), ("symmetric", "broken"))


class AntiPTResidualTests(unittest.TestCase):
    def test_constructed_form_has_zero_residual(self):
        self.assertLess(antipt_residual(reduce_to_antipt(magnon_readout())), 1e-14)

    def test_hermitian_matrix_violates_antipt(self):
        self.assertGreater(antipt_residual(np.array([[1.0, 2.0], [2.0, 1.0]])), 0.0)

    def test_general_form_residual_decreases_with_kappa(self):
        residuals = [
            antipt_residual(eliminate_cavity(magnon_readout(kappa)))
            for kappa in (10.0, 20.0, 50.0, 105.0, 200.0, 400.0)
        ]
        self.assertGreater(residuals[3], 0.0)
        self.assertTrue(all(b < a for a, b in zip(residuals, residuals[1:])), residuals)


if __name__ == "__main__":
    unittest.main()
