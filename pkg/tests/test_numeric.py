from functools import partial
from unittest import TestCase

import mpmath
import numpy as np

from thetadecomp.exceptions import BranchUnavailable, ConvergenceTooSlow, CutoffTooSmall, OddC
from thetadecomp.numeric import (
    GENERATORS,
    IDENTITY,
    ComplexPoint,
    LatticeFamily,
    S,
    SL2Matrix,
    T,
    dedekind_eta_check,
    eta_multiplier,
    eval_eta,
    eval_series,
    eval_theta,
    lattice_sum_check,
    psi_multiplier,
    random_checks,
    random_point,
    random_word,
    theta_eta_check,
    transform_check,
)
from thetadecomp.theta import theta_power

TAU = complex(0.1, 0.9)
FLOOR = 1e-2


class MatrixTests(TestCase):
    def test_group(self):
        self.assertEqual(T @ T.inverse(), IDENTITY)
        self.assertEqual(S @ S.inverse(), IDENTITY)
        self.assertEqual(str(S), "(1, 0; -2, 1)")
        with self.assertRaises(ValueError):
            SL2Matrix(1, 1, 1, 1)

    def test_normalized(self):
        self.assertEqual((-T).normalized(), T)
        self.assertEqual(S.normalized(), S)
        m = SL2Matrix(1, 1, -2, -1).normalized()
        self.assertEqual(m, SL2Matrix(-1, -1, 2, 1))
        self.assertAlmostEqual(m.apply(TAU), SL2Matrix(1, 1, -2, -1).apply(TAU))

    def test_random_word_in_gamma0_2(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            sigma = random_word(rng)
            self.assertEqual(sigma.c % 2, 0)
        self.assertEqual(len(GENERATORS), 4)

    def test_point(self):
        self.assertEqual(ComplexPoint(0.25, 1.0).tau, complex(0.25, 1.0))
        with self.assertRaises(ValueError):
            ComplexPoint(0.0, 0.0)


class EvaluationTests(TestCase):
    def test_theta_against_mpmath(self):
        for tau in (complex(0.1, 0.9), complex(-0.3, 0.5), complex(0.45, 1.3)):
            q = mpmath.exp(1j * mpmath.pi * tau)
            for j in (2, 3, 4):
                with self.subTest(j=j, tau=tau):
                    expected = complex(mpmath.jtheta(j, 0, q))
                    self.assertLess(abs(eval_theta(j, tau) - expected), 1e-13)

    def test_eta_at_i(self):
        expected = float(mpmath.gamma(0.25) / (2 * mpmath.pi**0.75))
        self.assertAlmostEqual(eval_eta(1j).real, expected, places=12)
        self.assertAlmostEqual(eval_eta(1j).imag, 0.0, places=12)

    def test_series_evaluation(self):
        s = theta_power(2, 4, 1, 400)
        self.assertLess(abs(eval_series(s, TAU) - eval_theta(2, TAU) ** 4), 1e-12)

    def test_floor(self):
        with self.assertRaises(ConvergenceTooSlow):
            eval_theta(2, complex(0, 0.01))
        with self.assertRaises(ConvergenceTooSlow):
            eval_eta(complex(0, 0.01))
        eval_theta(2, complex(0, 0.01), floor=1e-3)
        with self.assertRaises(ValueError):
            eval_theta(1, TAU)


class TransformTests(TestCase):
    def test_psi(self):
        self.assertEqual(psi_multiplier(T), 2)
        self.assertEqual(psi_multiplier(S), 0)
        self.assertEqual(psi_multiplier(-IDENTITY), 4)
        self.assertEqual(psi_multiplier(IDENTITY), 0)
        with self.assertRaises(OddC):
            psi_multiplier(SL2Matrix(1, 0, 1, 1))

    def test_psi_is_a_character(self):
        rng = np.random.default_rng(1)
        for _ in range(30):
            a = random_word(rng)
            b = random_word(rng)
            with self.subTest(a=str(a), b=str(b)):
                self.assertEqual(psi_multiplier(a @ b), (psi_multiplier(a) + psi_multiplier(b)) % 8)

    def test_generators(self):
        for sigma in GENERATORS:
            for power in (2, 4, 6, 10):
                with self.subTest(sigma=str(sigma), power=power):
                    check = transform_check(sigma, complex(0.1, 1.0), power, 1e-9)
                    self.assertTrue(check.passed, check.to_json())

    def test_wrong_multiplier_fails(self):
        # theta_2^2 is not invariant under T without the factor i
        lhs = eval_theta(2, T.apply(TAU)) ** 2
        rhs = eval_theta(2, TAU) ** 2
        self.assertGreater(abs(lhs - rhs), 1e-3)

    def test_bad_power(self):
        with self.assertRaises(ValueError):
            transform_check(T, TAU, 3, 1e-9)
        with self.assertRaises(ValueError):
            transform_check(T, TAU, 0, 1e-9)

    def test_powers_at_random_points(self):
        rng = np.random.default_rng(5)
        taus = [random_point(rng) for _ in range(10)]
        words = [random_word(rng) for _ in range(50)]
        checked = 0
        for tau in taus:
            self.assertGreaterEqual(tau.imag, 0.5)
            for sigma in (T, S, *words):
                # below the evaluation floor
                if sigma.apply(tau).imag < FLOOR:
                    continue
                checked += 1
                for power in (2, 4, 6, 8, 10, 12):
                    with self.subTest(sigma=str(sigma), tau=tau, power=power):
                        check = transform_check(sigma, tau, power, 1e-8, floor=FLOOR)
                        self.assertTrue(check.passed, check.to_json())
        self.assertGreaterEqual(checked, 50)

    def test_random_words(self):
        check = partial(transform_check, power=2, tol=1e-9, floor=FLOOR)
        results = list(random_checks(50, check, seed=0, min_im=FLOOR))
        self.assertEqual(len(results), 50)
        for sigma, tau, result in results:
            with self.subTest(sigma=str(sigma), tau=tau):
                self.assertTrue(result.passed, result.to_json())


class EtaTests(TestCase):
    def test_s_multiplier(self):
        tau = complex(0.2, 0.8)
        expected = np.exp(1j * np.pi / 6) * np.sqrt(1 - 2 * tau)
        self.assertAlmostEqual(eta_multiplier(S, tau), expected, places=12)

    def test_generators(self):
        for sigma in GENERATORS:
            with self.subTest(sigma=str(sigma)):
                check = dedekind_eta_check(sigma.normalized(), TAU, 1e-9)
                self.assertTrue(check.passed, check.to_json())

    def test_odd_d(self):
        sigma = SL2Matrix(1, 1, 2, 3)
        check = dedekind_eta_check(sigma, complex(-0.2, 1.1), 1e-9)
        self.assertTrue(check.passed, check.to_json())

    def test_branch_unavailable(self):
        with self.assertRaises(BranchUnavailable):
            eta_multiplier(SL2Matrix(-1, 0, 0, -1), TAU)

    def test_random_words(self):
        def check(sigma, tau):
            return dedekind_eta_check(sigma.normalized(), tau, 1e-9, floor=FLOOR)

        for sigma, tau, result in random_checks(20, check, seed=3, min_im=FLOOR):
            with self.subTest(sigma=str(sigma), tau=tau):
                self.assertTrue(result.passed, result.to_json())

    def test_theta_eta(self):
        for tau in (TAU, complex(-0.4, 0.6), complex(0.0, 2.0)):
            with self.subTest(tau=tau):
                check = theta_eta_check(tau, 1e-12)
                self.assertTrue(check.passed, check.to_json())


class LatticeTests(TestCase):
    def test_families(self):
        cases = [
            (LatticeFamily.M4K, 1),
            (LatticeFamily.M4K, 2),
            (LatticeFamily.M4K2STAR, 1),
            (LatticeFamily.M2K1CHI, 1),
            (LatticeFamily.M2K1CHI, 2),
        ]
        for family, k in cases:
            for tau in (1j, 1.5j, complex(0.3, 0.9)):
                with self.subTest(family=family.value, k=k, tau=tau):
                    check = lattice_sum_check(family, k, tau, 400, 1e-6)
                    self.assertTrue(check.passed, check.to_json())
                    self.assertEqual(check.cutoff, 400)
                    assert check.tail is not None
                    self.assertLess(check.tail, 1e-6)

    def test_family_at_default_point(self):
        for family in LatticeFamily:
            with self.subTest(family=family.value):
                check = lattice_sum_check(family, 1, TAU, 400, 1e-6)
                self.assertTrue(check.passed, check.to_json())

    def test_cutoff_too_small(self):
        with self.assertRaises(CutoffTooSmall):
            lattice_sum_check(LatticeFamily.M2K1CHI, 1, TAU, 4, 1e-12)
        with self.assertRaises(CutoffTooSmall):
            lattice_sum_check(LatticeFamily.M4K, 1, TAU, 1, 1e-6)

    def test_bad_arguments(self):
        with self.assertRaises(ValueError):
            lattice_sum_check(LatticeFamily.M4K, 0, TAU, 100, 1e-6)


if __name__ == "__main__":
    import unittest

    unittest.main()
