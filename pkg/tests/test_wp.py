from fractions import Fraction
from unittest import TestCase

from thetadecomp.exceptions import OddIndex
from thetadecomp.series import equal_to_order
from thetadecomp.theta import e_values, theta_constants, theta_power
from thetadecomp.wp import (
    BivarPoly,
    WpPoint,
    half_lattice_xy,
    odd_combo_lambert_form,
    quarter_point_seeds,
    wp_even_at_half_lattice,
    wp_even_difference,
    wp_leibniz_chain,
    wp_odd_combo,
    wp_poly_eval,
    wp_quarter_combo,
    wp_quarter_point,
    wp_quarter_point_lambert,
    wp_recurrence_poly,
    wp_value,
)

ORDER = 200


class BivarPolyTests(TestCase):
    def test_arithmetic(self):
        x = BivarPoly.x()
        y = BivarPoly.y()
        p = 3 * (x * y) + y * y
        self.assertEqual(p.terms, {(1, 1): 3, (0, 2): 1})
        self.assertEqual(p + (-3) * (x * y), y * y)
        self.assertEqual(BivarPoly({(2, 0): 0}).terms, {})

    def test_format_and_json(self):
        self.assertEqual(wp_recurrence_poly(8).format(), "1728x^3y + 2592xy^2")
        self.assertEqual(BivarPoly({}).format(), "0")
        self.assertEqual(BivarPoly({(1, 0): -1, (0, 1): Fraction(1, 2)}).format(), "-x + 1/2y")
        self.assertEqual(wp_recurrence_poly(4).to_json(), {"terms": [[1, 1, "12/1"]]})


class RecurrenceTests(TestCase):
    def test_small_polynomials(self):
        x = BivarPoly.x()
        y = BivarPoly.y()
        self.assertEqual(wp_recurrence_poly(0), x)
        self.assertEqual(wp_recurrence_poly(2), y)
        self.assertEqual(wp_recurrence_poly(4), 12 * (x * y))
        self.assertEqual(wp_recurrence_poly(6), 36 * (4 * (x * x * y) + y * y))
        self.assertEqual(wp_recurrence_poly(8), 1728 * (x * x * x * y + Fraction(3, 2) * (x * y * y)))
        self.assertEqual(
            wp_recurrence_poly(10), 1728 * (12 * (x * x * x * x * y) + 81 * (x * x * y * y) + 7 * (y * y * y))
        )

    def test_weight_homogeneity(self):
        for two_k in range(2, 25, 2):
            with self.subTest(two_k=two_k):
                self.assertTrue(wp_recurrence_poly(two_k).is_homogeneous(two_k + 2))

    def test_odd_index(self):
        with self.assertRaises(OddIndex):
            wp_recurrence_poly(3)
        with self.assertRaises(ValueError):
            wp_recurrence_poly(-2)

    def test_recurrence_matches_lambert(self):
        order = 480
        for k in range(1, 9):
            with self.subTest(k=k):
                lhs = wp_poly_eval(wp_recurrence_poly(2 * k), order)
                self.assertTrue(equal_to_order(lhs, wp_even_at_half_lattice(k, order), order))

    def test_closed_forms(self):
        th = theta_constants(ORDER)
        self.assertTrue(equal_to_order(wp_even_at_half_lattice(1, ORDER), 2 * (th.a * th.b), ORDER))
        rhs = -8 * ((th.a + th.b) * th.a * th.b)
        self.assertTrue(equal_to_order(wp_even_at_half_lattice(2, ORDER), rhs, ORDER))

        x, y = half_lattice_xy(ORDER)
        self.assertEqual(x, e_values(ORDER)[1])
        self.assertEqual(y, wp_even_at_half_lattice(1, ORDER))

    def test_differences(self):
        th = theta_constants(ORDER)
        self.assertTrue(equal_to_order(wp_even_difference(0, ORDER), -th.a, ORDER))
        d2 = wp_even_difference(2, ORDER)
        self.assertEqual(next(d2.items()), (4, -256))
        rhs = -8 * (2 * theta_power(2, 12, 1, ORDER) + 2 * (th.a * th.b * th.c))
        self.assertTrue(equal_to_order(d2, rhs, ORDER))

        with self.assertRaises(ValueError):
            wp_even_difference(-1, ORDER)
        with self.assertRaises(ValueError):
            wp_even_at_half_lattice(0, ORDER)


class QuarterPointTests(TestCase):
    def test_seeds_match_lambert(self):
        seeds = quarter_point_seeds(ORDER)
        for derivative in range(3):
            with self.subTest(derivative=derivative):
                lambert = wp_quarter_point_lambert(derivative, ORDER)
                self.assertTrue(equal_to_order(seeds[derivative], lambert, ORDER))
        with self.assertRaises(ValueError):
            wp_quarter_point_lambert(3, ORDER)

    def test_chain_obeys_differential_equation(self):
        # wp'' = 6 wp^2 - g2 / 2, so the chain's second entry after the seeds is 12 wp wp'
        seeds = quarter_point_seeds(ORDER)
        chain = wp_leibniz_chain(seeds, 3)
        self.assertEqual(len(chain), 4)
        self.assertTrue(equal_to_order(chain[3], 12 * (seeds[0] * seeds[1]), ORDER))

    def test_chain_arguments(self):
        seeds = quarter_point_seeds(ORDER)
        with self.assertRaises(ValueError):
            wp_leibniz_chain(seeds[:2], 4)
        with self.assertRaises(ValueError):
            wp_leibniz_chain(seeds, 4, odd_sign=2)

    def test_odd_combo_forms(self):
        for k in range(1, 5):
            for sign in (-1, 1):
                with self.subTest(k=k, sign=sign):
                    self.assertTrue(
                        equal_to_order(wp_odd_combo(k, sign, ORDER), odd_combo_lambert_form(k, sign, ORDER), ORDER)
                    )

    def test_odd_combo_theta(self):
        th2 = theta_constants(ORDER, 2)
        first = wp_odd_combo(1, -1, ORDER)
        self.assertEqual(next(first.items()), (4, 32))
        self.assertTrue(equal_to_order(first, 4 * (th2.theta2_sq * (th2.b + th2.c)), ORDER))
        self.assertTrue(equal_to_order(wp_odd_combo(1, 1, ORDER), -4 * theta_power(2, 6, 2, ORDER), ORDER))

        with self.assertRaises(ValueError):
            wp_odd_combo(1, 0, ORDER)
        with self.assertRaises(ValueError):
            wp_odd_combo(0, 1, ORDER)

    def test_quarter_combo(self):
        for k in range(1, 4):
            for sign in (-1, 1):
                with self.subTest(k=k, sign=sign):
                    combo = wp_quarter_combo(k, sign, ORDER)
                    self.assertTrue(equal_to_order(combo, wp_odd_combo(k, sign, ORDER), ORDER))

    def test_values(self):
        e1, e2, e3 = e_values(ORDER)
        self.assertEqual(wp_value(WpPoint.HALF_LATTICE_TAU, 0, ORDER), e2)
        self.assertEqual(wp_value(WpPoint.HALF_LATTICE_BOTH, 0, ORDER), e3)
        self.assertTrue(wp_value(WpPoint.HALF_LATTICE_TAU, 3, ORDER).is_zero())
        self.assertEqual(wp_value(WpPoint.QUARTER_A, 1, ORDER), wp_quarter_point(1, ORDER))

        both = wp_value(WpPoint.HALF_LATTICE_BOTH, 2, ORDER)
        self.assertTrue(equal_to_order(both, wp_even_at_half_lattice(1, ORDER) - wp_even_difference(1, ORDER), ORDER))

        with self.assertRaises(ValueError):
            wp_value(WpPoint.QUARTER_B, -1, ORDER)


if __name__ == "__main__":
    import unittest

    unittest.main()
