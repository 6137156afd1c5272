from fractions import Fraction
from math import comb
from unittest import TestCase

from sympy import primerange
from sympy.functions.combinatorial.numbers import jacobi_symbol

from thetadecomp.arith import MemoTable, bernoulli, chi, chi2, divisors, euler_number, kronecker, sigma_chi
from thetadecomp.exceptions import OddIndex

B1 = Fraction(-1, 2)


def bernoulli_any(j: int) -> Fraction:
    if j == 1:
        return B1
    if j % 2:
        return Fraction(0)
    return bernoulli(j)


class NumberTests(TestCase):
    def test_bernoulli(self):
        self.assertEqual(bernoulli(0), 1)
        self.assertEqual(bernoulli(2), Fraction(1, 6))
        self.assertEqual(bernoulli(4), Fraction(-1, 30))
        self.assertEqual(bernoulli(12), Fraction(-691, 2730))
        self.assertIsInstance(bernoulli(8), Fraction)

    def test_bernoulli_recurrence(self):
        for n in range(1, 41):
            with self.subTest(n=n):
                self.assertEqual(sum(comb(n + 1, j) * bernoulli_any(j) for j in range(n + 1)), 0)

    def test_euler(self):
        self.assertEqual([euler_number(n) for n in (0, 2, 4, 6, 8, 10)], [1, -1, 5, -61, 1385, -50521])
        self.assertIsInstance(euler_number(6), int)

    def test_euler_recurrence_and_sign(self):
        for n in range(1, 21):
            with self.subTest(n=n):
                self.assertEqual(sum(comb(2 * n, 2 * j) * euler_number(2 * j) for j in range(n + 1)), 0)
                self.assertEqual(euler_number(2 * n) > 0, n % 2 == 0)

    def test_odd_index(self):
        with self.assertRaises(OddIndex):
            bernoulli(3)
        with self.assertRaises(OddIndex):
            euler_number(5)
        with self.assertRaises(ValueError):
            bernoulli(-2)

    def test_characters(self):
        self.assertEqual([chi(n) for n in range(-3, 9)], [1, 0, -1, 0, 1, 0, -1, 0, 1, 0, -1, 0])
        self.assertEqual([chi2(n) for n in range(6)], [0, 1, 0, 1, 0, 1])

    def test_divisors(self):
        self.assertEqual(list(divisors(1)), [1])
        self.assertEqual(list(divisors(12)), [1, 2, 3, 4, 6, 12])
        self.assertEqual(list(divisors(49)), [1, 7, 49])
        with self.assertRaises(ValueError):
            list(divisors(0))

    def test_sigma_chi(self):
        self.assertEqual(sigma_chi(2, 1), 1)
        self.assertEqual(sigma_chi(2, 3), -8)
        self.assertEqual(sigma_chi(2, 5), 26)
        self.assertEqual(sigma_chi(4, 5), 626)
        self.assertEqual(sigma_chi(4, 9), 1 - 81 + 6561)
        self.assertEqual(sigma_chi(3, 2), 1)

    def test_sigma_chi_multiplicative(self):
        for m, n in ((3, 5), (5, 9), (7, 13), (9, 25)):
            with self.subTest(m=m, n=n):
                self.assertEqual(sigma_chi(4, m * n), sigma_chi(4, m) * sigma_chi(4, n))

    def test_memo_table(self):
        calls = []

        def extend(values):
            calls.append(len(values))
            return values[-1] + values[-2]

        fib = MemoTable([0, 1], extend)
        self.assertEqual(fib[10], 55)
        self.assertEqual(fib[5], 5)
        self.assertEqual(calls, list(range(2, 11)))


class KroneckerTests(TestCase):
    def test_against_jacobi(self):
        for b in range(1, 60, 2):
            for a in range(-30, 31):
                with self.subTest(a=a, b=b):
                    self.assertEqual(kronecker(a, b), jacobi_symbol(a, b))

    def test_euler_criterion(self):
        for p in primerange(3, 200):
            for a in range(p):
                with self.subTest(a=a, p=p):
                    r = pow(a, (p - 1) // 2, p)
                    self.assertEqual(kronecker(a, p), -1 if r == p - 1 else r)

    def test_even_and_special(self):
        self.assertEqual(kronecker(2, 7), 1)
        self.assertEqual(kronecker(3, 5), -1)
        self.assertEqual(kronecker(3, 8), -1)
        self.assertEqual(kronecker(7, 8), 1)
        self.assertEqual(kronecker(2, 4), 0)
        self.assertEqual(kronecker(-1, 0), 1)
        self.assertEqual(kronecker(3, 0), 0)
        self.assertEqual(kronecker(5, -3), kronecker(5, 3))
        self.assertEqual(kronecker(-5, -3), -kronecker(-5, 3))


if __name__ == "__main__":
    import unittest

    unittest.main()
