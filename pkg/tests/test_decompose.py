from fractions import Fraction
from functools import partial
from pathlib import Path
from unittest import TestCase

from thetadecomp.corpus import CATALOG, IDENTITIES
from thetadecomp.decompose import (
    DEFAULT_BASES,
    BasisSpec,
    EtaQuotient,
    cusp_part,
    decompose,
    default_basis,
    express_in_basis,
    iter_identity_corpus,
    parse_basis_file,
    verify_identity_corpus,
)
from thetadecomp.eisenstein import eis_series
from thetadecomp.exceptions import InsufficientOrder, ResidualNonzero, UnsupportedPower
from thetadecomp.series import equal_to_order, pochhammer_inf, power, shift, truncate
from thetadecomp.theta import theta_power

test_data = Path("test-data")

ORDER = 200
ACCEPTANCE_ORDER = 400

EXPECTED_CUSP = {
    10: [Fraction(-8, 5)],
    12: [Fraction(-16)],
    14: [Fraction(-91 * 2**6, 61)],
    16: [Fraction(-(2**13), 17)],
    18: [Fraction(-8, 1385), Fraction(-763 * 2**12, 1385)],
    20: [Fraction(-16, 31), Fraction(-77 * 2**12, 31)],
    22: [Fraction(-7381 * 2**6, 50521), Fraction(-138677 * 2**14, 50521)],
    24: [Fraction(-(2**16), 691), Fraction(-259 * 2**19, 691)],
}


class EtaQuotientTests(TestCase):
    def test_normalisation(self):
        eq = EtaQuotient(2, ((4, -4), (2, 7), (2, 7), (1, 0)))
        self.assertEqual(eq.factors, ((2, 14), (4, -4)))
        self.assertEqual(eq.weight, 5)
        self.assertEqual(EtaQuotient(0, ((2, 1), (2, -1))).factors, ())
        with self.assertRaises(ValueError):
            EtaQuotient(0, ((0, 1),))

    def test_parse(self):
        self.assertEqual(EtaQuotient.parse("2; 2^14 4^-4"), EtaQuotient(2, ((2, 14), (4, -4))))
        self.assertEqual(EtaQuotient.parse("0; 1"), EtaQuotient(0, ((1, 1),)))
        with self.assertRaises(ValueError):
            EtaQuotient.parse("4 2^12")

    def test_label_and_json(self):
        self.assertEqual(EtaQuotient(4, ((2, 12),)).label(), "q(q^2;q^2)^12")
        self.assertEqual(EtaQuotient(6, ((2, 10), (4, 4))).label(), "q^(3/2)(q^2;q^2)^10(q^4;q^4)^4")
        self.assertEqual(EtaQuotient(8, ((1, 1),)).label(), "q^2(q;q)")
        self.assertEqual(EtaQuotient(0, ()).label(), "1")
        self.assertEqual(
            EtaQuotient(2, ((2, 14), (4, -4))).to_json(), {"prefactor_u_exp": 2, "factors": [[2, 14], [4, -4]]}
        )

    def test_expand(self):
        eq = EtaQuotient(4, ((2, 12),))
        expected = shift(power(pochhammer_inf(2, ORDER - 4), 12), 4)
        self.assertEqual(eq.expand(ORDER), expected)
        self.assertEqual(next(eq.expand(ORDER).items()), (4, 1))

    def test_theta2_as_quotient(self):
        # theta_2 = 2 q^(1/4) (q^4;q^4)^2 / (q^2;q^2)
        eq = EtaQuotient(1, ((4, 2), (2, -1)))
        self.assertTrue(equal_to_order(2 * eq.expand(ORDER), theta_power(2, 1, 1, ORDER), ORDER))


class BasisTests(TestCase):
    def test_ordering(self):
        a = EtaQuotient(2, ((2, 30), (4, -12)))
        b = EtaQuotient(10, ((2, 6), (4, 12)))
        self.assertEqual(BasisSpec.from_unsorted([b, a]).elements, (a, b))
        with self.assertRaises(ValueError):
            BasisSpec((b, a))
        with self.assertRaises(ValueError):
            BasisSpec((a, a))

    def test_default_bases(self):
        self.assertEqual(sorted(DEFAULT_BASES), list(range(2, 25, 2)))
        self.assertEqual(default_basis(8).elements, ())
        self.assertEqual(default_basis(24).max_leading_exponent, 16)
        with self.assertRaises(UnsupportedPower):
            default_basis(26)

    def test_basis_file(self):
        basis = parse_basis_file(test_data / "basis14.txt")
        self.assertEqual(basis, default_basis(14))

    def test_bad_basis_file(self):
        with self.assertRaisesRegex(ValueError, r"basis-bad\.txt:2:"):
            parse_basis_file(test_data / "basis-bad.txt")


class DecomposeTests(TestCase):
    def test_coefficients(self):
        for two_k, expected in EXPECTED_CUSP.items():
            with self.subTest(two_k=two_k):
                cert = decompose(two_k, ORDER)
                self.assertTrue(cert.equal)
                self.assertEqual([coeff for _, coeff in cert.cusp], expected)
                self.assertEqual(cert.identity_id, f"decompose{two_k}")

    def test_eisenstein_only(self):
        for two_k in (2, 4, 6, 8):
            with self.subTest(two_k=two_k):
                self.assertTrue(cusp_part(two_k, ORDER).is_zero())
                cert = decompose(two_k, ORDER)
                self.assertTrue(cert.equal)
                self.assertEqual(cert.cusp, [])

    def test_certificate_json(self):
        obj = decompose(14, ORDER).to_json()
        self.assertEqual(obj["status"], "equal")
        self.assertEqual(obj["order_checked"], ORDER)
        self.assertEqual(obj["eis"]["constant"], "-8/61")
        self.assertEqual(obj["cusp"], [{"prefactor_u_exp": 6, "factors": [[2, 10], [4, 4]], "coeff": "-5824/61"}])

    def test_insufficient_order(self):
        with self.assertRaises(InsufficientOrder):
            decompose(24, 50)
        self.assertTrue(decompose(24, 56).equal)

    def test_residual(self):
        basis = parse_basis_file(test_data / "basis18-incomplete.txt")
        with self.assertRaises(ResidualNonzero) as cm:
            decompose(18, ORDER, basis)
        self.assertEqual(cm.exception.exponent, 2)
        self.assertEqual(cm.exception.coeff, Fraction(-8, 1385))

    def test_acceptance_order(self):
        for two_k in range(2, 25, 2):
            with self.subTest(two_k=two_k):
                cert = decompose(two_k, ACCEPTANCE_ORDER)
                self.assertTrue(cert.equal, cert.to_json())
                self.assertEqual(cert.order_checked, ACCEPTANCE_ORDER)
                self.assertEqual([coeff for _, coeff in cert.cusp], EXPECTED_CUSP.get(two_k, []))

    def test_express_in_basis(self):
        basis = default_basis(12)
        s = 3 * basis.elements[0].expand(ORDER)
        self.assertEqual(express_in_basis(s, basis, ORDER), [3])
        with self.assertRaises(ResidualNonzero):
            express_in_basis(theta_power(2, 2, 1, ORDER), basis, ORDER)


class CorpusRunTests(TestCase):
    def test_selection_order(self):
        certs = verify_identity_corpus(120, ["theta10", "theta4"])
        self.assertEqual([cert.identity_id for cert in certs], ["theta4", "theta10"])
        self.assertTrue(all(cert.equal for cert in certs))

    def test_parallel_matches_serial(self):
        ids = ["theta2", "theta6", "theta12", "s8-n3"]
        serial = [cert.to_json() for cert in iter_identity_corpus(120, ids, jobs=1)]
        parallel = [cert.to_json() for cert in iter_identity_corpus(120, ids, jobs=2)]
        self.assertEqual(serial, parallel)

    def test_negative_control(self):
        identity = CATALOG["theta8"]
        self.assertTrue(identity.verify(120).equal)
        cert = identity.verify(120, perturbation=(20, 1))
        self.assertFalse(cert.equal)
        assert cert.mismatch is not None
        self.assertEqual(cert.mismatch.exponent, 20)
        self.assertEqual(cert.to_json()["mismatch"]["u_exp"], 20)


class OrderPropagationTests(TestCase):
    def assertPropagates(self, build, order):
        small = build(order)
        big = build(order + 20)
        self.assertGreaterEqual(small.order, order)
        self.assertEqual(truncate(big, order), truncate(small, order))

    def test_pipelines(self):
        for two_k in range(2, 25, 2):
            with self.subTest(two_k=two_k):
                self.assertPropagates(partial(theta_power, 2, two_k, 1), 100)
                self.assertPropagates(lambda n: eis_series(two_k, n)[1], 100)
                self.assertPropagates(partial(cusp_part, two_k), 100)

    def test_basis_elements(self):
        for two_k, basis in DEFAULT_BASES.items():
            for el in basis.elements:
                with self.subTest(two_k=two_k, element=el.label()):
                    self.assertPropagates(el.expand, 100)

    def test_catalogue_sides(self):
        for identity in IDENTITIES:
            with self.subTest(identity=identity.identity_id):
                self.assertPropagates(identity.lhs, ORDER)
                self.assertPropagates(identity.rhs, ORDER)


if __name__ == "__main__":
    import unittest

    unittest.main()
