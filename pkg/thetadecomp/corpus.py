"""Catalogue of the q-series identities checked by `verify`.

Every identity has a stable id, a section tag and two side builders which take
the u-order to expand to.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .certificates import IdentityCertificate
from .decompose import EtaQuotient
from .eisenstein import (
    eis_series,
    eis_series_partial_fraction,
    lambert_side,
    odd_two_term,
    palin_P,
    partial_fraction_side,
    sigma_progression,
    two_term_lambert,
)
from .exceptions import InternalMismatch
from .series import QSeries, equal_to_order, lambert_series, perturb, pochhammer_inf, rational_lambert, shift_half
from .theta import ThetaConstants, e_values, g_invariants, theta2_product, theta_constants, theta_power
from .wp import (
    quarter_point_seeds,
    wp_even_at_half_lattice,
    wp_even_difference,
    wp_poly_eval,
    wp_quarter_point_lambert,
    wp_recurrence_poly,
)

logger = logging.getLogger(__name__)

Side = Callable[[int], QSeries]

SECTIONS = ("prelim", "display", "list", "supplement", "recurrence", "polynomials")


@dataclass(frozen=True)
class Identity:
    identity_id: str
    section: str
    description: str
    lhs: Side
    rhs: Side

    def verify(self, order: int, perturbation: Optional[Tuple[int, int]] = None) -> IdentityCertificate:
        left = self.lhs(order)
        right = self.rhs(order)
        if perturbation is not None:
            left = perturb(left, *perturbation)
        check = equal_to_order(left, right, order)
        logger.info("%s: %s to order %d", self.identity_id, "equal" if check else "mismatch", order)
        return IdentityCertificate.from_check(
            self.identity_id, check, section=self.section, description=self.description
        )


def eta(prefactor_u_exp: int, *factors: Tuple[int, int]) -> Side:
    quotient = EtaQuotient(prefactor_u_exp, factors)
    return quotient.expand


def th(order: int) -> ThetaConstants:
    return theta_constants(order)


def th2(order: int) -> ThetaConstants:
    """theta constants of 2 tau"""
    return theta_constants(order, 2)


def lam(k: int) -> Side:
    """sum n^(2k+1) q^n / (1 - q^(2n))"""
    return lambda N: lambert_series(lambda n: n ** (2 * k + 1), lambda n: 4 * n, lambda n: 8 * n, N)


def odd(k: int) -> Side:
    """sum (2n+1)^(2k+1) q^(2n+1) / (1 - q^(4n+2))"""
    return lambda N: lambert_series(
        lambda n: (2 * n + 1) ** (2 * k + 1), lambda n: 4 * (2 * n + 1), lambda n: 8 * (2 * n + 1), N, first=0
    )


def s1(two_k: int) -> Side:
    return lambda N: sigma_progression(two_k, 1, N)


def s3(two_k: int) -> Side:
    return lambda N: sigma_progression(two_k, 3, N)


def theta2_pow(n: int, scale: int = 1) -> Side:
    return lambda N: theta_power(2, n, scale, N)


def combine(*terms: Tuple[Fraction, Side]) -> Side:
    def side(N: int) -> QSeries:
        out = QSeries.zero(N)
        for c, f in terms:
            out = out + c * f(N)
        return out

    return side


def _shifted(derivative: int, expected_phase: int) -> Side:
    def side(N: int) -> QSeries:
        phase, b = shift_half(wp_quarter_point_lambert(derivative, N))
        if phase != expected_phase:
            raise InternalMismatch(f"wp^({derivative}) at tau + 1/2 has phase i^{phase}, expected i^{expected_phase}")
        return b

    return side


def _odd_two_term_sum(two_k: int, sign: int) -> Side:
    def side(N: int) -> QSeries:
        plus, minus = odd_two_term(two_k, N)
        return plus + sign * minus

    return side


def _psi_power(n: int) -> Side:
    """psi(q)^n = (q^2;q^2)^(2n) / (q;q)^n"""

    return eta(0, (2, 2 * n), (1, -n))


def _prelim() -> List[Identity]:
    def e(i: int) -> Side:
        return lambda N: e_values(N)[i]

    def g(i: int) -> Side:
        return lambda N: g_invariants(N)[i]

    def half_period_wp2(i: int) -> Side:
        def side(N: int) -> QSeries:
            g2, _ = g_invariants(N)
            ei = e_values(N)[i]
            return 6 * (ei * ei) - g2 / 2

        return side

    def quarter_wp1_squared(N: int) -> QSeries:
        p1 = quarter_point_seeds(N)[1]
        return p1 * p1

    def quarter_ode1(N: int) -> QSeries:
        p0 = quarter_point_seeds(N)[0]
        g2, g3 = g_invariants(N)
        return 4 * (p0 * p0 * p0) - g2 * p0 - g3

    def quarter_ode2(N: int) -> QSeries:
        p0, _, _ = quarter_point_seeds(N)
        g2, _ = g_invariants(N)
        return 6 * (p0 * p0) - g2 / 2

    return [
        Identity(
            "jacobi-quartic",
            "prelim",
            "theta_3^4 = theta_2^4 + theta_4^4",
            lambda N: th(N).b,
            lambda N: th(N).a + th(N).c,
        ),
        Identity(
            "triple-product-theta4",
            "prelim",
            "theta_4 = (q;q)^2 / (q^2;q^2)",
            lambda N: th(N).theta4,
            eta(0, (1, 2), (2, -1)),
        ),
        Identity(
            "triple-product-theta3",
            "prelim",
            "theta_3 = (q^2;q^2)^5 / ((q;q)^2 (q^4;q^4)^2)",
            lambda N: th(N).theta3,
            eta(0, (2, 5), (1, -2), (4, -2)),
        ),
        Identity(
            "half-argument",
            "prelim",
            "theta_2 theta_3 = theta_2^2(tau/2) / 2",
            lambda N: th(N).theta2 * th(N).theta3,
            lambda N: theta_power(2, 2, Fraction(1, 2), N) / 2,
        ),
        Identity(
            "double-argument",
            "prelim",
            "theta_3 theta_4 = theta_4^2(2 tau)",
            lambda N: th(N).theta3 * th(N).theta4,
            lambda N: theta_power(4, 2, 2, N),
        ),
        Identity(
            "theta2-product",
            "prelim",
            "theta_2 = 2 q^(1/4) (q^4;q^4)^2 / (q^2;q^2)",
            lambda N: th(N).theta2,
            theta2_product,
        ),
        Identity("e-sum", "prelim", "e_1 + e_2 + e_3 = 0", lambda N: sum(e_values(N), QSeries.zero(N)), QSeries.zero),
        Identity("e-difference", "prelim", "e_1 - e_3 = theta_4^4", lambda N: e(0)(N) - e(2)(N), lambda N: th(N).c),
        Identity(
            "g2-roots",
            "prelim",
            "g_2 = -4 (e_1 e_2 + e_1 e_3 + e_2 e_3)",
            g(0),
            lambda N: -4 * (e(0)(N) * e(1)(N) + e(0)(N) * e(2)(N) + e(1)(N) * e(2)(N)),
        ),
        Identity(
            "g2-theta",
            "prelim",
            "g_2 = 4/3 (theta_3^8 + theta_2^8 - theta_2^4 theta_3^4)",
            g(0),
            lambda N: Fraction(4, 3) * (th(N).b * th(N).b + th(N).a * th(N).a - th(N).a * th(N).b),
        ),
        Identity("g3-roots", "prelim", "g_3 = 4 e_1 e_2 e_3", g(1), lambda N: 4 * (e(0)(N) * e(1)(N) * e(2)(N))),
        Identity(
            "e2-lambert",
            "prelim",
            "e_2 = -1/3 (1 + 24 sum n q^n / (1 + q^n))",
            e(1),
            lambda N: -(1 + 24 * lambert_series(lambda n: n, lambda n: 4 * n, lambda n: 4 * n, N, ratio=-1)) / 3,
        ),
        Identity(
            "wp-difference-lambert",
            "prelim",
            "wp(pi tau/2) - wp((pi + pi tau)/2) = -16 sum (2n+1) q^(2n+1) / (1 - q^(4n+2))",
            lambda N: e(1)(N) - e(2)(N),
            lambda N: wp_even_difference(0, N),
        ),
        Identity(
            "wp-difference-theta",
            "prelim",
            "-16 sum (2n+1) q^(2n+1) / (1 - q^(4n+2)) = -theta_2^4",
            lambda N: wp_even_difference(0, N),
            lambda N: -th(N).a,
        ),
        Identity(
            "wp2-half-pi",
            "prelim",
            "wp''(pi/2) = 2 theta_3^4 theta_4^4",
            half_period_wp2(0),
            lambda N: 2 * (th(N).b * th(N).c),
        ),
        Identity(
            "wp2-half-tau",
            "prelim",
            "wp''(pi tau/2) = 2 theta_2^4 theta_3^4",
            half_period_wp2(1),
            lambda N: 2 * (th(N).a * th(N).b),
        ),
        Identity(
            "wp2-half-tau-lambert",
            "prelim",
            "wp''(pi tau/2) = 32 sum n^3 q^n / (1 - q^(2n))",
            half_period_wp2(1),
            lambda N: wp_even_at_half_lattice(1, N),
        ),
        Identity(
            "wp2-half-tau-theta8",
            "prelim",
            "2 theta_2^4 theta_3^4 = theta_2^8(tau/2) / 8",
            lambda N: 2 * (th(N).a * th(N).b),
            lambda N: theta_power(2, 8, Fraction(1, 2), N) / 8,
        ),
        Identity(
            "wp2-half-both",
            "prelim",
            "wp''((pi + pi tau)/2) = -2 theta_2^4 theta_4^4",
            half_period_wp2(2),
            lambda N: -2 * (th(N).a * th(N).c),
        ),
        Identity(
            "quarter-wp0",
            "prelim",
            "wp((pi + 2 pi tau)/4) = -1/3 (theta_3^4(2 tau) - 5 theta_2^4(2 tau))",
            lambda N: quarter_point_seeds(N)[0],
            lambda N: wp_quarter_point_lambert(0, N),
        ),
        Identity(
            "quarter-wp1",
            "prelim",
            "wp'((pi + 2 pi tau)/4) = 4 theta_2^2(2 tau) theta_4^4(2 tau)",
            lambda N: quarter_point_seeds(N)[1],
            lambda N: wp_quarter_point_lambert(1, N),
        ),
        Identity(
            "quarter-wp2",
            "prelim",
            "wp''((pi + 2 pi tau)/4) = -16 theta_2^4(2 tau) theta_4^4(2 tau)",
            lambda N: quarter_point_seeds(N)[2],
            lambda N: wp_quarter_point_lambert(2, N),
        ),
        Identity(
            "quarter-shift-wp0",
            "prelim",
            "tau + 1/2: wp = -1/3 (theta_4^4(2 tau) + 5 theta_2^4(2 tau))",
            lambda N: quarter_point_seeds(N, shifted=True)[0],
            _shifted(0, 0),
        ),
        Identity(
            "quarter-shift-wp1",
            "prelim",
            "tau + 1/2: wp' = 4i theta_2^2(2 tau) theta_3^4(2 tau)",
            lambda N: quarter_point_seeds(N, shifted=True)[1],
            _shifted(1, 1),
        ),
        Identity(
            "quarter-shift-wp2",
            "prelim",
            "tau + 1/2: wp'' = 16 theta_2^4(2 tau) theta_3^4(2 tau)",
            lambda N: quarter_point_seeds(N, shifted=True)[2],
            _shifted(2, 0),
        ),
        Identity(
            "quarter-ode1",
            "prelim",
            "wp'^2 = 4 wp^3 - g_2 wp - g_3 at (pi + 2 pi tau)/4",
            quarter_wp1_squared,
            quarter_ode1,
        ),
        Identity(
            "quarter-ode2",
            "prelim",
            "wp'' = 6 wp^2 - g_2/2 at (pi + 2 pi tau)/4",
            lambda N: quarter_point_seeds(N)[2],
            quarter_ode2,
        ),
    ]


def _display() -> List[Identity]:
    def eis(two_k: int) -> Side:
        return lambda N: eis_series(two_k, N)[1]

    def two_term(e: int, sign: int) -> Side:
        return lambda N: two_term_lambert(e, sign, N)

    F = Fraction
    return [
        Identity(
            "theta2",
            "display",
            "theta_2^2 = 4 sum (-1)^n q^(n+1/2) / (1 - q^(2n+1))",
            theta2_pow(2),
            lambda N: 4 * lambert_series(lambda n: (-1) ** n, lambda n: 4 * n + 2, lambda n: 8 * n + 4, N, first=0),
        ),
        Identity(
            "theta4",
            "display",
            "theta_2^4 = 16 sum (2n+1) q^(2n+1) / (1 - q^(4n+2))",
            theta2_pow(4),
            combine((F(16), odd(0))),
        ),
        Identity(
            "theta6",
            "display",
            "theta_2^6 = 4 q^(1/2) sum (2n+1)^2 (q^n / (1 + q^(2n+1)) - (-1)^n q^n / (1 - q^(2n+1)))",
            theta2_pow(6),
            combine((F(4), two_term(2, -1))),
        ),
        Identity(
            "theta8",
            "display",
            "theta_2^8 = 256 sum n^3 q^(2n) / (1 - q^(4n))",
            theta2_pow(8),
            combine((F(256), eis(8))),
        ),
        Identity(
            "theta10",
            "display",
            "5 theta_2^10 = 4 q^(1/2) sum (2n+1)^4 (...) - 8 q^(1/2) (q^2;q^2)^14 / (q^4;q^4)^4",
            combine((F(5), theta2_pow(10))),
            combine((F(4), two_term(4, 1)), (F(-8), eta(2, (2, 14), (4, -4)))),
        ),
        Identity(
            "theta12",
            "display",
            "theta_2^12 = 16 sum (2n+1)^5 q^(2n+1) / (1 - q^(4n+2)) - 16 q (q^2;q^2)^12",
            theta2_pow(12),
            combine((F(16), eis(12)), (F(-16), eta(4, (2, 12)))),
        ),
        Identity(
            "theta14",
            "display",
            "61 theta_2^14 = 4 q^(1/2) sum (2n+1)^6 (...) - 91 * 2^6 q^(3/2) (q^2;q^2)^10 (q^4;q^4)^4",
            combine((F(61), theta2_pow(14))),
            combine((F(4), two_term(6, -1)), (F(-91 * 2**6), eta(6, (2, 10), (4, 4)))),
        ),
        Identity(
            "theta16",
            "display",
            "17 theta_2^16 = 2^13 sum n^7 q^(2n) / (1 - q^(4n)) - 2^13 q^2 (q^2;q^2)^8 (q^4;q^4)^8",
            combine((F(17), theta2_pow(16))),
            combine((F(2**13), eis(16)), (F(-(2**13)), eta(8, (2, 8), (4, 8)))),
        ),
        Identity(
            "theta18",
            "display",
            "1385 theta_2^18 = 4 q^(1/2) sum (2n+1)^8 (...) - 8 q^(1/2) (q^2;q^2)^30 / (q^4;q^4)^12"
            " - 763 * 2^12 q^(5/2) (q^2;q^2)^6 (q^4;q^4)^12",
            combine((F(1385), theta2_pow(18))),
            combine(
                (F(4), two_term(8, 1)),
                (F(-8), eta(2, (2, 30), (4, -12))),
                (F(-763 * 2**12), eta(10, (2, 6), (4, 12))),
            ),
        ),
        Identity(
            "theta20",
            "display",
            "31 theta_2^20 = 16 sum (2n+1)^9 q^(2n+1) / (1 - q^(4n+2)) - 16 q (q^2;q^2)^28 / (q^4;q^4)^8"
            " - 77 * 2^12 q^3 (q^2;q^2)^4 (q^4;q^4)^16",
            combine((F(31), theta2_pow(20))),
            combine(
                (F(16), eis(20)),
                (F(-16), eta(4, (2, 28), (4, -8))),
                (F(-77 * 2**12), eta(12, (2, 4), (4, 16))),
            ),
        ),
        Identity(
            "theta22",
            "display",
            "50521 theta_2^22 = 4 q^(1/2) sum (2n+1)^10 (...) - 138677 * 2^14 q^(7/2) (q^2;q^2)^2 (q^4;q^4)^20"
            " - 7381 * 2^6 q^(3/2) (q^2;q^2)^26 / (q^4;q^4)^4",
            combine((F(50521), theta2_pow(22))),
            combine(
                (F(4), two_term(10, -1)),
                (F(-138677 * 2**14), eta(14, (2, 2), (4, 20))),
                (F(-7381 * 2**6), eta(6, (2, 26), (4, -4))),
            ),
        ),
        Identity(
            "theta24",
            "display",
            "691 theta_2^24 = 2^16 sum n^11 q^(2n) / (1 - q^(4n)) - 2^16 q^2 (q^2;q^2)^24"
            " - 259 * 2^19 q^4 (q^4;q^4)^24",
            combine((F(691), theta2_pow(24))),
            combine(
                (F(2**16), eis(24)),
                (F(-(2**16)), eta(8, (2, 24))),
                (F(-259 * 2**19), eta(16, (4, 24))),
            ),
        ),
    ]


def _list() -> List[Identity]:
    def A(N: int) -> QSeries:
        return th(N).a

    def B(N: int) -> QSeries:
        return th(N).b

    def C(N: int) -> QSeries:
        return th(N).c

    def s8_n7(N: int) -> QSeries:
        a, b, c = A(N), B(N), C(N)
        return (a * b) * (2 * (c * c) + 17 * (a * b))

    def s8_odd7(N: int) -> QSeries:
        a, b, c = A(N), B(N), C(N)
        return a * (b + c) * (17 * (a * a) + 2 * (b * c))

    def s8_n9(N: int) -> QSeries:
        a, b = A(N), B(N)
        return a * b * (a + b) * (a * a + 29 * (a * b) + b * b)

    def s8_odd9(N: int) -> QSeries:
        a, b, c = A(N), B(N), C(N)
        a2 = a * a
        return 62 * (a2 * a2 * a) + 154 * (a2 * a * b * c) + 2 * (a * b * b * c * c)

    def s8_n11(N: int) -> QSeries:
        a, b, c = A(N), B(N), C(N)
        ab = a * b
        c2 = c * c
        return 2 * (ab * c2 * c2) + 259 * (ab * ab * c2) + 1382 * (ab * ab * ab)

    def s8_odd11(N: int) -> QSeries:
        a, b, c = A(N), B(N), C(N)
        a2 = a * a
        bc = b * c
        return a * (b + c) * (1382 * (a2 * a2) + 1384 * (a2 * bc) + 2 * (bc * bc))

    def sig(num: Callable[[QSeries, QSeries, QSeries, QSeries], QSeries]) -> Side:
        # theta constants of 2 tau: t = theta_2^2, a = theta_2^4, b = theta_3^4, c = theta_4^4
        def side(N: int) -> QSeries:
            t2 = th2(N)
            return num(t2.theta2_sq, t2.a, t2.b, t2.c)

        return side

    F = Fraction
    out = [
        Identity(
            "s8-n3",
            "list",
            "2^4 sum n^3 q^n / (1 - q^(2n)) = theta_2^4 theta_3^4",
            combine((F(16), lam(1))),
            lambda N: A(N) * B(N),
        ),
        Identity(
            "s8-n3-half",
            "list",
            "theta_2^4 theta_3^4 = 2^-4 theta_2^8(tau/2)",
            lambda N: A(N) * B(N),
            lambda N: theta_power(2, 8, Fraction(1, 2), N) / 16,
        ),
        Identity(
            "s8-odd3",
            "list",
            "2^5 sum (2n+1)^3 q^(2n+1) / (1 - q^(4n+2)) = theta_2^4 (theta_3^4 + theta_4^4)",
            combine((F(32), odd(1))),
            lambda N: A(N) * (B(N) + C(N)),
        ),
        Identity(
            "s8-n5",
            "list",
            "2^4 sum n^5 q^n / (1 - q^(2n)) = theta_2^4 theta_3^4 (theta_2^4 + theta_3^4)",
            combine((F(16), lam(2))),
            lambda N: A(N) * B(N) * (A(N) + B(N)),
        ),
        Identity(
            "s8-odd5",
            "list",
            "2^5 sum (2n+1)^5 q^(2n+1) / (1 - q^(4n+2)) = 2 theta_2^12 + 2 theta_2^4 theta_3^4 theta_4^4",
            combine((F(32), odd(2))),
            lambda N: 2 * (A(N) * A(N) * A(N)) + 2 * (A(N) * B(N) * C(N)),
        ),
        Identity("s8-n7", "list", "2^5 sum n^7 q^n / (1 - q^(2n)) = AB (2C^2 + 17AB)", combine((F(32), lam(3))), s8_n7),
        Identity(
            "s8-odd7",
            "list",
            "2^6 sum (2n+1)^7 q^(2n+1) / (1 - q^(4n+2)) = A (B + C) (17A^2 + 2BC)",
            combine((F(64), odd(3))),
            s8_odd7,
        ),
        Identity(
            "s8-n9",
            "list",
            "2^4 sum n^9 q^n / (1 - q^(2n)) = AB (A + B) (A^2 + 29AB + B^2)",
            combine((F(16), lam(4))),
            s8_n9,
        ),
        Identity(
            "s8-odd9",
            "list",
            "2^5 sum (2n+1)^9 q^(2n+1) / (1 - q^(4n+2)) = 62A^5 + 154A^3BC + 2AB^2C^2",
            combine((F(32), odd(4))),
            s8_odd9,
        ),
        Identity(
            "s8-n11",
            "list",
            "2^5 sum n^11 q^n / (1 - q^(2n)) = 2ABC^4 + 259A^2B^2C^2 + 1382A^3B^3",
            combine((F(32), lam(5))),
            s8_n11,
        ),
        Identity(
            "s8-odd11",
            "list",
            "2^6 sum (2n+1)^11 q^(2n+1) / (1 - q^(4n+2)) = A (B + C) (1382A^4 + 1384A^2BC + 2B^2C^2)",
            combine((F(64), odd(5))),
            s8_odd11,
        ),
    ]

    sigma_rhs = {
        (2, 1): ("t (B + C)", lambda t, a, b, c: t * (b + c)),
        (2, 3): ("-t A", lambda t, a, b, c: -(t * a)),
        (4, 1): ("5tA^2 + 2tBC", lambda t, a, b, c: t * (5 * (a * a) + 2 * (b * c))),
        (4, 3): ("-5tA (B + C)", lambda t, a, b, c: -5 * (t * a * (b + c))),
        (6, 1): ("t (61A^2 + BC) (B + C)", lambda t, a, b, c: t * (61 * (a * a) + b * c) * (b + c)),
        (6, 3): ("-61tA^3 - 91tABC", lambda t, a, b, c: -(t * a) * (61 * (a * a) + 91 * (b * c))),
        (8, 1): (
            "1385tA^4 + 3052tA^2BC + 2tB^2C^2",
            lambda t, a, b, c: t * (1385 * (a * a * a * a) + 3052 * (a * a * b * c) + 2 * (b * b * c * c)),
        ),
        (8, 3): (
            "-t (B + C) (1385A^3 + 410ABC)",
            lambda t, a, b, c: -(t * (b + c) * a * (1385 * (a * a) + 410 * (b * c))),
        ),
        (10, 1): (
            "t (B + C) (50521A^4 + 38147A^2BC + B^2C^2)",
            lambda t, a, b, c: t * (b + c) * (50521 * (a * a * a * a) + 38147 * (a * a * b * c) + b * b * c * c),
        ),
        (10, 3): (
            "-(50521tA^5 + 138677tA^3BC + 7381tAB^2C^2)",
            lambda t, a, b, c: -(t * a)
            * (50521 * (a * a * a * a) + 138677 * (a * a * b * c) + 7381 * (b * b * c * c)),
        ),
    }
    for (two_k, residue), (text, rhs) in sigma_rhs.items():
        lhs = s1(two_k) if residue == 1 else s3(two_k)
        out.append(
            Identity(
                f"s8-sigma{two_k}-{residue}",
                "list",
                f"8 sum sigma_({two_k},chi)(N) q^N over N = {residue} mod 4 = {text} at 2 tau",
                combine((F(8), lhs)),
                sig(rhs),
            )
        )

    for residue, sign, factor in ((1, 1, 2), (3, -1, -2)):
        for k in range(1, 6):
            progression = s1(2 * k) if residue == 1 else s3(2 * k)
            out.append(
                Identity(
                    f"s8-sum-{residue}-k{k}",
                    "list",
                    f"two-term Lambert sum for (2n+1)^{2 * k} = {factor} sum sigma_({2 * k},chi)(N) q^N"
                    f" over N = {residue} mod 4",
                    _odd_two_term_sum(2 * k, sign),
                    combine((F(factor), progression)),
                )
            )

    out += [
        Identity("s8-eta6", "list", "theta_2^6(2 tau) = -8 S_3", theta2_pow(6, 2), combine((F(-8), s3(2)))),
        Identity(
            "s8-eta10",
            "list",
            "5 theta_2^10(2 tau) = 8 S_1 - 8 q (q^4;q^4)^14 / (q^8;q^8)^4",
            combine((F(5), theta2_pow(10, 2))),
            combine((F(8), s1(4)), (F(-8), eta(4, (4, 14), (8, -4)))),
        ),
        Identity(
            "s8-eta14",
            "list",
            "61 theta_2^14(2 tau) = -8 S_3 - 91 * 2^6 q^3 (q^4;q^4)^10 (q^8;q^8)^4",
            combine((F(61), theta2_pow(14, 2))),
            combine((F(-8), s3(6)), (F(-91 * 2**6), eta(12, (4, 10), (8, 4)))),
        ),
        Identity(
            "s8-eta18",
            "list",
            "1385 theta_2^18(2 tau) = 8 S_1 - 8 q (q^4;q^4)^30 / (q^8;q^8)^12"
            " - 763 * 2^12 q^5 (q^4;q^4)^6 (q^8;q^8)^12",
            combine((F(1385), theta2_pow(18, 2))),
            combine(
                (F(8), s1(8)),
                (F(-8), eta(4, (4, 30), (8, -12))),
                (F(-763 * 2**12), eta(20, (4, 6), (8, 12))),
            ),
        ),
        Identity(
            "s8-eta22",
            "list",
            "50521 theta_2^22(2 tau) = -8 S_3 - 138677 * 2^14 q^7 (q^4;q^4)^2 (q^8;q^8)^20"
            " - 7381 * 2^6 q^3 (q^4;q^4)^26 / (q^8;q^8)^4",
            combine((F(50521), theta2_pow(22, 2))),
            combine(
                (F(-8), s3(10)),
                (F(-138677 * 2**14), eta(28, (4, 2), (8, 20))),
                (F(-7381 * 2**6), eta(12, (4, 26), (8, -4))),
            ),
        ),
        Identity(
            "s8-theta2sq",
            "list",
            "theta_2^2 = 4 q^(1/2) sum (-1)^n q^n / (1 - q^(2n+1))",
            lambda N: th(N).theta2_sq,
            lambda N: 4
            * lambert_series(lambda n: (-1) ** n, lambda n: 2 * (2 * n + 1), lambda n: 4 * (2 * n + 1), N, first=0),
        ),
    ]
    return out


def _supplement() -> List[Identity]:
    def q_step(j: int) -> int:
        return 4 * (2 * j + 1)

    return [
        Identity(
            "psi4-lambert",
            "supplement",
            "psi(q)^4 = sum q^k (1 + q^(2k+1)) / (1 - q^(2k+1))^2",
            _psi_power(4),
            lambda N: rational_lambert((1, 1), 2, lambda j: 4 * j, q_step, N),
        ),
        Identity(
            "psi8-lambert",
            "supplement",
            "psi(q)^8 = sum q^(2k) (1 + 4 q^(2k+1) + q^(4k+2)) / (1 - q^(2k+1))^4",
            _psi_power(8),
            lambda N: rational_lambert((1, 4, 1), 4, lambda j: 8 * j, q_step, N),
        ),
        Identity(
            "psi12-lambert",
            "supplement",
            "sum q^k P_6(q^(2k+1)) / (1 - q^(2k+1))^6 = 256 q psi(q)^12 + (q;q)^12",
            lambda N: rational_lambert(palin_P(6).coeffs, 6, lambda j: 4 * j, q_step, N),
            lambda N: 256 * eta(4, (2, 24), (1, -12))(N) + pochhammer_inf(1, N) ** 12,
        ),
    ]


def _recurrence() -> List[Identity]:
    def poly_side(k: int) -> Side:
        return lambda N: wp_poly_eval(wp_recurrence_poly(2 * k), N)

    def lambert(k: int) -> Side:
        return lambda N: wp_even_at_half_lattice(k, N)

    return [
        Identity(
            f"wp-recurrence-k{k}",
            "recurrence",
            f"P_{2 * k}(x, y) at the half period against its Lambert series",
            poly_side(k),
            lambert(k),
        )
        for k in range(1, 9)
    ]


def _polynomials() -> List[Identity]:
    def sides(k: int, family: str) -> Tuple[Side, Side]:
        return (lambda N: lambert_side(k, N, family)), (lambda N: partial_fraction_side(k, N, family))

    def eis_forms(two_k: int) -> Tuple[Side, Side]:
        return (lambda N: eis_series(two_k, N)[1]), (lambda N: eis_series_partial_fraction(two_k, N)[1])

    out = []
    for family in ("p", "P"):
        for k in range(1, 13):
            lhs, rhs = sides(k, family)
            desc = f"Lambert series against its {family}_{k} partial fraction form"
            out.append(Identity(f"lambert-{family}{k}", "polynomials", desc, lhs, rhs))
    for two_k in (4, 8, 12, 16, 20, 24):
        lhs, rhs = eis_forms(two_k)
        desc = f"Eisenstein series for 2k={two_k} summed over Eulerian numerators"
        out.append(Identity(f"eis-partial-fraction{two_k}", "polynomials", desc, lhs, rhs))
    return out


IDENTITIES: List[Identity] = _prelim() + _display() + _list() + _supplement() + _recurrence() + _polynomials()
CATALOG: Dict[str, Identity] = {identity.identity_id: identity for identity in IDENTITIES}


def select(selection: Optional[Sequence[str]] = None, sections: Sequence[str] = SECTIONS) -> List[str]:
    """Identity ids in catalogue order, either the given ids or all ids in `sections`."""

    if selection:
        unknown = sorted(set(selection) - set(CATALOG))
        if unknown:
            raise ValueError(f"Unknown identity ids: {', '.join(unknown)}")
        wanted = set(selection)
        return [i for i in CATALOG if i in wanted]

    for section in sections:
        if section not in SECTIONS:
            raise ValueError(f"Unknown section {section!r}. Choose from: {', '.join(SECTIONS)}")
    return [identity.identity_id for identity in IDENTITIES if identity.section in sections]


def verify_section(section: str, order: int) -> List[IdentityCertificate]:
    return [CATALOG[i].verify(order) for i in select(sections=(section,))]
