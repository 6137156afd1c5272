import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import TYPE_CHECKING, Iterator, List, Tuple, Union

from .exceptions import NonIntegralExponent
from .series import QSeries, divide_exponents, lambert_series, pochhammer_inf, power, shift, truncate

if TYPE_CHECKING:
    from .certificates import IdentityCertificate

logger = logging.getLogger(__name__)

Scale = Union[int, Fraction]


def _scale(scale: Scale) -> Fraction:
    s = Fraction(scale)
    if s <= 0 or 4 % s.denominator:
        raise ValueError(f"Scale must be a positive rational with denominator dividing 4, got {s}")
    return s


def _theta_terms(j: int) -> Iterator[Tuple[int, int]]:
    """Unscaled (u-exponent, coefficient) pairs of theta_j in increasing exponent order."""

    if j == 2:
        n = 0
        while True:
            yield 1 + 4 * n * (n + 1), 2
            n += 1
    elif j in (3, 4):
        yield 0, 1
        n = 1
        while True:
            yield 4 * n * n, 2 if j == 3 or n % 2 == 0 else -2
            n += 1
    else:
        raise ValueError(f"Theta index must be 2, 3 or 4, got {j}")


def theta_series(j: int, scale: Scale, order: int) -> QSeries:
    """theta_j(scale * tau) to u-order `order`."""

    s = _scale(scale)
    terms = []
    for e, c in _theta_terms(j):
        se = e * s
        if se >= order:
            break
        if se.denominator != 1:
            raise NonIntegralExponent(f"theta_{j}({s} tau) has the non-integral u-exponent {se}")
        terms.append((int(se), c))
    return QSeries.from_terms(terms, order)


def theta_power(j: int, n: int, scale: Scale, order: int) -> QSeries:
    """theta_j(scale * tau)^n for n >= 0. Fractional scales are expanded in a finer variable first."""

    if n < 0:
        raise ValueError(f"Power must be non-negative, got {n}")
    s = _scale(scale)
    r = s.denominator
    if n == 0:
        return QSeries.one(order)
    if r == 1:
        return truncate(power(theta_series(j, s, order), n), order)

    fine = power(theta_series(j, s.numerator, order * r), n)
    return truncate(divide_exponents(fine, r), order)


def theta2_product(order: int) -> QSeries:
    """2 q^(1/4) (q^4;q^4)^2 / (q^2;q^2)"""

    core = power(pochhammer_inf(4, order), 2) / pochhammer_inf(2, order)
    return truncate(shift(2 * core, 1), order)


@dataclass(frozen=True)
class ThetaConstants:
    order: int
    scale: Fraction = Fraction(1)

    @cached_property
    def theta2(self) -> QSeries:
        return theta_series(2, self.scale, self.order)

    @cached_property
    def theta3(self) -> QSeries:
        return theta_series(3, self.scale, self.order)

    @cached_property
    def theta4(self) -> QSeries:
        return theta_series(4, self.scale, self.order)

    @cached_property
    def theta2_sq(self) -> QSeries:
        return theta_power(2, 2, self.scale, self.order)

    @cached_property
    def a(self) -> QSeries:
        """theta_2^4"""
        return theta_power(2, 4, self.scale, self.order)

    @cached_property
    def b(self) -> QSeries:
        """theta_3^4"""
        return theta_power(3, 4, self.scale, self.order)

    @cached_property
    def c(self) -> QSeries:
        """theta_4^4"""
        return theta_power(4, 4, self.scale, self.order)


@lru_cache(maxsize=32)
def theta_constants(order: int, scale: Scale = 1) -> ThetaConstants:
    return ThetaConstants(order, _scale(scale))


def e_values(order: int) -> Tuple[QSeries, QSeries, QSeries]:
    th = theta_constants(order)
    e1 = (th.b + th.c) / 3
    e2 = -(th.a + th.b) / 3
    e3 = (th.a - th.c) / 3
    return e1, e2, e3


def g_invariants(order: int) -> Tuple[QSeries, QSeries]:
    s3 = lambert_series(lambda n: n**3, lambda n: 8 * n, lambda n: 8 * n, order)
    s5 = lambert_series(lambda n: n**5, lambda n: 8 * n, lambda n: 8 * n, order)
    g2 = Fraction(4, 3) * (1 + 240 * s3)
    g3 = Fraction(8, 27) * (1 - 504 * s5)
    return g2, g3


def e2_series(order: int) -> QSeries:
    """E_2 = 1 - 24 sum n q^(2n) / (1 - q^(2n))"""

    return 1 - 24 * lambert_series(lambda n: n, lambda n: 8 * n, lambda n: 8 * n, order)


def verify_prelim_corpus(order: int) -> List["IdentityCertificate"]:
    from .corpus import verify_section

    return verify_section("prelim", order)
