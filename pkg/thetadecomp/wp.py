"""Derivatives of the Weierstrass function of the lattice pi Z + pi tau Z at half and quarter periods."""

import logging
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Any, Dict, List, Mapping, Sequence, Tuple, Union

from .arith import MemoTable, chi
from .eisenstein import odd_two_term, sigma_progression
from .exceptions import InternalMismatch, OddIndex
from .series import QSeries, equal_to_order, lambert_series
from .theta import e2_series, e_values, theta_constants

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]
Monomial = Tuple[int, int]

WEIGHT_X = 2
WEIGHT_Y = 4


class WpPoint(Enum):
    HALF_LATTICE_TAU = "tau/2"  # pi tau / 2
    HALF_LATTICE_BOTH = "(1+tau)/2"  # (pi + pi tau) / 2
    QUARTER_A = "quarter"  # (pi + 2 pi tau) / 4
    QUARTER_B = "quarter-shifted"  # the same point after tau -> tau + 1/2


class BivarPoly:
    """Polynomial in x = wp(pi tau / 2) and y = wp''(pi tau / 2) with rational coefficients."""

    __slots__ = ("terms",)

    terms: Dict[Monomial, Fraction]

    def __init__(self, terms: Mapping[Monomial, Rational]) -> None:
        self.terms = {m: Fraction(c) for m, c in sorted(terms.items()) if c}

    @classmethod
    def x(cls) -> "BivarPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BivarPoly":
        return cls({(0, 1): 1})

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return BivarPoly(out)

    def __mul__(self, other: Union["BivarPoly", Rational]) -> "BivarPoly":
        if isinstance(other, (int, Fraction)):
            return BivarPoly({m: c * other for m, c in self.terms.items()})
        out: Dict[Monomial, Fraction] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                m = (a1 + a2, b1 + b2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return BivarPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        return f"BivarPoly({self.format()})"

    def weights(self) -> List[int]:
        return sorted({WEIGHT_X * a + WEIGHT_Y * b for a, b in self.terms})

    def is_homogeneous(self, weight: int) -> bool:
        return self.weights() == [weight]

    def format(self) -> str:
        if not self.terms:
            return "0"

        def var(name: str, e: int) -> str:
            if e == 0:
                return ""
            return name if e == 1 else f"{name}^{e}"

        parts = []
        for (a, b), c in sorted(self.terms.items(), reverse=True):
            mono = var("x", a) + var("y", b)
            if c == 1 and mono:
                coeff = ""
            elif c == -1 and mono:
                coeff = "-"
            else:
                coeff = str(c)
            parts.append(coeff + mono)
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> Dict[str, Any]:
        return {"terms": [[a, b, f"{c.numerator}/{c.denominator}"] for (a, b), c in self.terms.items()]}

    def evaluate(self, x: QSeries, y: QSeries) -> QSeries:
        order = min(x.order, y.order)
        xs = [QSeries.one(order)]
        ys = [QSeries.one(order)]
        result = QSeries.zero(order)
        for (a, b), c in self.terms.items():
            while len(xs) <= a:
                xs.append(xs[-1] * x)
            while len(ys) <= b:
                ys.append(ys[-1] * y)
            result = result + c * (xs[a] * ys[b])
        return result


def _next_even_derivative(chain: List[BivarPoly]) -> BivarPoly:
    # chain[i] = P_{2i}; wp'' = 6 wp^2 - g2/2 differentiated 2n times, odd derivatives vanish at the half period
    n = len(chain) - 1
    out = BivarPoly({})
    for k in range(n + 1):
        out = out + comb(2 * n, 2 * k) * (chain[n - k] * chain[k])
    return 6 * out


_chain = MemoTable([BivarPoly.x(), BivarPoly.y()], _next_even_derivative)


def wp_recurrence_poly(two_k: int) -> BivarPoly:
    """The polynomial P with wp^(two_k)(pi tau / 2) = P(x, y)."""

    if two_k < 0:
        raise ValueError(f"Derivative order must be non-negative, got {two_k}")
    if two_k % 2:
        raise OddIndex(f"Odd derivatives vanish at the half period, got {two_k}")
    poly = _chain[two_k // 2]
    logger.debug("P_%d = %s", two_k, poly.format())
    return poly


def half_lattice_xy(order: int) -> Tuple[QSeries, QSeries]:
    th = theta_constants(order)
    x = -(th.a + th.b) / 3
    y = 2 * (th.a * th.b)
    return x, y


def wp_poly_eval(poly: BivarPoly, order: int) -> QSeries:
    x, y = half_lattice_xy(order)
    return poly.evaluate(x, y)


def wp_even_at_half_lattice(k: int, order: int) -> QSeries:
    """wp^(2k)(pi tau / 2) = (-1)^(k+1) 2^(2k+3) sum n^(2k+1) q^n / (1 - q^(2n)) for k >= 1."""

    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    s = lambert_series(lambda n: n ** (2 * k + 1), lambda n: 4 * n, lambda n: 8 * n, order)
    return (-1) ** (k + 1) * 2 ** (2 * k + 3) * s


def wp_even_difference(k: int, order: int) -> QSeries:
    """wp^(2k)(pi tau / 2) - wp^(2k)((pi + pi tau) / 2) for k >= 0."""

    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    s = lambert_series(
        lambda n: (2 * n + 1) ** (2 * k + 1),
        lambda n: 4 * (2 * n + 1),
        lambda n: 8 * (2 * n + 1),
        order,
        first=0,
    )
    return (-1) ** (k + 1) * 2 ** (2 * k + 4) * s


def quarter_point_seeds(order: int, shifted: bool = False) -> List[QSeries]:
    """wp, wp', wp'' at (pi + 2 pi tau) / 4 in terms of theta constants of 2 tau.

    With `shifted` the values belong to tau + 1/2. wp' is then i times the returned series.
    """

    th = theta_constants(order, 2)
    if not shifted:
        return [
            -(th.b - 5 * th.a) / 3,
            4 * (th.theta2_sq * th.c),
            -16 * (th.a * th.c),
        ]
    return [
        -(th.c + 5 * th.a) / 3,
        4 * (th.theta2_sq * th.b),
        16 * (th.a * th.b),
    ]


def wp_quarter_point_lambert(derivative: int, order: int) -> QSeries:
    """wp, wp' and wp'' at (pi + 2 pi tau) / 4 as Lambert series."""

    if derivative == 0:
        e2 = e2_series(order)
        alt = lambert_series(lambda n: (-1) ** n * n, lambda n: 8 * n, lambda n: 16 * n, order)
        return -e2 / 3 - 16 * alt
    elif derivative == 1:
        return 16 * lambert_series(lambda n: chi(n) * n * n, lambda n: 4 * n, lambda n: 8 * n, order)
    elif derivative == 2:
        return 256 * lambert_series(lambda m: (-1) ** m * m**3, lambda m: 8 * m, lambda m: 16 * m, order)
    raise ValueError(f"Only derivatives 0, 1 and 2 have a Lambert form here, got {derivative}")


def wp_leibniz_chain(seeds: Sequence[QSeries], n: int, odd_sign: int = 1) -> List[QSeries]:
    """Extend [p0, p1, p2] to [p0, ..., pn] with p_(m+2) = 6 sum_j C(m, j) p_(m-j) p_j.

    With odd_sign = -1 the odd entries carry an implicit factor i, so a product of two
    odd entries picks up -1.
    """

    if len(seeds) != 3:
        raise ValueError("Expected the three seeds wp, wp', wp''")
    if odd_sign not in (1, -1):
        raise ValueError(f"odd_sign must be 1 or -1, got {odd_sign}")

    chain = list(seeds)
    while len(chain) <= n:
        m = len(chain) - 2
        acc = QSeries.zero(min(p.order for p in chain))
        for j in range(m + 1):
            term = comb(m, j) * (chain[m - j] * chain[j])
            if m % 2 == 0 and j % 2 == 1:
                term = odd_sign * term
            acc = acc + term
        chain.append(6 * acc)
    return chain[: n + 1]


def wp_quarter_point(n: int, order: int, point: WpPoint = WpPoint.QUARTER_A) -> QSeries:
    """wp^(n) at the quarter point. For QUARTER_B and odd n the true value is i times the result."""

    if point is WpPoint.QUARTER_A:
        return wp_leibniz_chain(quarter_point_seeds(order), n)[n]
    elif point is WpPoint.QUARTER_B:
        return wp_leibniz_chain(quarter_point_seeds(order, shifted=True), n, odd_sign=-1)[n]
    raise ValueError(f"Not a quarter point: {point}")


def wp_value(point: WpPoint, derivative: int, order: int) -> QSeries:
    if derivative < 0:
        raise ValueError(f"Derivative order must be non-negative, got {derivative}")

    if point in (WpPoint.QUARTER_A, WpPoint.QUARTER_B):
        return wp_quarter_point(derivative, order, point)

    if derivative % 2:
        return QSeries.zero(order)
    k = derivative // 2
    _, e2, e3 = e_values(order)
    if point is WpPoint.HALF_LATTICE_TAU:
        return e2 if k == 0 else wp_even_at_half_lattice(k, order)
    elif point is WpPoint.HALF_LATTICE_BOTH:
        return e3 if k == 0 else wp_even_at_half_lattice(k, order) - wp_even_difference(k, order)
    raise ValueError(f"Unknown point: {point}")


def wp_quarter_combo(k: int, sign: int, order: int) -> QSeries:
    """wp^(2k-1)(z0) + sign * i * wp^(2k-1)(z1), z0 the quarter point of tau and z1 that of tau + 1/2."""

    a = wp_quarter_point(2 * k - 1, order, WpPoint.QUARTER_A)
    b = wp_quarter_point(2 * k - 1, order, WpPoint.QUARTER_B)
    # wp^(2k-1)(z1) = i b
    return a - sign * b


def odd_combo_lambert_form(k: int, sign: int, order: int) -> QSeries:
    plus, minus = odd_two_term(2 * k, order)
    c = (-1) ** (k + 1) * 2 ** (2 * k + 2)
    if sign == -1:
        return c * (plus + minus)
    return c * (minus - plus)


def wp_odd_combo(k: int, sign: int, order: int) -> QSeries:
    """(-1)^(k+1) 2^(2k+3) sum sigma_(2k,chi)(N) q^N over N = 1 mod 4 (sign -1) or N = 3 mod 4 (sign +1).

    The two-term Lambert form is expanded as well and both have to agree.
    """

    if sign not in (1, -1):
        raise ValueError(f"sign must be 1 or -1, got {sign}")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")

    residue = 1 if sign == -1 else 3
    sigma_form = (-1) ** (k + 1) * 2 ** (2 * k + 3) * sigma_progression(2 * k, residue, order)
    check = equal_to_order(sigma_form, odd_combo_lambert_form(k, sign, order), order)
    if not check:
        assert check.mismatch is not None
        raise InternalMismatch(
            f"sigma and Lambert forms differ for k={k}, sign={sign} at u^{check.mismatch.exponent}: "
            f"{check.mismatch.lhs} != {check.mismatch.rhs}"
        )
    return sigma_form
