"""Truncated formal series in u = q^(1/4) with exact rational coefficients.

A `QSeries` knows the coefficients of all exponents below its `order`. Every
operation derives the order of its result from the orders of its operands, so
that a coefficient which is stored is always correct.
"""

import logging
from fractions import Fraction
from math import comb, gcd
from typing import Any, Callable, Dict, Iterable, Iterator, List, Sequence, Tuple, Union

from .certificates import CheckResult, Mismatch
from .exceptions import InsufficientOrder, NonIntegralExponent, ZeroLeadingCoefficient

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]

BASE = "q^(1/4)"
ZERO = Fraction(0)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _as_integers(coeffs: Sequence[Fraction]) -> Tuple[List[int], int]:
    den = 1
    for c in coeffs:
        den = _lcm(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


class QSeries:
    __slots__ = ("min_exp", "coeffs", "order")

    min_exp: int
    coeffs: Tuple[Fraction, ...]
    order: int

    def __init__(self, min_exp: int, coeffs: Iterable[Rational], order: int) -> None:
        cs = [Fraction(c) for c in coeffs]
        del cs[max(0, order - min_exp) :]

        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        end = len(cs)
        while end > start and cs[end - 1] == 0:
            end -= 1

        if start == end:
            object.__setattr__(self, "min_exp", order)
            object.__setattr__(self, "coeffs", ())
        else:
            object.__setattr__(self, "min_exp", min_exp + start)
            object.__setattr__(self, "coeffs", tuple(cs[start:end]))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("QSeries is immutable")

    # constructors

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls(order, (), order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls(0, (1,), order)

    @classmethod
    def monomial(cls, exponent: int, coeff: Rational, order: int) -> "QSeries":
        return cls(exponent, (coeff,), order)

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[int, Rational]], order: int) -> "QSeries":
        """Build from (exponent, coefficient) pairs. Repeated exponents are summed,
        exponents at or above `order` are ignored.
        """

        acc: Dict[int, Fraction] = {}
        for e, c in terms:
            if e < order:
                acc[e] = acc.get(e, ZERO) + c
        if not acc:
            return cls.zero(order)
        lo = min(acc)
        dense = [ZERO] * (max(acc) - lo + 1)
        for e, c in acc.items():
            dense[e - lo] = c
        return cls(lo, dense, order)

    # accessors

    def coefficient(self, exponent: int) -> Fraction:
        if exponent >= self.order:
            raise InsufficientOrder(f"u^{exponent} is not known, series order is {self.order}")
        i = exponent - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return ZERO

    __getitem__ = coefficient

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.min_exp + i, c

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise ZeroLeadingCoefficient("Series is zero to its order")
        return self.coeffs[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.min_exp, self.coeffs, self.order) == (other.min_exp, other.coeffs, other.order)

    def __hash__(self) -> int:
        return hash((self.min_exp, self.coeffs, self.order))

    def __repr__(self) -> str:
        terms = " + ".join(f"({c})u^{e}" for e, c in list(self.items())[:6])
        more = " + ..." if len(self.coeffs) > 6 else ""
        return f"QSeries({terms or '0'}{more} + O(u^{self.order}))"

    # ring operations

    def _coerce(self, other: Union["QSeries", Rational]) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries.monomial(0, other, self.order)
        return NotImplemented

    def __add__(self, other: Union["QSeries", Rational]) -> "QSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries(self.min_exp, (-c for c in self.coeffs), self.order)

    def __sub__(self, other: Union["QSeries", Rational]) -> "QSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other: Rational) -> "QSeries":
        return add(-self, self._coerce(other))

    def __mul__(self, other: Union["QSeries", Rational]) -> "QSeries":
        if isinstance(other, QSeries):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: Union["QSeries", Rational]) -> "QSeries":
        if isinstance(other, QSeries):
            return mul(self, invert(other))
        if isinstance(other, (int, Fraction)):
            return scale(self, Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int) -> "QSeries":
        return power(self, n)

    # exponent maps

    def truncate(self, order: int) -> "QSeries":
        return truncate(self, order)

    def substitute_q_power(self, m: int) -> "QSeries":
        return substitute_q_power(self, m)

    def divide_exponents(self, m: int) -> "QSeries":
        return divide_exponents(self, m)

    def to_json(self) -> Dict[str, Any]:
        return {
            "base": BASE,
            "min_exp": self.min_exp,
            "order": self.order,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: Dict[str, Any]) -> "QSeries":
        if obj.get("base") != BASE:
            raise ValueError(f"Unsupported series base: {obj.get('base')}")
        coeffs = (Fraction(int(num), int(den)) for num, den in obj["coeffs"])
        return cls(int(obj["min_exp"]), coeffs, int(obj["order"]))


def add(a: QSeries, b: QSeries) -> QSeries:
    order = min(a.order, b.order)
    if a.is_zero():
        return truncate(b, order)
    if b.is_zero():
        return truncate(a, order)

    lo = min(a.min_exp, b.min_exp)
    hi = min(order, max(a.min_exp + len(a.coeffs), b.min_exp + len(b.coeffs)))
    if hi <= lo:
        return QSeries.zero(order)
    out = [ZERO] * (hi - lo)
    for s in (a, b):
        off = s.min_exp - lo
        for i, c in enumerate(s.coeffs):
            if off + i >= hi - lo:
                break
            out[off + i] += c
    return QSeries(lo, out, order)


def scale(a: QSeries, c: Rational) -> QSeries:
    if c == 0:
        return QSeries.zero(a.order)
    return QSeries(a.min_exp, (c * x for x in a.coeffs), a.order)


def mul(a: QSeries, b: QSeries) -> QSeries:
    order = min(a.order + b.min_exp, b.order + a.min_exp)
    if a.is_zero() or b.is_zero():
        return QSeries.zero(order)

    base = a.min_exp + b.min_exp
    length = order - base

    ia, da = _as_integers(a.coeffs)
    ib, db = _as_integers(b.coeffs)
    nz_a = [(i, x) for i, x in enumerate(ia) if x]
    nz_b = [(j, y) for j, y in enumerate(ib) if y]

    out = [0] * length
    for i, x in nz_a:
        if i >= length:
            break
        for j, y in nz_b:
            k = i + j
            if k >= length:
                break
            out[k] += x * y

    den = da * db
    return QSeries(base, (Fraction(v, den) for v in out), order)


def invert(a: QSeries) -> QSeries:
    if a.is_zero():
        raise ZeroLeadingCoefficient(f"Cannot invert a series that is zero to order {a.order}")

    m = a.min_exp
    n = a.order - m
    c = a.coeffs
    lead = c[0]

    if lead in (1, -1) and all(x.denominator == 1 for x in c):
        lead_i = int(lead)
        nz_i = [(j, int(c[j])) for j in range(1, min(len(c), n)) if c[j]]
        out_i = [0] * n
        out_i[0] = lead_i
        for i in range(1, n):
            s = 0
            for j, x in nz_i:
                if j > i:
                    break
                s += x * out_i[i - j]
            out_i[i] = -s * lead_i
        return QSeries(-m, out_i, a.order - 2 * m)

    inv = 1 / lead
    nz = [(j, c[j]) for j in range(1, min(len(c), n)) if c[j]]
    out = [ZERO] * n
    out[0] = inv
    for i in range(1, n):
        s = ZERO
        for j, x in nz:
            if j > i:
                break
            s += x * out[i - j]
        out[i] = -s * inv
    return QSeries(-m, out, a.order - 2 * m)


def power(a: QSeries, n: int) -> QSeries:
    if n < 0:
        return power(invert(a), -n)
    if n == 0:
        return QSeries.one(a.order - a.min_exp)

    result = None
    base = a
    while n:
        if n & 1:
            result = base if result is None else mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    assert result is not None
    return result


def truncate(a: QSeries, order: int) -> QSeries:
    if order > a.order:
        raise InsufficientOrder(f"Cannot raise order from {a.order} to {order}")
    return QSeries(a.min_exp, a.coeffs, order)


def substitute_q_power(a: QSeries, m: int) -> QSeries:
    """q -> q^m, i.e. u^e -> u^(m*e)."""

    if m < 1:
        raise ValueError(f"Substitution power must be positive, got {m}")
    if m == 1 or a.is_zero():
        return QSeries(a.min_exp * m, a.coeffs, a.order * m)

    out = [ZERO] * ((len(a.coeffs) - 1) * m + 1)
    out[::m] = a.coeffs
    return QSeries(a.min_exp * m, out, a.order * m)


def divide_exponents(a: QSeries, m: int) -> QSeries:
    """u^e -> u^(e/m). This realises arguments like tau/2 on a series built in a finer variable."""

    if m < 1:
        raise ValueError(f"Exponent divisor must be positive, got {m}")
    order = -(-a.order // m)
    if a.is_zero():
        return QSeries.zero(order)
    for e, _ in a.items():
        if e % m:
            raise NonIntegralExponent(f"u^{e} is not divisible by {m}")
    start = (-a.min_exp) % m
    return QSeries((a.min_exp + start) // m, a.coeffs[start::m], order)


def shift_half(a: QSeries) -> Tuple[int, QSeries]:
    """tau -> tau + 1/2, i.e. q -> iq.

    Returns (phase, b) with a(iq) = i^phase * b(q). All exponents must be integral
    powers of q with the same parity so that b is rational.
    """

    if a.is_zero():
        return 0, a

    parities = set()
    for e, _ in a.items():
        if e % 4:
            raise NonIntegralExponent(f"u^{e} is not an integral power of q")
        parities.add((e // 4) % 2)
    if len(parities) != 1:
        raise NonIntegralExponent("Series mixes even and odd powers of q")
    phase = parities.pop()

    def twist(e: int, c: Fraction) -> Fraction:
        return -c if ((e // 4 - phase) // 2) % 2 else c

    coeffs = (twist(a.min_exp + i, c) for i, c in enumerate(a.coeffs))
    return phase, QSeries(a.min_exp, coeffs, a.order)


def shift(a: QSeries, s: int) -> QSeries:
    """Multiply by u^s exactly."""

    return QSeries(a.min_exp + s, a.coeffs, a.order + s)


def perturb(a: QSeries, exponent: int, delta: Rational = 1) -> QSeries:
    if exponent >= a.order:
        raise InsufficientOrder(f"u^{exponent} is beyond order {a.order}")
    return add(a, QSeries.monomial(exponent, delta, a.order))


def pochhammer_inf(m: int, order: int) -> QSeries:
    """(q^m; q^m)_inf as the literal product of (1 - q^(mk)) for all k which contribute below `order`."""

    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if order <= 0:
        return QSeries.zero(order)

    out = [0] * order
    out[0] = 1
    k = 1
    while 4 * m * k < order:
        step = 4 * m * k
        for i in range(order - 1, step - 1, -1):
            out[i] -= out[i - step]
        k += 1
    return QSeries(0, out, order)


def lambert_series(
    coefficient: Callable[[int], Rational],
    start: Callable[[int], int],
    period: Callable[[int], int],
    order: int,
    first: int = 1,
    ratio: int = 1,
) -> QSeries:
    """Expand sum_{n >= first} coefficient(n) u^start(n) / (1 - ratio * u^period(n)).

    `start` must be non-negative and strictly increasing in n, `period` positive.
    """

    out: List[Rational] = [0] * max(order, 0)
    n = first
    while True:
        e = start(n)
        if e >= order:
            break
        c = coefficient(n)
        if c:
            p = period(n)
            while e < order:
                out[e] += c
                e += p
                c *= ratio
        n += 1
    return QSeries(0, out, order)


def rational_lambert(
    numerator: Sequence[Rational],
    power: int,
    offset: Callable[[int], int],
    step: Callable[[int], int],
    order: int,
    first: int = 0,
) -> QSeries:
    """Expand sum_{j >= first} u^offset(j) N(x) / (1 - x)^power with x = u^step(j).

    N is given by its coefficient list. The leading exponent offset(j) + v * step(j),
    v the valuation of N, must be strictly increasing in j.
    """

    if power < 1:
        raise ValueError(f"Power must be positive, got {power}")
    num = [Fraction(c) for c in numerator]
    nz = [(d, c) for d, c in enumerate(num) if c]
    if not nz:
        return QSeries.zero(order)
    v = nz[0][0]

    out = [ZERO] * max(order, 0)
    j = first
    while True:
        base = offset(j)
        x = step(j)
        if base + v * x >= order:
            break
        t = v
        while base + t * x < order:
            # coefficient of x^t in N(x) * sum_i C(i + power - 1, power - 1) x^i
            out[base + t * x] += sum((c * comb(t - d + power - 1, power - 1) for d, c in nz if d <= t), ZERO)
            t += 1
        j += 1
    return QSeries(0, out, order)


def equal_to_order(a: QSeries, b: QSeries, order: int) -> CheckResult:
    if order > a.order or order > b.order:
        raise InsufficientOrder(f"Cannot compare to order {order}, series orders are {a.order} and {b.order}")

    lo = min(a.min_exp, b.min_exp)
    for e in range(lo, order):
        x = a.coefficient(e)
        y = b.coefficient(e)
        if x != y:
            logger.debug("First mismatch at u^%d: %s != %s", e, x, y)
            return CheckResult(False, order, Mismatch(e, x, y))
    return CheckResult(True, order)
