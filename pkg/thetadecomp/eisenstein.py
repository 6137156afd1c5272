"""Eisenstein series attached to 2k mod 8 and the Eulerian numerator polynomials of their partial fraction forms."""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple

from genutility.exceptions import assert_choices

from .arith import MemoTable, bernoulli, euler_number, sigma_chi
from .certificates import IdentityCertificate, fraction_str
from .exceptions import OutOfRange, UnsupportedPower
from .series import QSeries, equal_to_order, lambert_series, rational_lambert

logger = logging.getLogger(__name__)


class EisensteinFamily(Enum):
    W8K = "8k"
    W8K4 = "8k+4"
    W8K2 = "8k+2"
    W8K_MINUS2 = "8k-2"
    SPECIAL2 = "2"


@dataclass(frozen=True)
class EisensteinSpec:
    family: EisensteinFamily
    k: int
    constant: Fraction
    lambert_constant: Optional[Fraction] = None

    def to_json(self) -> Dict[str, Any]:
        out = {"family": self.family.name, "k": self.k, "constant": fraction_str(self.constant)}
        if self.lambert_constant is not None:
            out["lambert_constant"] = fraction_str(self.lambert_constant)
        return out

    def series_label(self) -> str:
        k = self.k
        if self.family is EisensteinFamily.W8K:
            return f"sum n^{4 * k - 1} q^(2n) / (1 - q^(4n))"
        elif self.family is EisensteinFamily.W8K4:
            return f"sum (2n+1)^{4 * k + 1} q^(2n+1) / (1 - q^(4n+2))"
        elif self.family is EisensteinFamily.W8K2:
            return f"q^(1/2) sum sigma_({4 * k},chi)(4n+1) q^(2n)"
        elif self.family is EisensteinFamily.W8K_MINUS2:
            return f"q^(1/2) sum sigma_({4 * k - 2},chi)(4n+3) q^(2n+1)"
        return "sum (-1)^n q^(n+1/2) / (1 - q^(2n+1))"


def eisenstein_spec(two_k: int, special_forms: bool = True) -> EisensteinSpec:
    if two_k < 2 or two_k % 2:
        raise UnsupportedPower(f"Only even powers >= 2 are supported, got {two_k}")

    r = two_k % 8
    if r == 0:
        k = two_k // 8
        c = Fraction(2 ** (4 * k + 3) * k) / ((1 - 2 ** (4 * k)) * bernoulli(4 * k))
        return EisensteinSpec(EisensteinFamily.W8K, k, c)
    elif r == 4:
        k = (two_k - 4) // 8
        c = Fraction(-8 * (2 * k + 1)) / ((1 - 2 ** (4 * k + 2)) * bernoulli(4 * k + 2))
        return EisensteinSpec(EisensteinFamily.W8K4, k, c)
    elif r == 2:
        if two_k == 2:
            if not special_forms:
                raise UnsupportedPower("theta_2^2 only has the special closed form")
            return EisensteinSpec(EisensteinFamily.SPECIAL2, 0, Fraction(4))
        k = (two_k - 2) // 8
        e = euler_number(4 * k)
        return EisensteinSpec(EisensteinFamily.W8K2, k, Fraction(8, e), Fraction(4, e))
    else:
        k = (two_k + 2) // 8
        e = euler_number(4 * k - 2)
        return EisensteinSpec(EisensteinFamily.W8K_MINUS2, k, Fraction(8, e), Fraction(-4, e))


def sigma_progression(k: int, residue: int, order: int, u_step: int = 4) -> QSeries:
    """sum sigma_(k,chi)(N) u^(u_step * N) over N = residue mod 4."""

    terms = []
    n = residue
    while u_step * n < order:
        terms.append((u_step * n, sigma_chi(k, n)))
        n += 4
    return QSeries.from_terms(terms, order)


def odd_two_term(e: int, order: int, u_step: int = 4) -> Tuple[QSeries, QSeries]:
    """sum (2n+1)^e Q^(2n+1) / (1 + Q^(4n+2)) and sum (-1)^n (2n+1)^e Q^(2n+1) / (1 - Q^(4n+2)) with Q = u^u_step."""

    plus = lambert_series(
        lambda n: (2 * n + 1) ** e,
        lambda n: u_step * (2 * n + 1),
        lambda n: 2 * u_step * (2 * n + 1),
        order,
        first=0,
        ratio=-1,
    )
    minus = lambert_series(
        lambda n: (-1) ** n * (2 * n + 1) ** e,
        lambda n: u_step * (2 * n + 1),
        lambda n: 2 * u_step * (2 * n + 1),
        order,
        first=0,
    )
    return plus, minus


def two_term_lambert(e: int, sign: int, order: int) -> QSeries:
    """q^(1/2) sum (2n+1)^e (q^n / (1 + q^(2n+1)) + sign (-1)^n q^n / (1 - q^(2n+1)))"""

    plus, minus = odd_two_term(e, order, u_step=2)
    return plus + sign * minus


def eis_series(two_k: int, order: int, special_forms: bool = True) -> Tuple[Fraction, QSeries]:
    spec = eisenstein_spec(two_k, special_forms)
    k = spec.k
    if spec.family is EisensteinFamily.W8K:
        s = lambert_series(lambda n: n ** (4 * k - 1), lambda n: 8 * n, lambda n: 16 * n, order)
    elif spec.family is EisensteinFamily.W8K4:
        s = lambert_series(
            lambda n: (2 * n + 1) ** (4 * k + 1),
            lambda n: 4 * (2 * n + 1),
            lambda n: 8 * (2 * n + 1),
            order,
            first=0,
        )
    elif spec.family is EisensteinFamily.W8K2:
        s = sigma_progression(4 * k, 1, order, u_step=2)
    elif spec.family is EisensteinFamily.W8K_MINUS2:
        s = sigma_progression(4 * k - 2, 3, order, u_step=2)
    else:
        s = lambert_series(lambda n: (-1) ** n, lambda n: 4 * n + 2, lambda n: 8 * n + 4, order, first=0)
    logger.debug("Eisenstein series for 2k=%d: family %s, constant %s", two_k, spec.family.name, spec.constant)
    return spec.constant, s


def eis_series_partial_fraction(two_k: int, order: int) -> Tuple[Fraction, QSeries]:
    """The 8k and 8k+4 families summed over Eulerian numerators instead of divisors."""

    spec = eisenstein_spec(two_k)
    k = spec.k
    if spec.family is EisensteinFamily.W8K:
        p = palin_p(4 * k).coeffs
        s = rational_lambert(p, 4 * k, lambda j: 0, lambda j: 8 * (2 * j + 1), order)
    elif spec.family is EisensteinFamily.W8K4:
        P = palin_P(4 * k + 2).coeffs
        s = rational_lambert(P, 4 * k + 2, lambda j: 4 * (2 * j + 1), lambda j: 8 * (2 * j + 1), order)
    else:
        raise UnsupportedPower(f"No partial fraction form for the {spec.family.value} family")
    return spec.constant, s


@dataclass(frozen=True)
class PalinPoly:
    coeffs: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def nonzero_range(self) -> Tuple[int, int]:
        nz = [i for i, c in enumerate(self.coeffs) if c]
        return nz[0], nz[-1]

    def is_palindromic(self) -> bool:
        lo, hi = self.nonzero_range()
        inner = self.coeffs[lo : hi + 1]
        return inner == inner[::-1]

    def to_json(self) -> List[int]:
        return list(self.coeffs)


def _derivative(p: Sequence[int]) -> List[int]:
    return [i * c for i, c in enumerate(p)][1:]


def _poly_add(*polys: Sequence[int]) -> List[int]:
    out = [0] * max(len(p) for p in polys)
    for p in polys:
        for i, c in enumerate(p):
            out[i] += c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _times_x(p: Sequence[int]) -> List[int]:
    return [0] + list(p)


def _next_p(table: List[PalinPoly]) -> PalinPoly:
    # p_(n+1) = n x p_n + x (1 - x) p_n'
    n = len(table)
    p = table[-1].coeffs
    dp = _derivative(p)
    x_dp = _times_x(dp)
    return PalinPoly(tuple(_poly_add([n * c for c in _times_x(p)], x_dp, [-c for c in _times_x(x_dp)])))


def _next_P(table: List[PalinPoly]) -> PalinPoly:
    # P_(n+1) = ((2n - 1) x + 1) P_n + 2 x (1 - x) P_n'
    n = len(table)
    p = table[-1].coeffs
    dp = _derivative(p)
    x_dp = _times_x(dp)
    terms = _poly_add(
        p,
        [(2 * n - 1) * c for c in _times_x(p)],
        [2 * c for c in x_dp],
        [-2 * c for c in _times_x(x_dp)],
    )
    return PalinPoly(tuple(terms))


_palin_p = MemoTable([PalinPoly((1,))], _next_p)
_palin_P = MemoTable([PalinPoly((1,))], _next_P)


def palin_p(n: int) -> PalinPoly:
    """sum_(m >= 1) m^(n-1) x^m = p_n(x) / (1 - x)^n for n >= 2, p_1 = 1."""

    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return _palin_p[n - 1]


def palin_P(n: int) -> PalinPoly:
    """sum_(m >= 0) (2m+1)^(n-1) x^m = P_n(x) / (1 - x)^n"""

    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return _palin_P[n - 1]


def coeff_closed_form(m: int, n: int) -> int:
    """Coefficient of x^m in p_n."""

    if not 1 <= m <= n - 1:
        raise OutOfRange(f"m must lie in [1, {n - 1}], got {m}")
    return sum((-1) ** j * comb(n, j) * (m - j) ** (n - 1) for j in range(m + 1))


def bonus_unit_sum(n: int) -> int:
    return sum((-1) ** j * comb(n, j) * (n - 1 - j) ** (n - 1) for j in range(n))


def bonus_vanishing_sum(m: int, n: int) -> int:
    return sum((-1) ** j * comb(n, j) * (m - j) ** (n - 1) for j in range(n + 1))


PSI12_QUARTIC = PalinPoly((1, 236, 1446, 236, 1))


def _check_family(k: int, family: str) -> None:
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    assert_choices("family", (family,), frozenset(("p", "P")))


def lambert_side(k: int, order: int, family: str = "p") -> QSeries:
    """sum n^(k-1) q^n / (1 - q^(2n)) for p, sum (2n+1)^(k-1) q^(2n+1) / (1 - q^(4n+2)) for P"""

    _check_family(k, family)
    if family == "p":
        return lambert_series(lambda n: n ** (k - 1), lambda n: 4 * n, lambda n: 8 * n, order)
    return lambert_series(
        lambda n: (2 * n + 1) ** (k - 1), lambda n: 4 * (2 * n + 1), lambda n: 8 * (2 * n + 1), order, first=0
    )


def partial_fraction_side(k: int, order: int, family: str = "p") -> QSeries:
    _check_family(k, family)
    if family == "p":
        # p_1 / (1 - x) - 1 = x / (1 - x)
        num = (0, 1) if k == 1 else palin_p(k).coeffs
        return rational_lambert(num, k, lambda j: 0, lambda j: 4 * (2 * j + 1), order)
    return rational_lambert(palin_P(k).coeffs, k, lambda j: 4 * (2 * j + 1), lambda j: 8 * (2 * j + 1), order)


def lambert_partial_fraction_check(k: int, order: int, family: str = "p") -> IdentityCertificate:
    """Compare a Lambert series with its Eulerian partial fraction form."""

    check = equal_to_order(lambert_side(k, order, family), partial_fraction_side(k, order, family), order)
    return IdentityCertificate.from_check(
        f"lambert-{family}{k}",
        check,
        section="polynomials",
        description=f"Lambert series against its {family}_{k} partial fraction form",
    )
