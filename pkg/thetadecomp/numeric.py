"""Floating point checks of the modular behaviour of theta_2, eta and the lattice sums."""

import logging
from dataclasses import dataclass
from enum import Enum
from math import ceil, factorial, log, pi, sqrt
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from .arith import kronecker
from .eisenstein import sigma_progression
from .exceptions import BranchUnavailable, ConvergenceTooSlow, CutoffTooSmall, OddC
from .series import QSeries, lambert_series

logger = logging.getLogger(__name__)

DEFAULT_FLOOR = 0.05
EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class SL2Matrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"Determinant of {self} is not 1")

    def __matmul__(self, other: "SL2Matrix") -> "SL2Matrix":
        return SL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def apply(self, tau: complex) -> complex:
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def denominator(self, tau: complex) -> complex:
        return self.c * tau + self.d

    def __neg__(self) -> "SL2Matrix":
        return SL2Matrix(-self.a, -self.b, -self.c, -self.d)

    def normalized(self) -> "SL2Matrix":
        """The one of +-sigma with d > 0, or c > 0 when d = 0. Both act the same on tau."""

        if self.d > 0 or (self.d == 0 and self.c > 0):
            return self
        return -self

    def __str__(self) -> str:
        return f"({self.a}, {self.b}; {self.c}, {self.d})"


IDENTITY = SL2Matrix(1, 0, 0, 1)
T = SL2Matrix(1, 1, 0, 1)
S = SL2Matrix(1, 0, -2, 1)
GENERATORS = (T, T.inverse(), S, S.inverse())


def random_word(rng: np.random.Generator, max_length: int = 6) -> SL2Matrix:
    """Random product of at most `max_length` generators of Gamma_0(2)."""

    out = IDENTITY
    for i in rng.integers(0, len(GENERATORS), size=int(rng.integers(1, max_length + 1))):
        out = out @ GENERATORS[i]
    return out


def random_point(rng: np.random.Generator, im_low: float = 0.5, im_high: float = 1.5) -> complex:
    return complex(rng.uniform(-0.5, 0.5), rng.uniform(im_low, im_high))


@dataclass(frozen=True)
class ComplexPoint:
    re: float
    im: float

    def __post_init__(self) -> None:
        if not self.im > 0:
            raise ValueError(f"Point must lie in the upper half plane, got im={self.im}")

    @property
    def tau(self) -> complex:
        return complex(self.re, self.im)


@dataclass
class NumericCheck:
    passed: bool
    error: float
    tol: float
    terms: int
    cutoff: Optional[int] = None
    tail: Optional[float] = None

    def to_json(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "error": self.error,
            "tol": self.tol,
            "terms": self.terms,
            "cutoff": self.cutoff,
            "tail": self.tail,
        }


def _check_im(tau: complex, floor: float) -> None:
    if tau.imag < floor:
        raise ConvergenceTooSlow(f"im(tau)={tau.imag:.3g} is below the floor {floor}")


def term_bound(tau: complex, tol: float) -> int:
    """Number of terms n with exp(-pi im(tau) n^2) >= tol."""

    return int(ceil(sqrt(-log(tol) / (pi * tau.imag)))) + 1


def eval_theta(j: int, tau: complex, tol: float = 1e-16, floor: float = DEFAULT_FLOOR) -> complex:
    _check_im(tau, floor)
    n = np.arange(term_bound(tau, tol) + 1)
    if j == 2:
        return complex(2 * np.sum(np.exp(1j * pi * tau * (n + 0.5) ** 2)))
    elif j == 3:
        return complex(1 + 2 * np.sum(np.exp(1j * pi * tau * n[1:] ** 2)))
    elif j == 4:
        return complex(1 + 2 * np.sum((-1.0) ** n[1:] * np.exp(1j * pi * tau * n[1:] ** 2)))
    raise ValueError(f"Theta index must be 2, 3 or 4, got {j}")


def eval_eta(tau: complex, tol: float = 1e-16, floor: float = DEFAULT_FLOOR) -> complex:
    """e^(pi i tau / 12) prod (1 - e^(2 pi i n tau))"""

    _check_im(tau, floor)
    m = int(ceil(-log(tol) / (2 * pi * tau.imag))) + 1
    n = np.arange(1, m + 1)
    return complex(np.exp(1j * pi * tau / 12) * np.prod(1 - np.exp(2j * pi * n * tau)))


def eval_series(s: QSeries, tau: complex) -> complex:
    """Evaluate at u = e^(pi i tau / 4)."""

    if s.is_zero():
        return 0j
    exps = s.min_exp + np.arange(len(s.coeffs))
    coeffs = np.array([float(c) for c in s.coeffs])
    return complex(np.sum(coeffs * np.exp(1j * pi * tau / 4 * exps)))


def psi_multiplier(sigma: SL2Matrix) -> int:
    """Phase index p with theta_2^2(sigma tau) = e^(2 pi i p / 8) (c tau + d) theta_2^2(tau)."""

    if sigma.c % 2:
        raise OddC(f"{sigma} is not in Gamma_0(2)")
    # psi = i^(bd + d - 1), a character on Gamma_0(2)
    return (2 * (sigma.b * sigma.d + sigma.d - 1)) % 8


def transform_check(
    sigma: SL2Matrix, tau: complex, power: int, tol: float, floor: float = DEFAULT_FLOOR
) -> NumericCheck:
    """theta_2^power(sigma tau) against psi(sigma)^(power/2) (c tau + d)^(power/2) theta_2^power(tau)."""

    if power < 2 or power % 2:
        raise ValueError(f"Power must be even and positive, got {power}")
    k = power // 2
    idx = psi_multiplier(sigma)
    image = sigma.apply(tau)
    lhs = eval_theta(2, image, floor=floor) ** power
    rhs = np.exp(2j * pi * idx * k / 8) * sigma.denominator(tau) ** k * eval_theta(2, tau, floor=floor) ** power
    error = abs(lhs - rhs) / abs(rhs)
    terms = term_bound(image, 1e-16) + term_bound(tau, 1e-16)
    logger.debug("theta_2^%d under %s at %s: relative error %.3g", power, sigma, tau, error)
    return NumericCheck(bool(error < tol), float(error), tol, terms)


def eta_multiplier(sigma: SL2Matrix, tau: complex) -> complex:
    a, b, c, d = sigma.a, sigma.b, sigma.c, sigma.d
    if d > 0 and d % 2:
        phase = (d * (b - c) + a * c * (1 - d * d) + 3 * d - 3) / 12
        return kronecker(c, d) * np.exp(1j * pi * phase) * np.sqrt(complex(c * tau + d))
    elif c > 0 and c % 2:
        phase = (c * (a + d) + b * d * (1 - c * c) - 3 * c + 3) / 12
        return kronecker(d, c) * np.exp(1j * pi * phase) * np.sqrt(-1j * (c * tau + d))
    raise BranchUnavailable(f"{sigma} has neither odd positive d nor odd positive c")


def dedekind_eta_check(sigma: SL2Matrix, tau: complex, tol: float, floor: float = DEFAULT_FLOOR) -> NumericCheck:
    factor = eta_multiplier(sigma, tau)
    lhs = eval_eta(sigma.apply(tau), floor=floor)
    rhs = factor * eval_eta(tau, floor=floor)
    error = abs(lhs - rhs) / abs(rhs)
    terms = int(ceil(-log(1e-16) / (2 * pi * min(tau.imag, sigma.apply(tau).imag)))) + 1
    return NumericCheck(bool(error < tol), float(error), tol, terms)


def theta_eta_check(tau: complex, tol: float, floor: float = DEFAULT_FLOOR) -> NumericCheck:
    """theta_2(tau) = 2 eta(2 tau)^2 / eta(tau)"""

    lhs = eval_theta(2, tau, floor=floor)
    rhs = 2 * eval_eta(2 * tau, floor=floor) ** 2 / eval_eta(tau, floor=floor)
    error = abs(lhs - rhs) / abs(rhs)
    return NumericCheck(bool(error < tol), float(error), tol, term_bound(tau, 1e-16))


class LatticeFamily(Enum):
    M4K = "M4k"
    M4K2STAR = "M4k+2*"
    M2K1CHI = "M2k+1"


def lattice_weight(family: LatticeFamily, k: int) -> int:
    if family is LatticeFamily.M4K:
        return 4 * k
    elif family is LatticeFamily.M4K2STAR:
        return 4 * k + 2
    return 2 * k + 1


Rows = List[Tuple[int, np.ndarray, np.ndarray]]


def _rows(family: LatticeFamily, k: int, tau: complex, cutoff: int) -> Rows:
    """Each entry (A, B, coef) stands for the rows sum_m coef (A m + B)^(-w)."""

    n = np.arange(-cutoff, cutoff + 1)
    if family is LatticeFamily.M4K:
        n = n[n % 2 == 1]
        return [(1, n * tau, np.ones(len(n)))]
    elif family is LatticeFamily.M4K2STAR:
        n = n[n % 2 == 1]
        ones = np.ones(len(n))
        return [(2, n * tau, ones), (2, 1 + n * tau, -ones)]
    twist = (-1) ** (k + 1) * 1j
    ones = np.ones(len(n), dtype=np.complex128)
    return [(4, 1 + (2 * n + 1) * tau, ones), (4, 2 * n + 2 + (2 * n + 1) * tau, twist * ones)]


def lattice_sum(family: LatticeFamily, k: int, tau: complex, cutoff: int) -> Tuple[complex, int, float]:
    """Truncated lattice sum over |m|, |n| <= cutoff with an integral tail correction per row.

    Returns the sum, the number of terms and the largest term magnitude.
    """

    w = lattice_weight(family, k)
    m = np.arange(-cutoff, cutoff + 1)
    total = 0j
    size = 0
    largest = 0.0
    edge = cutoff + 0.5
    for a, b, coef in _rows(family, k, tau, cutoff):
        z = a * m[None, :] + b[:, None]
        terms = coef[:, None] * z ** (-w)
        correction = coef * ((a * edge + b) ** (1 - w) - (-a * edge + b) ** (1 - w)) / (a * (w - 1))
        total += np.sum(terms) + np.sum(correction)
        size += terms.size
        largest = max(largest, float(np.max(np.abs(terms))))
    return complex(total), size, largest


def lattice_q_side(family: LatticeFamily, k: int, tau: complex, tol: float) -> complex:
    w = lattice_weight(family, k)
    # enough u-exponents for u^order * order^w to drop far below tol
    order = max(64, int(ceil(4 * (-log(tol) + 30 + 4 * w) / (pi * tau.imag))))
    if family is LatticeFamily.M4K:
        s = lambert_series(lambda n: n ** (4 * k - 1), lambda n: 8 * n, lambda n: 16 * n, order)
        factor = 2 ** (4 * k + 1) * pi ** (4 * k) / factorial(4 * k - 1)
    elif family is LatticeFamily.M4K2STAR:
        s = lambert_series(
            lambda n: (2 * n + 1) ** (4 * k + 1),
            lambda n: 4 * (2 * n + 1),
            lambda n: 8 * (2 * n + 1),
            order,
            first=0,
        )
        factor = -4 * pi ** (4 * k + 2) / factorial(4 * k + 1)
    else:
        residue = 1 if k % 2 == 0 else 3
        s = sigma_progression(2 * k, residue, order, u_step=2)
        factor = (-1) ** k * pi ** (2 * k + 1) / (2 ** (2 * k - 1) * factorial(2 * k))
    return factor * eval_series(s, tau)


def lattice_sum_check(family: LatticeFamily, k: int, tau: complex, cutoff: int, tol: float) -> NumericCheck:
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if lattice_weight(family, k) < 3:
        raise ValueError("Lattice sums need weight >= 3 to converge absolutely")
    if cutoff < 2:
        raise CutoffTooSmall(f"cutoff must be at least 2, got {cutoff}")

    value, size, largest = lattice_sum(family, k, tau, cutoff)
    coarse, _, _ = lattice_sum(family, k, tau, cutoff // 2)
    tail = abs(value - coarse) + size * EPS * largest
    if tail > tol:
        raise CutoffTooSmall(f"Estimated tail {tail:.3g} exceeds tolerance {tol:.3g} at cutoff {cutoff}")

    expected = lattice_q_side(family, k, tau, tol)
    error = abs(value - expected)
    logger.debug("%s k=%d at %s: lattice %s, q-side %s", family.value, k, tau, value, expected)
    return NumericCheck(bool(error <= tol + tail), float(error), tol, size, cutoff, float(tail))


Check = Callable[[SL2Matrix, complex], NumericCheck]


def random_checks(
    n: int, check: Check, seed: Optional[int] = None, max_length: int = 6, min_im: float = 1e-3
) -> Iterator[Tuple[SL2Matrix, complex, NumericCheck]]:
    """Run `check` on `n` random Gamma_0(2) words and points. Pairs whose image falls below
    `min_im` are redrawn.
    """

    rng = np.random.default_rng(seed)
    done = 0
    while done < n:
        sigma = random_word(rng, max_length)
        tau = random_point(rng)
        if sigma.apply(tau).imag < min_im:
            logger.debug("Redrawing %s at %s", sigma, tau)
            continue
        yield sigma, tau, check(sigma, tau)
        done += 1
