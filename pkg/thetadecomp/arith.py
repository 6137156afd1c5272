import threading
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Generic, Iterator, List, TypeVar

import sympy
from sympy.functions.combinatorial.numbers import kronecker_symbol

from .exceptions import OddIndex

T = TypeVar("T")


class MemoTable(Generic[T]):
    """Append-only table of a sequence defined by a recurrence on its previous values."""

    def __init__(self, seed: List[T], extend: Callable[[List[T]], T]) -> None:
        self._values = list(seed)
        self._extend = extend
        self._lock = threading.Lock()

    def __getitem__(self, n: int) -> T:
        if n < len(self._values):
            return self._values[n]
        with self._lock:
            while len(self._values) <= n:
                self._values.append(self._extend(self._values))
            return self._values[n]


def _check_even(n: int) -> None:
    if n < 0:
        raise ValueError(f"Index must be non-negative, got {n}")
    if n % 2:
        raise OddIndex(f"Only even indices are supported, got {n}")


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> Fraction:
    b = sympy.bernoulli(n)
    return Fraction(int(b.p), int(b.q))


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n for even n >= 0."""

    _check_even(n)
    return _bernoulli(n)


@lru_cache(maxsize=None)
def euler_number(n: int) -> int:
    """Euler number E_n for even n >= 0, signed so that (-1)^(n/2) E_n > 0."""

    _check_even(n)
    return int(sympy.euler(n))


def chi(n: int) -> int:
    r = n % 4
    if r == 1:
        return 1
    elif r == 3:
        return -1
    return 0


def chi2(n: int) -> int:
    return n % 2


def divisors(n: int) -> Iterator[int]:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return iter(sympy.divisors(n))


def sigma_chi(k: int, n: int) -> int:
    return sum(chi(d) * d**k for d in divisors(n))


def kronecker(a: int, b: int) -> int:
    """Kronecker symbol (a/b)."""

    return int(kronecker_symbol(a, b))
