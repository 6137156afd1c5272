import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import repeat
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .certificates import IdentityCertificate
from .eisenstein import eis_series, eisenstein_spec
from .exceptions import InsufficientOrder, ResidualNonzero, UnsupportedPower
from .series import QSeries, equal_to_order, pochhammer_inf, power, shift, truncate
from .theta import theta_power

logger = logging.getLogger(__name__)

DEFAULT_MARGIN = 40


@lru_cache(maxsize=256)
def _pochhammer_power(m: int, e: int, order: int) -> QSeries:
    return power(pochhammer_inf(m, order), e)


def _q_power_label(u_exp: int) -> str:
    e = Fraction(u_exp, 4)
    if e == 0:
        return ""
    elif e == 1:
        return "q"
    elif e.denominator == 1:
        return f"q^{e.numerator}"
    return f"q^({e})"


@dataclass(frozen=True)
class EtaQuotient:
    """u^prefactor_u_exp * prod (q^m; q^m)_inf^e over `factors`."""

    prefactor_u_exp: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        merged: Dict[int, int] = {}
        for m, e in self.factors:
            if m < 1:
                raise ValueError(f"Pochhammer base must be positive, got {m}")
            merged[m] = merged.get(m, 0) + e
        object.__setattr__(self, "factors", tuple((m, e) for m, e in sorted(merged.items()) if e))

    @property
    def leading_exponent(self) -> int:
        return self.prefactor_u_exp

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(e for _, e in self.factors), 2)

    def expand(self, order: int) -> QSeries:
        inner = max(order - self.prefactor_u_exp, 0)
        core = QSeries.one(inner)
        for m, e in self.factors:
            core = core * _pochhammer_power(m, e, inner)
        return truncate(shift(core, self.prefactor_u_exp), order)

    def label(self) -> str:
        parts = [_q_power_label(self.prefactor_u_exp)]
        for m, e in self.factors:
            base = "(q;q)" if m == 1 else f"(q^{m};q^{m})"
            parts.append(base if e == 1 else f"{base}^{e}")
        return "".join(parts) or "1"

    def to_json(self) -> Dict[str, Any]:
        return {"prefactor_u_exp": self.prefactor_u_exp, "factors": [[m, e] for m, e in self.factors]}

    @classmethod
    def parse(cls, line: str) -> "EtaQuotient":
        """Parse `"prefactor_u_exp; m1^e1 m2^e2 ..."`."""

        head, sep, tail = line.partition(";")
        if not sep:
            raise ValueError(f"Expected 'prefactor; factors', got {line!r}")
        factors = []
        for token in tail.split():
            m, caret, e = token.partition("^")
            factors.append((int(m), int(e) if caret else 1))
        return cls(int(head), tuple(factors))


@dataclass(frozen=True)
class BasisSpec:
    elements: Tuple[EtaQuotient, ...]

    def __post_init__(self) -> None:
        leads = [el.leading_exponent for el in self.elements]
        if any(a >= b for a, b in zip(leads, leads[1:])):
            raise ValueError(f"Basis leading exponents must be strictly increasing, got {leads}")

    @classmethod
    def from_unsorted(cls, elements: Iterable[EtaQuotient]) -> "BasisSpec":
        return cls(tuple(sorted(elements, key=lambda el: el.leading_exponent)))

    @property
    def max_leading_exponent(self) -> int:
        return self.elements[-1].leading_exponent if self.elements else 0


def parse_basis_file(path: Path) -> BasisSpec:
    elements = []
    with open(path, encoding="utf-8") as fr:
        for lineno, line in enumerate(fr, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                elements.append(EtaQuotient.parse(line))
            except ValueError as e:
                raise ValueError(f"{path}:{lineno}: {e}") from e
    return BasisSpec.from_unsorted(elements)


def _basis(*elements: Tuple[int, Sequence[Tuple[int, int]]]) -> BasisSpec:
    return BasisSpec(tuple(EtaQuotient(s, tuple(f)) for s, f in elements))


DEFAULT_BASES: Dict[int, BasisSpec] = {
    2: _basis(),
    4: _basis(),
    6: _basis(),
    8: _basis(),
    10: _basis((2, [(2, 14), (4, -4)])),
    12: _basis((4, [(2, 12)])),
    14: _basis((6, [(2, 10), (4, 4)])),
    16: _basis((8, [(2, 8), (4, 8)])),
    18: _basis((2, [(2, 30), (4, -12)]), (10, [(2, 6), (4, 12)])),
    20: _basis((4, [(2, 28), (4, -8)]), (12, [(2, 4), (4, 16)])),
    22: _basis((6, [(2, 26), (4, -4)]), (14, [(2, 2), (4, 20)])),
    24: _basis((8, [(2, 24)]), (16, [(4, 24)])),
}


def default_basis(two_k: int) -> BasisSpec:
    try:
        return DEFAULT_BASES[two_k]
    except KeyError:
        supported = ", ".join(map(str, sorted(DEFAULT_BASES)))
        raise UnsupportedPower(f"No default basis for 2k={two_k}. Supported: {supported}") from None


def cusp_part(two_k: int, order: int) -> QSeries:
    c, e = eis_series(two_k, order)
    return theta_power(2, two_k, 1, order) - c * e


def express_in_basis(s: QSeries, basis: BasisSpec, order: int, margin: int = DEFAULT_MARGIN) -> List[Fraction]:
    """Coefficients c_i with s - sum c_i b_i zero to `order`, solved by leading exponent."""

    if basis.elements and order < basis.max_leading_exponent + margin:
        raise InsufficientOrder(
            f"Order {order} is too small for a basis with leading exponent {basis.max_leading_exponent} "
            f"(margin {margin})"
        )

    residual = truncate(s, order)
    coeffs = []
    for el in basis.elements:
        c = residual.coefficient(el.leading_exponent)
        coeffs.append(c)
        if c:
            residual = residual - c * el.expand(order)
        logger.debug("%s: %s", el.label(), c)

    if not residual.is_zero():
        e, c = next(residual.items())
        raise ResidualNonzero(e, c, order)
    return coeffs


def decompose(
    two_k: int, order: int, basis: Optional[BasisSpec] = None, margin: int = DEFAULT_MARGIN
) -> IdentityCertificate:
    spec = eisenstein_spec(two_k)
    if basis is None:
        basis = default_basis(two_k)

    theta = theta_power(2, two_k, 1, order)
    c, e = eis_series(two_k, order)
    coeffs = express_in_basis(theta - c * e, basis, order, margin)

    rebuilt = c * e
    for el, coeff in zip(basis.elements, coeffs):
        rebuilt = rebuilt + coeff * el.expand(order)
    check = equal_to_order(theta, rebuilt, order)

    return IdentityCertificate.from_check(
        f"decompose{two_k}",
        check,
        section="display",
        description=f"theta_2^{two_k} as Eisenstein part plus cusp part",
        eis=spec,
        cusp=list(zip(basis.elements, coeffs)),
    )


def _verify_by_id(identity_id: str, order: int) -> IdentityCertificate:
    from .corpus import CATALOG

    return CATALOG[identity_id].verify(order)


def iter_identity_corpus(order: int, ids: Sequence[str], jobs: int = 1) -> Iterator[IdentityCertificate]:
    """Yield certificates for `ids` in the given order."""

    if jobs <= 1:
        for identity_id in ids:
            yield _verify_by_id(identity_id, order)
        return

    logger.info("Verifying %d identities with %d processes", len(ids), jobs)
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        yield from executor.map(_verify_by_id, ids, repeat(order))


def verify_identity_corpus(
    order: int,
    selection: Optional[Sequence[str]] = None,
    jobs: int = 1,
    sections: Optional[Sequence[str]] = None,
) -> List[IdentityCertificate]:
    """Verify catalogue identities in catalogue order. Without `sections` the display, list
    and supplement sections are used.
    """

    from .corpus import select

    ids = select(selection, sections or ("display", "list", "supplement"))
    return list(iter_identity_corpus(order, ids, jobs))
