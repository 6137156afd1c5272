import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, Iterable, List, Optional, Tuple

if TYPE_CHECKING:
    from .decompose import EtaQuotient
    from .eisenstein import EisensteinSpec

logger = logging.getLogger(__name__)

SCHEMA = 1
EQUAL = "equal"
MISMATCH = "mismatch"


def fraction_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Mismatch:
    exponent: int
    lhs: Fraction
    rhs: Fraction

    def to_json(self) -> Dict[str, Any]:
        return {"u_exp": self.exponent, "lhs": fraction_str(self.lhs), "rhs": fraction_str(self.rhs)}


@dataclass(frozen=True)
class CheckResult:
    equal: bool
    order: int
    mismatch: Optional[Mismatch] = None

    def __bool__(self) -> bool:
        return self.equal


@dataclass
class IdentityCertificate:
    identity_id: str
    order_checked: int
    status: str
    section: str = ""
    description: str = ""
    mismatch: Optional[Mismatch] = None
    eis: Optional["EisensteinSpec"] = None
    cusp: List[Tuple["EtaQuotient", Fraction]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.status not in (EQUAL, MISMATCH):
            raise ValueError(f"Invalid status: {self.status}")
        if self.status == EQUAL and self.mismatch is not None:
            raise ValueError("An equal certificate cannot carry a mismatch")

    @classmethod
    def from_check(cls, identity_id: str, check: CheckResult, **kwargs) -> "IdentityCertificate":
        status = EQUAL if check.equal else MISMATCH
        return cls(identity_id, check.order, status, mismatch=check.mismatch, **kwargs)

    @property
    def equal(self) -> bool:
        return self.status == EQUAL

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "identity_id": self.identity_id,
            "section": self.section,
            "description": self.description,
            "order_checked": self.order_checked,
            "status": self.status,
        }
        if self.eis is not None:
            out["eis"] = self.eis.to_json()
        if self.cusp:
            out["cusp"] = [dict(eta.to_json(), coeff=fraction_str(coeff)) for eta, coeff in self.cusp]
        if self.mismatch is not None:
            out["mismatch"] = self.mismatch.to_json()
        return out


def certificates_document(certs: Iterable[IdentityCertificate], order: int) -> Dict[str, Any]:
    certs = list(certs)
    failed = sum(1 for cert in certs if not cert.equal)
    return {
        "schema": SCHEMA,
        "order": order,
        "summary": {"total": len(certs), "equal": len(certs) - failed, "mismatch": failed},
        "certificates": [cert.to_json() for cert in certs],
    }


def dumps(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


def save_certificates(certs: Iterable[IdentityCertificate], basepath: Path) -> List[Path]:
    """Write one JSON file per certificate into `basepath`, named after the identity id."""

    basepath.mkdir(parents=True, exist_ok=True)
    paths = []
    for cert in certs:
        path = basepath / f"{cert.identity_id}.json"
        doc = {"schema": SCHEMA, "certificate": cert.to_json()}
        path.write_text(dumps(doc) + "\n", encoding="utf-8")
        logger.info("Wrote certificate %s", path)
        paths.append(path)
    return paths
