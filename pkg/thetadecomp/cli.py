import logging
import sys
from argparse import ArgumentDefaultsHelpFormatter, ArgumentParser, ArgumentTypeError, Namespace
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, NoReturn, Optional, Sequence, TextIO, Tuple

import colorama
from colorama import Fore, Style
from genutility.args import is_file
from genutility.exceptions import assert_choices
from genutility.file import StdoutFile
from genutility.logging import IsoDatetimeFormatter
from genutility.rich import Progress
from platformdirs import user_data_dir
from rich.progress import Progress as RichProgress
from rich.progress import ProgressType, TaskProgressColumn, TextColumn, TimeElapsedColumn

from .certificates import SCHEMA, IdentityCertificate, certificates_document, dumps, fraction_str, save_certificates
from .corpus import CATALOG, SECTIONS, select
from .decompose import DEFAULT_MARGIN, BasisSpec, decompose, iter_identity_corpus, parse_basis_file
from .eisenstein import bonus_unit_sum, bonus_vanishing_sum, coeff_closed_form, palin_p, palin_P
from .exceptions import (
    ConvergenceTooSlow,
    CutoffTooSmall,
    InsufficientOrder,
    OddC,
    ResidualNonzero,
    ThetaDecompError,
    UnsupportedPower,
    UsageError,
)
from .numeric import (
    LatticeFamily,
    NumericCheck,
    SL2Matrix,
    dedekind_eta_check,
    lattice_sum_check,
    random_checks,
    theta_eta_check,
    transform_check,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_RESIDUAL = 2
EXIT_USAGE = 64

DEFAULT_ORDER = 400
MIN_ORDER = 40
DEFAULT_TOL = 1e-9
DEFAULT_LATTICE_TOL = 1e-6
NUMERIC_FLOOR = 1e-2
OUTPUTS = ("text", "json")
DEFAULT_CERT_DIR = Path(user_data_dir("theta-decompose", "Dobatymo")) / "certificates"

LOG_FORMAT = "%(asctime)s\t%(levelname)s\t%(filename)s:%(lineno)d\t%(funcName)s: %(message)s"

# library errors caused by the arguments rather than by the computation
USAGE_ERRORS = (UsageError, UnsupportedPower, OddC, ConvergenceTooSlow)

FAMILY_TOKENS = {
    **{family.value.upper(): family for family in LatticeFamily},
    **{family.name: family for family in LatticeFamily},
}


class UsageArgumentParser(ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    order: int = DEFAULT_ORDER
    tol: float = DEFAULT_TOL
    output: str = "text"
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.order < MIN_ORDER:
            raise ValueError(f"order must be at least {MIN_ORDER}, got {self.order}")
        if not 0 < self.tol < 1:
            raise ValueError(f"tol must lie in (0, 1), got {self.tol}")
        assert_choices("output", (self.output,), frozenset(OUTPUTS))
        if self.jobs < 1:
            raise ValueError(f"jobs must be at least 1, got {self.jobs}")

    @classmethod
    def from_args(cls, args: Namespace) -> "RunConfig":
        return cls(
            order=getattr(args, "order", DEFAULT_ORDER),
            tol=getattr(args, "tol", DEFAULT_TOL),
            output=args.output,
            jobs=getattr(args, "jobs", 1),
        )


def colored(word: str, ok: bool, stream: TextIO) -> str:
    if not stream.isatty():
        return word
    color = Fore.GREEN if ok else Fore.RED
    return f"{color}{word}{Style.RESET_ALL}"


def write_json(fw: TextIO, doc: Dict[str, Any]) -> None:
    fw.write(dumps(doc) + "\n")


def track_identities(sequence: Iterable[ProgressType], description: str) -> Iterable[ProgressType]:
    progress = RichProgress(
        TextColumn("{task.completed} identities verified from {task.description}"),
        TaskProgressColumn(show_speed=True),
        TimeElapsedColumn(),
    )
    with progress:
        p = Progress(progress)
        yield from p.track(sequence, description=description)


def certificate_line(cert: IdentityCertificate, stream: TextIO) -> str:
    status = colored(f"{cert.status:<8}", cert.equal, stream)
    line = f"{status}  {cert.identity_id:<24}  order {cert.order_checked}"
    if cert.mismatch is not None:
        m = cert.mismatch
        line += f"  first difference at u^{m.exponent}: {m.lhs} != {m.rhs}"
    return line


def cmd_verify(config: RunConfig, args: Namespace, fw: TextIO) -> int:
    ids = select(args.ids, args.sections or SECTIONS)
    logger.info("Verifying %d identities to order %d", len(ids), config.order)

    it = iter_identity_corpus(config.order, ids, config.jobs)
    if args.verbose and config.output == "text":
        it = track_identities(it, "catalogue")

    certs = []
    for cert in it:
        certs.append(cert)
        if config.output == "text":
            fw.write(certificate_line(cert, fw) + "\n")

    doc = certificates_document(certs, config.order)
    if config.output == "json":
        write_json(fw, doc)
    else:
        summary = doc["summary"]
        fw.write(f"Verified {summary['total']} identities: {summary['equal']} equal, {summary['mismatch']} mismatch\n")

    if args.save_certificates:
        save_certificates(certs, args.cert_dir)

    return EXIT_OK if all(cert.equal for cert in certs) else EXIT_FAILED


def display_identity(cert: IdentityCertificate, two_k: int) -> str:
    assert cert.eis is not None
    parts = [f"{cert.eis.constant} * {cert.eis.series_label()}"]
    for eta, coeff in cert.cusp:
        parts.append(f"{coeff} * {eta.label()}")
    return f"theta_2^{two_k} = " + " + ".join(parts).replace("+ -", "- ")


def cmd_decompose(config: RunConfig, args: Namespace, fw: TextIO) -> int:
    try:
        cert = decompose(args.two_k, config.order, args.basis, args.margin)
    except InsufficientOrder as e:
        logger.error("%s", e)
        if config.output == "json":
            write_json(fw, {"schema": SCHEMA, "two_k": args.two_k, "error": "order", "message": str(e)})
        else:
            fw.write(f"{e}\n")
        return EXIT_RESIDUAL
    except ResidualNonzero as e:
        logger.error("theta_2^%d is not expressible in the basis: %s", args.two_k, e)
        if config.output == "json":
            write_json(
                fw,
                {
                    "schema": SCHEMA,
                    "two_k": args.two_k,
                    "error": "residual",
                    "u_exp": e.exponent,
                    "coeff": fraction_str(e.coeff),
                    "order": e.order,
                },
            )
        else:
            fw.write(f"residual u^{e.exponent} coefficient {e.coeff} is nonzero to order {e.order}\n")
        return EXIT_RESIDUAL

    if config.output == "json":
        write_json(fw, {"schema": SCHEMA, "two_k": args.two_k, "certificate": cert.to_json()})
    else:
        fw.write(display_identity(cert, args.two_k) + "\n")
        if cert.eis is not None and cert.eis.lambert_constant is not None:
            fw.write(f"two-term Lambert constant: {cert.eis.lambert_constant}\n")
        fw.write(certificate_line(cert, fw) + "\n")

    if args.save_certificates:
        save_certificates([cert], args.cert_dir)

    return EXIT_OK if cert.equal else EXIT_FAILED


def poly_report(family: str, n: int) -> Dict[str, Any]:
    poly = palin_p(n) if family == "p" else palin_P(n)
    out: Dict[str, Any] = {
        "schema": SCHEMA,
        "family": family,
        "n": n,
        "coeffs": poly.to_json(),
        "palindromic": poly.is_palindromic(),
    }
    if family == "p" and n >= 2:
        closed = [coeff_closed_form(m, n) for m in range(1, n)]
        out["closed_form"] = closed == list(poly.coeffs[1:n])
        out["unit_sum"] = bonus_unit_sum(n)
        out["vanishing_sum"] = bonus_vanishing_sum(n, n)
    return out


def cmd_poly(config: RunConfig, args: Namespace, fw: TextIO) -> int:
    report = poly_report(args.family, args.n)
    ok = report["palindromic"] and report.get("closed_form", True)

    if config.output == "json":
        write_json(fw, report)
    else:
        coeffs = " ".join(map(str, report["coeffs"]))
        fw.write(f"{args.family}_{args.n}: {coeffs}\n")
        fw.write(f"palindromic: {colored(str(report['palindromic']), report['palindromic'], fw)}\n")
        if "closed_form" in report:
            fw.write(f"closed form: {colored(str(report['closed_form']), report['closed_form'], fw)}\n")
            fw.write(f"binomial sums: {report['unit_sum']} and {report['vanishing_sum']}\n")

    return EXIT_OK if ok else EXIT_FAILED


def positive_int(value: str) -> int:
    n = int(value)
    if n < 1:
        raise ArgumentTypeError(f"expected an integer >= 1, got {n}")
    return n


def even_power(value: str) -> int:
    n = positive_int(value)
    if n % 2:
        raise ArgumentTypeError(f"expected an even power, got {n}")
    return n


def sigma_arg(value: str) -> SL2Matrix:
    """Parse `A,B,C,D` into the matrix (A, B; C, D)."""

    try:
        a, b, c, d = (int(x) for x in value.split(","))
        return SL2Matrix(a, b, c, d)
    except ValueError as e:
        raise ArgumentTypeError(f"expected A,B,C,D with AD - BC = 1, got {value!r}") from e


def tau_arg(value: str) -> complex:
    """Parse `RE,IM` into a point of the upper half plane."""

    try:
        re, im = (float(x) for x in value.split(","))
    except ValueError as e:
        raise ArgumentTypeError(f"expected RE,IM, got {value!r}") from e
    if im <= 0:
        raise ArgumentTypeError(f"tau must lie in the upper half plane, got im={im}")
    return complex(re, im)


def family_arg(value: str) -> LatticeFamily:
    token = value.upper()
    try:
        assert_choices("family", (token,), frozenset(FAMILY_TOKENS))
    except ValueError as e:
        raise ArgumentTypeError(str(e)) from e
    return FAMILY_TOKENS[token]


def basis_arg(value: str) -> BasisSpec:
    path = is_file(value)
    try:
        return parse_basis_file(path)
    except ValueError as e:
        raise ArgumentTypeError(str(e)) from e


def _numeric_cases(config: RunConfig, args: Namespace) -> List[Tuple[str, NumericCheck]]:
    tol = config.tol
    if args.check == "lattice":
        family = args.family
        check = lattice_sum_check(family, args.k, args.tau, args.cutoff, tol)
        return [(f"{family.value} k={args.k} at {args.tau} cutoff {args.cutoff}", check)]
    elif args.check == "theta-eta":
        return [(f"theta_2 = 2 eta(2 tau)^2 / eta(tau) at {args.tau}", theta_eta_check(args.tau, tol))]

    if args.check == "transform":
        func: Callable[[SL2Matrix, complex], NumericCheck] = partial(_transform, power=args.power, tol=tol)
        name = f"theta_2^{args.power}"
    else:
        func = partial(_eta, tol=tol)
        name = "eta"

    if args.random:
        return [
            (f"{name} under {sigma} at {tau:.6f}", check)
            for sigma, tau, check in random_checks(args.random, func, args.seed, min_im=NUMERIC_FLOOR)
        ]
    if args.sigma is None or args.tau is None:
        raise UsageError("Either --random or both --sigma and --tau are required")
    return [(f"{name} under {args.sigma} at {args.tau}", func(args.sigma, args.tau))]


def _transform(sigma: SL2Matrix, tau: complex, power: int, tol: float) -> NumericCheck:
    return transform_check(sigma, tau, power, tol, floor=NUMERIC_FLOOR)


def _eta(sigma: SL2Matrix, tau: complex, tol: float) -> NumericCheck:
    return dedekind_eta_check(sigma.normalized(), tau, tol, floor=NUMERIC_FLOOR)


def cmd_numeric(config: RunConfig, args: Namespace, fw: TextIO) -> int:
    try:
        cases = _numeric_cases(config, args)
    except CutoffTooSmall as e:
        logger.error("%s", e)
        fw.write(f"{e}\n")
        return EXIT_FAILED

    if config.output == "json":
        checks = [dict(check.to_json(), name=name) for name, check in cases]
        write_json(fw, {"schema": SCHEMA, "check": args.check, "results": checks})
    else:
        for name, check in cases:
            status = colored("pass" if check.passed else "fail", check.passed, fw)
            line = f"{status}  {name}: error {check.error:.3g} vs tol {check.tol:.3g}"
            if check.tail is not None:
                line += f" (tail {check.tail:.3g})"
            fw.write(line + "\n")

    return EXIT_OK if all(check.passed for _, check in cases) else EXIT_FAILED


def setup_logging(verbose: bool, debug: bool, log_file: Optional[Path]) -> logging.Handler:
    if log_file is None:
        handler: logging.Handler = logging.StreamHandler()
    else:
        handler = logging.FileHandler(log_file, encoding="utf-8")
    formatter = IsoDatetimeFormatter(LOG_FORMAT, sep=" ", timespec="milliseconds", aslocal=True)
    handler.setFormatter(formatter)

    root = logging.getLogger(None)
    root.addHandler(handler)
    if debug:
        root.setLevel(logging.DEBUG)
    elif verbose:
        root.setLevel(logging.INFO)
    else:
        root.setLevel(logging.WARNING)
    return handler


def _add_order(parser: ArgumentParser) -> None:
    parser.add_argument("--order", type=int, default=DEFAULT_ORDER, help="Number of u = q^(1/4) exponents to compare")


def _add_certificates(parser: ArgumentParser) -> None:
    parser.add_argument("--save-certificates", action="store_true", help="Write one JSON certificate per identity")
    parser.add_argument("--cert-dir", type=Path, default=DEFAULT_CERT_DIR, help="Directory for saved certificates")


def _add_tau(parser: ArgumentParser, required: bool) -> None:
    parser.add_argument("--tau", type=tau_arg, metavar="RE,IM", required=required, help="Point in the upper half plane")


def get_parser() -> ArgumentParser:
    parser = UsageArgumentParser(
        formatter_class=ArgumentDefaultsHelpFormatter,
        description="Exact q-series verification of theta_2 power decompositions and related identities.",
    )
    parser.add_argument("--output", choices=OUTPUTS, default="text", help="Report format")
    parser.add_argument("--out", type=Path, default=None, help="Output file, default is stdout")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log info messages and show progress")
    parser.add_argument("--debug", action="store_true", help="Log debug messages")
    parser.add_argument("--log-file", type=Path, default=None, help="Log to this file instead of stderr")
    subparsers = parser.add_subparsers(dest="command", required=True)

    p = subparsers.add_parser(
        "verify", formatter_class=ArgumentDefaultsHelpFormatter, help="Verify catalogue identities"
    )
    _add_order(p)
    p.add_argument("--id", dest="ids", action="append", choices=list(CATALOG), metavar="ID", help="Identity id")
    p.add_argument("--section", dest="sections", action="append", choices=SECTIONS, help="Catalogue section")
    p.add_argument("--jobs", type=int, default=1, help="Number of worker processes")
    _add_certificates(p)
    p.set_defaults(func=cmd_verify)

    p = subparsers.add_parser(
        "decompose", formatter_class=ArgumentDefaultsHelpFormatter, help="Decompose theta_2^(2k)"
    )
    p.add_argument("two_k", type=int, help="Even power of theta_2")
    p.add_argument("--basis", type=basis_arg, default=None, help="Basis file with one eta quotient per line")
    p.add_argument("--margin", type=int, default=DEFAULT_MARGIN, help="Order margin beyond the last basis element")
    _add_order(p)
    _add_certificates(p)
    p.set_defaults(func=cmd_decompose)

    p = subparsers.add_parser(
        "poly", formatter_class=ArgumentDefaultsHelpFormatter, help="Eulerian numerator polynomials"
    )
    p.add_argument("family", choices=("p", "P"), help="p_n or P_n")
    p.add_argument("n", type=positive_int, help="Index n >= 1")
    p.set_defaults(func=cmd_poly)

    p = subparsers.add_parser("numeric", formatter_class=ArgumentDefaultsHelpFormatter, help="Floating point checks")
    checks = p.add_subparsers(dest="check", required=True)

    for name, title in (("transform", "theta_2 powers under Gamma_0(2)"), ("eta", "Dedekind eta transformation")):
        c = checks.add_parser(name, formatter_class=ArgumentDefaultsHelpFormatter, help=title)
        c.add_argument("--sigma", type=sigma_arg, metavar="A,B,C,D", help="Matrix (a, b; c, d)")
        _add_tau(c, required=False)
        c.add_argument("--random", type=int, default=0, help="Number of random words to check instead")
        c.add_argument("--seed", type=int, default=None, help="Seed for --random")
        c.add_argument("--tol", type=float, default=DEFAULT_TOL, help="Relative tolerance")
        if name == "transform":
            c.add_argument("--power", type=even_power, default=2, help="Even power of theta_2")

    c = checks.add_parser("theta-eta", formatter_class=ArgumentDefaultsHelpFormatter, help="theta_2 as eta quotient")
    _add_tau(c, required=True)
    c.add_argument("--tol", type=float, default=DEFAULT_TOL, help="Relative tolerance")

    c = checks.add_parser("lattice", formatter_class=ArgumentDefaultsHelpFormatter, help="Lattice sums")
    c.add_argument(
        "--family",
        type=family_arg,
        metavar="{" + ",".join(f.name for f in LatticeFamily) + "}",
        required=True,
        help="Lattice sum family",
    )
    c.add_argument("-k", "--k", dest="k", type=positive_int, required=True, help="Index k >= 1")
    _add_tau(c, required=True)
    c.add_argument("--cutoff", type=int, default=400, help="Largest |m| and |n| summed")
    c.add_argument("--tol", type=float, default=DEFAULT_LATTICE_TOL, help="Absolute tolerance")
    p.set_defaults(func=cmd_numeric)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = get_parser()
    args = parser.parse_args(argv)

    try:
        config = RunConfig.from_args(args)
    except ValueError as e:
        parser.error(str(e))

    handler = setup_logging(args.verbose, args.debug, args.log_file)
    colorama.init()

    try:
        with StdoutFile(args.out, "wt", encoding="utf-8") as fw:
            return args.func(config, args, fw)
    except USAGE_ERRORS as e:
        logger.error("%s", e)
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ThetaDecompError:
        logger.exception("%s aborted", args.command)
        return EXIT_FAILED
    finally:
        logging.getLogger(None).removeHandler(handler)
        handler.close()
