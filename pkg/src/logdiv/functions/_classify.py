import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ._errors import Deadline, ImplicationViolation
from ._homogeneity import is_euler_homogeneous, is_quasi_homogeneous
from ._koszul import is_koszul_free, theta_koszul_check
from ._log_derivations import DivisorInput, SaitoBasis, log_derivations, saito_basis
from ._polynomials import format_poly
from ._rees_kernel import is_linear_jacobian_type
from ._tables import to_frame

logger = logging.getLogger(__name__)

COMPUTED = "computed"
UNKNOWN = "unknown"
NOT_RUN = "not run: no Saito basis"
NOT_RECOGNIZED = "not recognized as free: no Saito basis within the search bounds"
IMPLIED_LJT = "implied: quasi-homogeneous free divisors are of linear jacobian type"
IMPLIED_DLT = "implied: linear jacobian type gives differential linear type"
IMPLIED_KOSZUL = "implied: linear jacobian type gives Koszul free"


@dataclass(frozen=True)
class ClassificationReport:
    """Flags of one divisor, with a provenance note for every flag."""
    divisor: str
    variables: Tuple[str, ...]
    free: Optional[bool]
    euler_homogeneous: bool
    quasi_homogeneous: Optional[Tuple[int, ...]]
    koszul_free: Optional[bool] = None
    linear_jacobian_type: Optional[bool] = None
    differential_linear_type: Optional[bool] = None
    theta_koszul_pair: Optional[bool] = None
    global_test: bool = False
    provenance: Dict[str, str] = field(default_factory=dict)
    basis: Optional[SaitoBasis] = field(default=None, repr=False, compare=False)
    notes: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, object]:
        return {
            "divisor": self.divisor,
            "variables": list(self.variables),
            "free": self.free,
            "euler_homogeneous": self.euler_homogeneous,
            "quasi_homogeneous": list(self.quasi_homogeneous) if self.quasi_homogeneous else None,
            "koszul_free": self.koszul_free,
            "linear_jacobian_type": self.linear_jacobian_type,
            "differential_linear_type": self.differential_linear_type,
            "theta_koszul_pair": self.theta_koszul_pair,
            "global_test": self.global_test,
            "provenance": dict(sorted(self.provenance.items())),
            "saito_basis": self.basis.to_dict() if self.basis is not None else None,
            "notes": list(self.notes),
        }


def implication_violations(report: ClassificationReport) -> List[str]:
    """Messages for every known implication the flags of report contradict."""
    violations = []
    if report.quasi_homogeneous and report.free and report.linear_jacobian_type is False:
        violations.append(f"{report.divisor}: quasi-homogeneous and free but not of linear jacobian type")
    if report.linear_jacobian_type and report.koszul_free is False:
        violations.append(f"{report.divisor}: linear jacobian type but not Koszul free")
    if report.linear_jacobian_type and not report.euler_homogeneous:
        violations.append(f"{report.divisor}: linear jacobian type but not Euler homogeneous")
    return violations


def check_implications(report: ClassificationReport) -> None:
    """Raise ImplicationViolation if the flags contradict a known implication."""
    violations = implication_violations(report)
    if violations:
        raise ImplicationViolation("; ".join(violations))


def classify(d: DivisorInput, attempts: int = 200, seed: int = 0,
             deadline: Optional[Deadline] = None, check: bool = True) -> ClassificationReport:
    """
    Run every divisor test and collect the flags.

    Parameters:
    d (DivisorInput): The divisor.
    attempts (int): Random combinations tried by the Saito basis search.
    seed (int): Seed of the Saito basis search.
    deadline (Deadline): Optional cancellation token for the Groebner runs.
    check (bool): Raise on a contradicted implication. Callers that collect
    violations themselves pass False and use implication_violations.

    Returns:
    ClassificationReport: Flags with provenance. When no Saito basis is found the
    free flag and the basis-dependent flags stay None; absence of a basis within
    the search bounds does not prove the divisor is not free.

    Raises:
    ImplicationViolation: If the computed flags contradict a known implication.
    """
    ders = log_derivations(d, deadline)
    basis = saito_basis(d, ders, attempts=attempts, seed=seed)
    euler = is_euler_homogeneous(d)
    weights = is_quasi_homogeneous(d)
    provenance = {"free": COMPUTED, "euler_homogeneous": COMPUTED, "quasi_homogeneous": COMPUTED}
    notes = []
    global_test = weights is None
    if global_test:
        notes.append("global test: f is not quasi-homogeneous in these coordinates, "
                     "conditions were decided in the polynomial ring")
        logger.warning("classify(%s): global test caveat applies", d)
    if basis is None:
        notes.append("not recognized as free at the origin")
        provenance["free"] = NOT_RECOGNIZED
        for flag in ("koszul_free", "linear_jacobian_type", "differential_linear_type", "theta_koszul_pair"):
            provenance[flag] = NOT_RUN
        report = ClassificationReport(format_poly(d.f), d.variables, None, euler, weights,
                                      global_test=global_test, provenance=provenance, notes=tuple(notes))
        if check:
            check_implications(report)
        return report

    koszul = is_koszul_free(d, basis, deadline)
    ljt = is_linear_jacobian_type(d, basis, deadline)
    theta_pair = theta_koszul_check(d, basis, deadline)
    provenance.update(koszul_free=COMPUTED, linear_jacobian_type=COMPUTED, theta_koszul_pair=COMPUTED)
    if ljt:
        dlt = True
        provenance["differential_linear_type"] = IMPLIED_DLT
    else:
        dlt = None
        provenance["differential_linear_type"] = UNKNOWN
    if weights is not None:
        provenance["linear_jacobian_type"] = f"{COMPUTED}; {IMPLIED_LJT}"
    if ljt:
        provenance["koszul_free"] = f"{COMPUTED}; {IMPLIED_KOSZUL}"
    report = ClassificationReport(format_poly(d.f), d.variables, True, euler, weights, koszul, ljt, dlt,
                                  theta_pair, global_test, provenance, basis, tuple(notes))
    if check:
        check_implications(report)
    logger.debug("classify(%s): %s", d, report.to_dict())
    return report


def corpus_divisors() -> List[Tuple[str, str, Tuple[str, ...]]]:
    """Built-in divisors as (name, expression, variables)."""
    return [
        ("smooth", "x", ("x",)),
        ("smooth curve", "x + y^2", ("x", "y")),
        ("normal crossing", "x*y", ("x", "y")),
        ("cusp", "x^2 - y^3", ("x", "y")),
        ("A4 curve", "x^2 - y^5", ("x", "y")),
        ("cusp and tangent", "y*(x^2 - y^3)", ("x", "y")),
        ("cusp and transversal", "x*(x^2 - y^3)", ("x", "y")),
        ("three lines", "x*y*(x + y)", ("x", "y")),
        ("four lines", "x*y*(x + y)*(x - y)", ("x", "y")),
        ("normal crossing 3", "x*y*z", ("x", "y", "z")),
        ("four planes, non-Koszul", "x1*x2*(x1 + x2)*(x1 + x2*x3)", ("x1", "x2", "x3")),
    ]


def implication_table(reports: List[ClassificationReport], backend: str = "polars"):
    """Summary DataFrame of classification flags, one row per divisor."""
    records = []
    for report in reports:
        records.append({
            "divisor": report.divisor,
            "free": report.free,
            "euler_homogeneous": report.euler_homogeneous,
            "quasi_homogeneous": ",".join(str(w) for w in report.quasi_homogeneous) if report.quasi_homogeneous else "",
            "koszul_free": report.koszul_free,
            "linear_jacobian_type": report.linear_jacobian_type,
            "differential_linear_type": report.differential_linear_type,
            "theta_koszul_pair": report.theta_koszul_pair,
            "global_test": report.global_test,
        })
    return to_frame(records, backend)
