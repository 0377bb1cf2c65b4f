from .functions import (
    DivisorInput, Deadline, ILCData, Poly, SpencerSpec, InconclusiveError,
    as_divisor, log_derivations, saito_basis, classify, rees_kernel,
    theta_generators, theta_in_rees_kernel, bfunction_via_theta, lct_threshold,
    b_twist, twist, load_ilc, validate_ilc, structure_functions, check_integrability,
    build_spencer, graded_koszul_check, specialize_and_check,
    format_poly, homology_records, to_frame)

import math
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union


@dataclass(frozen=True)
class AnalysisOptions:
    """
    Keyword defaults shared by the facade and the command line.

    Parameters:
    attempts (int): Random combinations tried by the Saito basis search.
    seed (int): Seed of the Saito basis search.
    degree_cap (int): Total degree cap of Weyl Groebner runs.
    max_variables (int): Largest n accepted by the b-function computation.
    weight_bound (int): Spencer weight bound W.
    order_bound (int): Spencer total-order bound N.
    x_degree_bound (int): Spencer x-degree bound M (filtration mode).
    weights (tuple): Weight override for graded truncations.
    deadline_seconds (float): Time budget for the whole analysis; None for no limit.
    backend (str): 'polars' or 'pandas' for tables.
    """
    attempts: int = 200
    seed: int = 0
    degree_cap: int = 12
    max_variables: int = 3
    weight_bound: int = 6
    order_bound: int = 3
    x_degree_bound: int = 2
    weights: Optional[Tuple[int, ...]] = None
    deadline_seconds: Optional[float] = None
    backend: str = "polars"

    def __post_init__(self):
        for name in ("attempts", "degree_cap", "max_variables", "weight_bound", "order_bound"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1.")
        if self.x_degree_bound < 0:
            raise ValueError("x_degree_bound must be non-negative.")
        if self.backend not in ("polars", "pandas"):
            raise ValueError("backend must be 'polars' or 'pandas'.")
        if self.deadline_seconds is not None and self.deadline_seconds <= 0:
            raise ValueError("deadline_seconds must be positive.")
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))


class LogDiv:
    """
    Chainable analysis of one divisor.

    Every analysis step stores its result and returns the instance, so runs read
    as ``LogDiv("x*y").saito_basis().classify().bfunction().to_report()``.
    Steps that need a Saito basis compute it on first use.
    """

    def __init__(self, divisor: Union[str, Poly, DivisorInput], variables: Optional[Sequence[str]] = None,
                 options: Optional[AnalysisOptions] = None):
        if not isinstance(divisor, (str, DivisorInput)) and not hasattr(divisor, "ring"):
            raise TypeError("Input must be an expression string, a polynomial or a DivisorInput.")
        self._divisor = as_divisor(divisor, variables)
        self._options = options or AnalysisOptions()
        self._deadline = Deadline(self._options.deadline_seconds) if self._options.deadline_seconds else None
        self._derivations = None
        self._basis = None
        self._bfunction = None
        self._ilc = None
        self._twist = 0
        self._line_bundle = True
        self._complex = None
        self._results: Dict[str, object] = {}

    @property
    def divisor(self) -> DivisorInput:
        return self._divisor

    @property
    def options(self) -> AnalysisOptions:
        return self._options

    @property
    def basis(self):
        return self._basis

    def log_derivations(self):
        """
        Computes generators of the logarithmic derivations.

        This is a chainable method.
        """
        self._derivations = log_derivations(self._divisor, self._deadline)
        self._results["log_derivations"] = [der.to_dict() for der in self._derivations]
        return self

    def saito_basis(self):
        """
        Searches for a Saito basis among the logarithmic derivations.

        Raises:
            InconclusiveError: If the divisor is not recognized as free.

        This is a chainable method.
        """
        if self._derivations is None:
            self.log_derivations()
        self._basis = saito_basis(self._divisor, self._derivations,
                                  attempts=self._options.attempts, seed=self._options.seed)
        if self._basis is None:
            raise InconclusiveError(f"{self._divisor} was not recognized as free.")
        self._results["saito_basis"] = self._basis.to_dict()
        return self

    def _require_basis(self):
        if self._basis is None:
            self.saito_basis()
        return self._basis

    def classify(self):
        """
        Runs every divisor test and stores the flags with their provenance.

        Raises:
            InconclusiveError: If no Saito basis is found. The partial
            classification is stored before raising.

        This is a chainable method.
        """
        report = classify(self._divisor, attempts=self._options.attempts, seed=self._options.seed,
                          deadline=self._deadline)
        self._results["classification"] = report.to_dict()
        if report.basis is None:
            raise InconclusiveError(f"{self._divisor} was not recognized as free.")
        if self._basis is None:
            self._basis = report.basis
        return self

    def rees_kernel(self):
        """Computes the kernel of the Rees map. This is a chainable method."""
        kernel = rees_kernel(self._divisor, self._deadline)
        self._results["rees_kernel"] = [format_poly(g) for g in kernel]
        return self

    def theta(self):
        """Computes the symbols of Theta_{f,s} and checks them against the Rees kernel. This is a chainable method."""
        basis = self._require_basis()
        self._results["theta"] = {
            "symbols": [format_poly(g) for g in theta_generators(self._divisor, basis)],
            "in_rees_kernel": theta_in_rees_kernel(self._divisor, basis),
        }
        return self

    def bfunction(self):
        """
        Computes a multiple of the Bernstein-Sato polynomial with an operator certificate.

        This is a chainable method.
        """
        basis = self._require_basis()
        self._bfunction = bfunction_via_theta(self._divisor, basis, degree_cap=self._options.degree_cap,
                                              max_variables=self._options.max_variables, deadline=self._deadline)
        self._results["bfunction"] = self._bfunction.to_dict(self._divisor.variables)
        return self

    def connection(self, m: int = 0, data: Optional[Union[str, Mapping[str, object]]] = None):
        """
        Sets the coefficient connection: O(mD), or a JSON connection twisted by m.

        Args:
            m (int): Twist by the divisor.
            data (str | dict): Optional connection in the {rank, matrices} format.

        This is a chainable method.
        """
        basis = self._require_basis()
        if data is None:
            e = ILCData.line_bundle(basis, m)
        else:
            draft = load_ilc(data, basis)
            integrable = check_integrability(draft, structure_functions(basis))
            self._results["integrable"] = integrable
            if not integrable:
                raise ValueError("Connection matrices do not satisfy the integrability equation.")
            e = twist(validate_ilc(draft), m)
        self._ilc = e
        self._twist = m
        self._line_bundle = data is None
        self._results["connection"] = {"twist": m, **e.to_dict()}
        return self

    def _threshold(self):
        if self._bfunction is None:
            self.bfunction()
        if not self._line_bundle:
            return None
        return lct_threshold(b_twist(self._bfunction, self._twist))

    def spencer(self, pair: str = "theta", mode: Optional[str] = None, allow_evidence: bool = False):
        """
        Builds the truncated Spencer complex and its homology table.

        This is a chainable method.
        """
        basis = self._require_basis()
        o = self._options
        spec = SpencerSpec(basis, self._ilc, pair, mode, o.weight_bound, o.order_bound, o.x_degree_bound, o.weights)
        self._complex = build_spencer(spec, self._deadline)
        records = homology_records(self._complex, allow_evidence=allow_evidence, deadline=self._deadline)
        self._results["spencer"] = {
            "pair": spec.pair,
            "mode": spec.mode,
            "weights": list(spec.weights) if spec.weights else None,
            "bounds": {"W": o.weight_bound, "N": o.order_bound, "M": o.x_degree_bound},
            "graded_koszul": graded_koszul_check(spec, self._deadline),
            "exact": all(r["homology"] == 0 for r in records),
            "label": self._complex.label,
            "homology": records,
        }
        return self

    def specialize(self, ks: Optional[Sequence[int]] = None):
        """
        Compares specialized kernels at s = -k; defaults to k0, k0 + 1, k0 + 2.

        This is a chainable method.
        """
        if self._complex is None:
            self.spencer()
        threshold = self._threshold()
        if ks is None:
            start = 0 if threshold is None or threshold == -math.inf else int(threshold)
            ks = range(max(start, 0), max(start, 0) + 3)
        reports = [specialize_and_check(self._complex, k, threshold, self._deadline) for k in ks]
        self._results["specialization"] = [report.to_dict() for report in reports]
        return self

    def summary(self, backend: Optional[str] = None):
        """One-row DataFrame of the headline results."""
        row = {"divisor": format_poly(self._divisor.f)}
        c = self._results.get("classification")
        if c:
            for key in ("free", "koszul_free", "linear_jacobian_type", "theta_koszul_pair"):
                row[key] = c[key]
        b = self._results.get("bfunction")
        if b:
            row["bfunction"] = b["polynomial"]
            row["threshold"] = b["threshold"]
        sp = self._results.get("spencer")
        if sp:
            row["spencer_exact"] = sp["exact"]
        return to_frame([row], backend or self._options.backend)

    def to_report(self) -> Dict[str, object]:
        """
        Returns the collected results.

        Returns:
            dict: Divisor echo plus one entry per step that was run.
        """
        return {"divisor": format_poly(self._divisor.f), "variables": list(self._divisor.variables),
                **self._results}
