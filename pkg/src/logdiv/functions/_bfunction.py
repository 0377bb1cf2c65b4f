import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from sympy.polys.rings import PolyRing

from ._errors import Deadline, InconclusiveError
from ._fs_module import FsElement, act_on_fs, fs_ring
from ._log_derivations import S_VARIABLE, DivisorInput, SaitoBasis
from ._polynomials import MonomialOrder, Poly, format_poly, polynomial_ring, rational, variable_names
from ._rees_kernel import is_linear_jacobian_type
from ._weyl_algebra import WeylOp, derivation_operator
from ._weyl_groebner import weyl_groebner_transcript, weyl_variable_names

logger = logging.getLogger(__name__)

ORDER_ONE_DIAGNOSTIC = "order-one generation of ann(f^-1) consistent"


def s_ring() -> PolyRing:
    return polynomial_ring([S_VARIABLE])


@dataclass(frozen=True)
class BFunction:
    """
    Monic polynomial in s with its rational roots.

    ``exact`` is True when the polynomial is known to be the Bernstein-Sato
    polynomial itself and False when it is only known to be a multiple of it.
    """
    polynomial: Poly
    exact: bool = False
    certificate: Optional[WeylOp] = field(default=None, compare=False, repr=False)
    diagnostics: Tuple[str, ...] = ()

    def __post_init__(self):
        if variable_names(self.polynomial.ring) != (S_VARIABLE,):
            object.__setattr__(self, "polynomial", self.polynomial.set_ring(s_ring()))
        if not self.polynomial:
            raise ValueError("A b-function is a nonzero polynomial.")
        if self.polynomial.LC != 1:
            raise ValueError("A b-function must be monic.")

    @classmethod
    def from_roots(cls, roots: List[Tuple[Fraction, int]], exact: bool = False) -> "BFunction":
        R = s_ring()
        s = R.gens[0]
        p = R.one
        for root, multiplicity in roots:
            p *= (s - R.domain.convert(root.numerator) / root.denominator) ** multiplicity
        return cls(p, exact)

    @property
    def kind(self) -> str:
        return "exact" if self.exact else "multiple"

    @property
    def degree(self) -> int:
        return self.polynomial.degree()

    @property
    def roots(self) -> List[Tuple[Fraction, int]]:
        """Rational roots with multiplicities, ascending."""
        _, factors = self.polynomial.factor_list()
        out: Dict[Fraction, int] = {}
        for factor, multiplicity in factors:
            if factor.degree() != 1:
                continue
            coeffs = dict(factor.terms())
            c1 = rational(coeffs.get((1,), 0))
            c0 = rational(coeffs.get((0,), 0))
            root = -c0 / c1
            out[root] = out.get(root, 0) + multiplicity
        return sorted(out.items())

    @property
    def irrational_degree(self) -> int:
        """Degree of the part without rational roots."""
        return self.degree - sum(m for _, m in self.roots)

    @property
    def integer_roots(self) -> List[int]:
        return [int(r) for r, _ in self.roots if r.denominator == 1]

    def shifted(self, k: int) -> "BFunction":
        """b(s - k) with the same exactness."""
        R = s_ring()
        s = R.gens[0]
        return BFunction(self.polynomial.compose(s, s - k), self.exact)

    def to_dict(self, variables=None) -> Dict[str, object]:
        out = {
            "polynomial": format_poly(self.polynomial),
            "roots": [{"root": str(r), "multiplicity": m} for r, m in self.roots],
            "integer_roots": self.integer_roots,
            "kind": self.kind,
            "threshold": _threshold_json(lct_threshold(self)),
            "diagnostics": list(self.diagnostics),
        }
        if self.certificate is not None and variables is not None:
            out["certificate"] = self.certificate.format(variables)
        return out


def _threshold_json(k0: Union[int, float]):
    return None if k0 == -math.inf else k0


def theta_operators(d: DivisorInput, basis: SaitoBasis) -> List[WeylOp]:
    """The operators zeta_i = delta_i - alpha_i * s of D_n[s]."""
    n = d.n
    out = []
    for row in basis.rows:
        delta = derivation_operator(row.a, d.variables)
        out.append(delta - WeylOp.from_poly(row.alpha, d.variables) * WeylOp.s(n))
    return out


def verify_functional_equation(f: Poly, b: Union[BFunction, Poly], p: WeylOp) -> bool:
    """True iff p(f^(s+1)) = b(s) f^s exactly."""
    polynomial = b.polynomial if isinstance(b, BFunction) else b
    R = fs_ring(variable_names(f.ring))
    lhs = act_on_fs(p, FsElement.power(f, 1), f)
    rhs = FsElement(polynomial.set_ring(R), 0)
    return lhs == rhs


def bfunction_via_theta(d: DivisorInput, basis: SaitoBasis, degree_cap: int = 12, max_variables: int = 3,
                        exact: Optional[bool] = None, deadline: Optional[Deadline] = None) -> BFunction:
    """
    Monic generator of Q[s] intersected with the left ideal D[s](f, zeta_1, ..., zeta_n).

    The left Groebner basis run eliminates (x, d) ahead of s and records the cofactor
    of f, which is the operator P(s) with b(s) f^s = P(s) f^(s+1). The certificate is
    checked with ``verify_functional_equation`` before returning.

    Parameters:
    d (DivisorInput): The divisor.
    basis (SaitoBasis): A Saito basis of the divisor.
    degree_cap (int): Total degree cap of the Groebner run.
    max_variables (int): Largest number of variables accepted.
    exact (bool): Whether the result is the Bernstein-Sato polynomial itself. Defaults
        to the linear jacobian type test.
    deadline (Deadline): Optional cancellation token.

    Returns:
    BFunction: A multiple of b_f(s), equal to it when ``exact``.

    Raises:
    InconclusiveError: If the degree cap is reached or no polynomial in s is found.
    """
    n = d.n
    if n > max_variables:
        raise ValueError(f"bfunction_via_theta is limited to {max_variables} variables (got {n}).")
    if degree_cap < 1:
        raise ValueError("degree_cap must be positive.")
    names = weyl_variable_names(d.variables)
    key = MonomialOrder.block(names[:2 * n], (S_VARIABLE,)).to_sympy(names)
    gens = [WeylOp.from_poly(d.f, d.variables)] + theta_operators(d, basis)
    G, cofactors = weyl_groebner_transcript(gens, key, n, track=(0,), degree_cap=degree_cap, deadline=deadline)
    found = [(g, c) for g, c in zip(G, cofactors) if all(not any(m[:2 * n]) for m in g.monoms())]
    if not found:
        raise InconclusiveError(f"No polynomial in s found in the left ideal of {d}.")
    g, (certificate,) = found[0]
    R = s_ring()
    polynomial = R.from_dict({(m[2 * n],): c for m, c in g.items()})
    if not verify_functional_equation(d.f, polynomial, certificate):
        raise RuntimeError(f"Functional equation certificate failed for {d}.")
    if exact is None:
        exact = is_linear_jacobian_type(d, basis, deadline)
    b = BFunction(polynomial, exact, certificate)
    if exact and b.integer_roots and min(b.integer_roots) == -1:
        b = BFunction(polynomial, exact, certificate, (ORDER_ONE_DIAGNOSTIC,))
    logger.debug("bfunction_via_theta(%s) = %s (%s)", d, format_poly(polynomial), b.kind)
    return b


def lct_threshold(b: BFunction) -> Union[int, float]:
    """
    -(smallest integer root of b), or -inf when b has no integer root <= -1.

    -inf means every k >= 0 is above the threshold.
    """
    if not b.polynomial:
        raise ValueError("lct_threshold needs a nonzero polynomial.")
    negative = [r for r in b.integer_roots if r <= -1]
    if not negative:
        return -math.inf
    return -min(negative)
