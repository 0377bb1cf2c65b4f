import logging
from typing import List, Optional

from sympy.polys.rings import PolyRing

from ._errors import Deadline
from ._groebner import buchberger, elimination_ideal, ideal_equal, normal_form
from ._log_derivations import (REES_VARIABLE, S_VARIABLE, DivisorInput, SaitoBasis, symbol_name)
from ._polynomials import IdealBasis, MonomialOrder, Poly, polynomial_ring

logger = logging.getLogger(__name__)


def symbol_ring(d: DivisorInput) -> PolyRing:
    """Ring Q[x, s, xi] of total-order symbols."""
    return polynomial_ring(list(d.variables) + [S_VARIABLE] + [symbol_name(v) for v in d.variables])


def theta_generators(d: DivisorInput, basis: SaitoBasis) -> List[Poly]:
    """
    Total-order symbols of the operators delta_i - alpha_i * s.

    Returns sum_j a_ij * xi_j - alpha_i * s for every row of the basis, in Q[x, s, xi].
    """
    R = symbol_ring(d)
    n = d.n
    s = R.gens[n]
    xi = R.gens[n + 1:]
    out = []
    for row in basis.rows:
        g = -row.alpha.set_ring(R) * s
        for a_j, xi_j in zip(row.a, xi):
            g += a_j.set_ring(R) * xi_j
        out.append(g)
    return out


def rees_kernel(d: DivisorInput, deadline: Optional[Deadline] = None) -> List[Poly]:
    """
    Generators of the kernel of s -> f*t, xi_j -> (df/dx_j)*t.

    Computed by eliminating t from (s - f*t, xi_1 - f_1*t, ..., xi_n - f_n*t).
    The output lives in Q[x, s, xi] and every generator is homogeneous in (s, xi).
    """
    names = list(d.variables) + [REES_VARIABLE, S_VARIABLE] + [symbol_name(v) for v in d.variables]
    R = polynomial_ring(names)
    n = d.n
    t = R.gens[n]
    s = R.gens[n + 1]
    xi = R.gens[n + 2:]
    gens = [s - d.f.set_ring(R) * t]
    gens += [xi_j - p.set_ring(R) * t for xi_j, p in zip(xi, d.partials())]
    kernel = elimination_ideal(gens, [REES_VARIABLE], deadline=deadline)
    target = symbol_ring(d)
    logger.debug("rees_kernel(%s): %d generators", d, len(kernel))
    return [g.set_ring(target) for g in kernel]


def symbol_degree(p: Poly, n: int) -> Optional[int]:
    """Common degree of p in the (s, xi) variables, or None if p is not homogeneous in them."""
    degrees = {sum(m[n:]) for m in p.monoms()}
    return degrees.pop() if len(degrees) == 1 else None


def rees_evaluate(symbol: Poly, d: DivisorInput) -> Poly:
    """
    Apply s -> f, xi_j -> df/dx_j to an (s, xi)-homogeneous symbol.

    This is the coefficient of t^k in the image of the symbol in the Rees algebra.
    """
    R = d.ring
    n = d.n
    images = list(R.gens) + [d.f] + d.partials()
    total = R.zero
    for monom, coeff in symbol.terms():
        term = R.ground_new(coeff)
        for value, e in zip(images, monom):
            if e:
                term *= value ** e
        total += term
    return total


def is_linear_jacobian_type(d: DivisorInput, basis: SaitoBasis, deadline: Optional[Deadline] = None) -> bool:
    """True iff the Rees kernel is generated by the theta symbols (its degree one part)."""
    return ideal_equal(theta_generators(d, basis), rees_kernel(d, deadline), MonomialOrder.grevlex())


def theta_in_rees_kernel(d: DivisorInput, basis: SaitoBasis) -> bool:
    """Every theta symbol reduces to zero against the Rees kernel."""
    gb = buchberger(IdealBasis.of(rees_kernel(d), MonomialOrder.grevlex()))
    return all(not normal_form(g, gb) for g in theta_generators(d, basis))
