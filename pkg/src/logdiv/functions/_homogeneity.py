import logging
from typing import Optional, Sequence, Tuple

from sympy import Matrix, Rational, symbols
from sympy.solvers.simplex import InfeasibleLPError, UnboundedLPError, lpmax

from ._groebner import buchberger, normal_form
from ._log_derivations import DivisorInput
from ._polynomials import IdealBasis, MonomialOrder, Poly, primitive_integer_vector

logger = logging.getLogger(__name__)


def is_euler_homogeneous(d: DivisorInput) -> bool:
    """True iff f lies in the ideal generated by its partial derivatives."""
    partials = [p for p in d.partials() if p]
    if not partials:
        return False
    gb = buchberger(IdealBasis.of(partials, MonomialOrder.grevlex()))
    return not normal_form(d.f, gb)


def weighted_degree(p: Poly, weights: Sequence[int]) -> Optional[int]:
    """Common weighted degree of the terms of p, or None if p is not weighted homogeneous."""
    degrees = {sum(w * e for w, e in zip(weights, m)) for m in p.monoms()}
    return degrees.pop() if len(degrees) == 1 else None


def is_quasi_homogeneous(d: DivisorInput) -> Optional[Tuple[int, ...]]:
    """
    Search for strictly positive weights making f weighted homogeneous.

    Only the given coordinates are tested. All-ones weights are preferred;
    otherwise the weight space {w : w.(a - a_0) = 0 for every exponent a of f}
    is computed exactly and a strictly positive point is found with a rational
    linear program maximizing the smallest weight.

    Returns:
    tuple or None: Coprime positive integer weights, or None.
    """
    n = d.n
    ones = tuple([1] * n)
    if weighted_degree(d.f, ones) is not None:
        return ones
    monoms = d.f.monoms()
    base = monoms[0]
    rows = [[a - b for a, b in zip(m, base)] for m in monoms[1:]]
    space = Matrix(rows).nullspace()
    if not space:
        return None
    if len(space) == 1:
        v = list(space[0])
        if all(c > 0 for c in v) or all(c < 0 for c in v):
            return tuple(abs(c) for c in primitive_integer_vector([Rational(c) for c in v]))
        return None
    coefficients = symbols(f"c0:{len(space)}")
    t = symbols("t")
    w = [sum(c * vec[i] for c, vec in zip(coefficients, space)) for i in range(n)]
    constraints = [w_i >= t for w_i in w] + [sum(w) <= 1, sum(w) >= 1]
    try:
        best, solution = lpmax(t, constraints)
    except (InfeasibleLPError, UnboundedLPError):
        logger.debug("is_quasi_homogeneous(%s): weight program has no optimum", d)
        return None
    if best <= 0:
        return None
    values = [Rational(w_i.subs(solution)) for w_i in w]
    weights = tuple(primitive_integer_vector(values))
    if weighted_degree(d.f, weights) is None:
        return None
    return weights
