from typing import List, Optional

from ._dimension import krull_dimension
from ._errors import Deadline
from ._log_derivations import DivisorInput, SaitoBasis, symbol_name
from ._polynomials import Poly, polynomial_ring
from ._rees_kernel import symbol_ring, theta_generators


def order_symbols(d: DivisorInput, basis: SaitoBasis) -> List[Poly]:
    """Principal symbols sum_j a_ij * xi_j of the basis in Q[x, xi]."""
    R = polynomial_ring(list(d.variables) + [symbol_name(v) for v in d.variables])
    xi = R.gens[d.n:]
    out = []
    for row in basis.rows:
        g = R.zero
        for a_j, xi_j in zip(row.a, xi):
            g += a_j.set_ring(R) * xi_j
        out.append(g)
    return out


def is_koszul_free(d: DivisorInput, basis: SaitoBasis, deadline: Optional[Deadline] = None) -> bool:
    """
    True iff the principal symbols of the basis form a regular sequence.

    In the Cohen-Macaulay ring Q[x, xi] this is the dimension count
    dim Q[x, xi] / (sigma(delta_i)) = n.
    """
    return krull_dimension(order_symbols(d, basis), deadline=deadline) == d.n


def theta_koszul_check(d: DivisorInput, basis: SaitoBasis, deadline: Optional[Deadline] = None) -> bool:
    """True iff the theta symbols cut out a codimension-n subvariety of Q[x, s, xi]."""
    gens = theta_generators(d, basis)
    return krull_dimension(gens, ring=symbol_ring(d), deadline=deadline) == d.n + 1
