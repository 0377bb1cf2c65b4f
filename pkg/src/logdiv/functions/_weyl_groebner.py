import logging
from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from ._errors import Deadline, InconclusiveError, OrderError, check_deadline
from ._log_derivations import S_VARIABLE, derivative_name
from ._polynomials import Monomial, MonomialOrder
from ._weyl_algebra import WeylOp

logger = logging.getLogger(__name__)


def weyl_variable_names(variables: Sequence[str]) -> List[str]:
    """Names of the 2n + 1 exponent positions of a Weyl monomial: x, then d_x, then s."""
    return list(variables) + [derivative_name(v) for v in variables] + [S_VARIABLE]


class _LeftReducer:
    """Leading terms and left reduction in D_n[s] for one monomial order."""

    def __init__(self, key, n: int):
        self.key = key
        self.n = n

    def leading(self, p: WeylOp) -> Tuple[Monomial, object]:
        monom = max(p.monoms(), key=self.key)
        return monom, p.coeff(monom)

    def shift(self, monom: Monomial) -> WeylOp:
        n = self.n
        return WeylOp.monomial(monom[:n], monom[n:2 * n], monom[2 * n])

    def reduce(self, p: WeylOp, G: List[WeylOp], leads: List[Monomial],
               cofactors: Optional[List[Tuple[WeylOp, ...]]] = None,
               start: Optional[Tuple[WeylOp, ...]] = None):
        """
        Full left reduction of p by G.

        Returns the remainder and, when ``cofactors`` is given, the tracked vector
        start - sum q_k * cofactors[k] that expresses the remainder.
        """
        n = self.n
        remainder = WeylOp.zero(n)
        tracked = start
        while p:
            monom, coeff = self.leading(p)
            for k, (g, lead) in enumerate(zip(G, leads)):
                if all(m >= l for m, l in zip(monom, lead)):
                    quotient = self.shift(tuple(m - l for m, l in zip(monom, lead))) * (coeff / g.coeff(lead))
                    p = p - quotient * g
                    if cofactors is not None:
                        tracked = tuple(t - quotient * c for t, c in zip(tracked, cofactors[k]))
                    break
            else:
                term = WeylOp({monom: coeff}, n)
                remainder = remainder + term
                p = p - term
        return remainder, tracked


def weyl_groebner_transcript(gens: Sequence[WeylOp], order_key, n: int,
                             track: Sequence[int] = (), degree_cap: Optional[int] = None,
                             deadline: Optional[Deadline] = None):
    """
    Reduced left Groebner basis with optional cofactor tracking.

    Parameters:
    gens (list): Generators of the left ideal.
    order_key (callable): Sympy order key on flat Weyl exponent tuples; must be global.
    n (int): Number of x variables.
    track (list): Indices of generators whose cofactors are recorded.
    degree_cap (int): Largest total degree allowed for new basis elements.
    deadline (Deadline): Optional cancellation token.

    Returns:
    (list, list): Basis elements and, per element, the tuple of cofactors of the
    tracked generators (empty tuples when nothing is tracked).
    """
    zero_monom = (0,) * (2 * n + 1)
    one = order_key(zero_monom)
    for i in range(2 * n + 1):
        unit = tuple(1 if j == i else 0 for j in range(2 * n + 1))
        if not order_key(unit) > one:
            raise OrderError("Weyl Groebner bases need a global monomial order.")
    reducer = _LeftReducer(order_key, n)
    width = len(track)

    G: List[WeylOp] = []
    leads: List[Monomial] = []
    cof: List[Tuple[WeylOp, ...]] = []

    def add(p: WeylOp, vector: Tuple[WeylOp, ...]):
        lead, lc = reducer.leading(p)
        inv = QQ.one / lc
        G.append(p * inv)
        leads.append(lead)
        cof.append(tuple(c * inv for c in vector))

    for index, g in enumerate(gens):
        if not g:
            continue
        vector = tuple(WeylOp.one(n) if t == index else WeylOp.zero(n) for t in track)
        add(g, vector)
    pairs = [(i, j) for j in range(len(G)) for i in range(j)]
    steps = 0
    while pairs:
        check_deadline(deadline)
        pairs.sort(key=lambda p: (order_key(tuple(max(a, b) for a, b in zip(leads[p[0]], leads[p[1]]))), p))
        i, j = pairs.pop(0)
        lcm = tuple(max(a, b) for a, b in zip(leads[i], leads[j]))
        m_i = reducer.shift(tuple(l - a for l, a in zip(lcm, leads[i])))
        m_j = reducer.shift(tuple(l - a for l, a in zip(lcm, leads[j])))
        spair = m_i * G[i] - m_j * G[j]
        start = tuple(m_i * a - m_j * b for a, b in zip(cof[i], cof[j])) if width else ()
        r, vector = reducer.reduce(spair, G, leads, cof if width else None, start)
        steps += 1
        if r:
            if degree_cap is not None and r.total_degree() > degree_cap:
                raise InconclusiveError(f"Weyl Groebner basis exceeded the degree cap {degree_cap}.")
            add(r, vector if width else ())
            pairs.extend((k, len(G) - 1) for k in range(len(G) - 1))
    logger.debug("weyl_groebner: %d pairs reduced, %d elements before interreduction", steps, len(G))

    # minimalize
    keep = []
    for k in sorted(range(len(G)), key=lambda k: order_key(leads[k])):
        if all(not all(a >= b for a, b in zip(leads[k], leads[m])) for m in keep):
            keep.append(k)
    G = [G[k] for k in keep]
    leads = [leads[k] for k in keep]
    cof = [cof[k] for k in keep]
    # interreduce
    reduced, reduced_cof = [], []
    for k in range(len(G)):
        others = G[:k] + G[k + 1:]
        other_leads = leads[:k] + leads[k + 1:]
        other_cof = cof[:k] + cof[k + 1:]
        lead, lc = reducer.leading(G[k])
        head = WeylOp({lead: lc}, n)
        tail, vector = reducer.reduce(G[k] - head, others, other_leads,
                                      other_cof if width else None, cof[k] if width else None)
        reduced.append(head + tail)
        reduced_cof.append(vector if width else ())
    return reduced, reduced_cof


def _order_key(order, variables: Sequence[str]):
    if isinstance(order, MonomialOrder):
        return order.to_sympy(weyl_variable_names(variables))
    if callable(order):
        return order
    raise OrderError("Expected a MonomialOrder or a monomial key function.")


def weyl_groebner(gens: Sequence[WeylOp], order: MonomialOrder, variables: Optional[Sequence[str]] = None,
                  degree_cap: Optional[int] = None, deadline: Optional[Deadline] = None) -> List[WeylOp]:
    """
    Reduced left Groebner basis of a left ideal of D_n[s].

    Parameters:
    gens (list): Generators, all with the same n.
    order (MonomialOrder): A global order on (x, d_x, s) monomials, or a sympy-style
        key function on flat exponent tuples. Block orders name positions with the
        names of ``weyl_variable_names(variables)``.
    variables (list): Names of the x variables (default x0, x1, ...).
    degree_cap (int): Optional total degree cap; exceeding it raises InconclusiveError.
    deadline (Deadline): Optional cancellation token.

    Returns:
    list: Monic basis elements sorted by leading monomial.

    Raises:
    OrderError: If the order is not global.
    """
    gens = [g for g in gens if g]
    if not gens:
        return []
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise ValueError("Generators live in different Weyl algebras.")
    variables = list(variables) if variables is not None else [f"x{i}" for i in range(n)]
    key = _order_key(order, variables)
    basis, _ = weyl_groebner_transcript(gens, key, n, degree_cap=degree_cap, deadline=deadline)
    reducer = _LeftReducer(key, n)
    return sorted(basis, key=lambda g: key(reducer.leading(g)[0]))


def weyl_reduce(p: WeylOp, basis: Sequence[WeylOp], order: MonomialOrder,
                variables: Optional[Sequence[str]] = None) -> WeylOp:
    """Remainder of p under left reduction by a left Groebner basis."""
    n = p.n
    variables = list(variables) if variables is not None else [f"x{i}" for i in range(n)]
    key = _order_key(order, variables)
    reducer = _LeftReducer(key, n)
    basis = list(basis)
    remainder, _ = reducer.reduce(p, basis, [reducer.leading(g)[0] for g in basis])
    return remainder
