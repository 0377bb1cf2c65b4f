from itertools import combinations
from typing import Optional, Sequence

from sympy.polys.rings import PolyRing

from ._errors import Deadline
from ._groebner import buchberger
from ._polynomials import IdealBasis, MonomialOrder, Poly, common_ring


def krull_dimension(gens: Sequence[Poly], ring: Optional[PolyRing] = None,
                    deadline: Optional[Deadline] = None) -> int:
    """
    Krull dimension of the quotient ring by the ideal generated by ``gens``.

    Parameters:
    gens (list): Generators; zero polynomials are ignored.
    ring (PolyRing): Ring to use when ``gens`` has no nonzero element.
    deadline (Deadline): Optional cancellation token.

    Returns:
    int: The size of a largest set of variables independent modulo the
    leading-term ideal; -1 for the unit ideal.
    """
    nonzero = [g for g in gens if g]
    if not nonzero:
        if ring is None:
            if not gens:
                raise ValueError("Pass ring= to compute the dimension of the zero ideal.")
            ring = gens[0].ring
        return ring.ngens
    R = common_ring(nonzero)
    gb = buchberger(IdealBasis.of(nonzero, MonomialOrder.grevlex()), deadline)
    if any(g.LM == R.zero_monom for g in gb.generators):
        return -1
    supports = [frozenset(i for i, e in enumerate(g.LM) if e) for g in gb.generators]
    n = R.ngens
    for size in range(n, -1, -1):
        for chosen in combinations(range(n), size):
            chosen = frozenset(chosen)
            if not any(support <= chosen for support in supports):
                return size
    return 0
