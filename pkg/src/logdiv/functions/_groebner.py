import logging
from functools import lru_cache
from typing import List, Optional, Sequence, Set, Tuple

from sympy.polys.rings import PolyRing

from ._errors import ContextMismatchError, Deadline, NotGroebnerError, check_deadline
from ._polynomials import (IdealBasis, MonomialOrder, Poly, common_ring, is_monomial_in,
                           polynomial_ring, variable_names)

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


def spoly(f: Poly, g: Poly) -> Poly:
    """Return the s-polynomial of monic polynomials f and g."""
    R = f.ring
    lcm = R.monomial_lcm(f.LM, g.LM)
    return f.mul_monom(R.monomial_div(lcm, f.LM)) - g.mul_monom(R.monomial_div(lcm, g.LM))


def _select(G: List[Poly], P: Set[Pair]) -> Pair:
    """Normal selection: the pair with the smallest lcm of leading monomials."""
    R = G[0].ring
    return min(P, key=lambda p: (R.order(R.monomial_lcm(G[p[0]].LM, G[p[1]].LM)), p))


def _update(G: List[Poly], P: Set[Pair], f: Poly) -> Tuple[List[Poly], Set[Pair]]:
    """Add f to G, pruning pairs with the Gebauer-Moeller criteria."""
    R = f.ring
    lcm, mul, div = R.monomial_lcm, R.monomial_mul, R.monomial_div
    lmf = f.LM
    lmG = [g.LM for g in G]

    P = {p for p in P if (not div(lcm(lmG[p[0]], lmG[p[1]]), lmf) or
                          lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[0]], lmf) or
                          lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[1]], lmf))}
    lcm_dict = {}
    for i in range(len(G)):
        lcm_dict.setdefault(lcm(lmG[i], lmf), []).append(i)
    minimalized = []
    for L in sorted(lcm_dict.keys(), key=R.order):
        if all(not div(L, L_) for L_ in minimalized):
            minimalized.append(L)
    P_new = set()
    for L in minimalized:
        # coprime leading monomials: the pair reduces to zero
        if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in lcm_dict[L]):
            P_new.add((min(lcm_dict[L]), len(G)))
    return G + [f], P | P_new


def minimalize(G: List[Poly]) -> List[Poly]:
    """Return a minimal Groebner basis from an arbitrary Groebner basis G."""
    if not G:
        return []
    R = G[0].ring
    Gmin = []
    for f in sorted(G, key=lambda h: R.order(h.LM)):
        if all(not R.monomial_div(f.LM, g.LM) for g in Gmin):
            Gmin.append(f)
    return Gmin


def interreduce(G: List[Poly]) -> List[Poly]:
    """Return the reduced Groebner basis from a minimal Groebner basis G."""
    return [G[i].rem(G[:i] + G[i + 1:]).monic() for i in range(len(G))]


def _buchberger(F: Tuple[Poly, ...], deadline: Optional[Deadline] = None) -> Tuple[Poly, ...]:
    G: List[Poly] = []
    P: Set[Pair] = set()
    for f in F:
        G, P = _update(G, P, f.monic())
    steps = 0
    while P:
        check_deadline(deadline)
        i, j = _select(G, P)
        P.remove((i, j))
        r = spoly(G[i], G[j]).rem(G)
        steps += 1
        if r:
            G, P = _update(G, P, r.monic())
    logger.debug("buchberger: %d pairs reduced, %d polynomials before interreduction", steps, len(G))
    R = F[0].ring
    return tuple(sorted(interreduce(minimalize(G)), key=lambda g: R.order(g.LM)))


@lru_cache(maxsize=512)
def _cached_buchberger(F: Tuple[Poly, ...]) -> Tuple[Poly, ...]:
    return _buchberger(F)


def buchberger(basis: IdealBasis, deadline: Optional[Deadline] = None) -> IdealBasis:
    """
    Compute the reduced Groebner basis of an ideal.

    Parameters:
    basis (IdealBasis): Generators and the monomial order to use.
    deadline (Deadline): Optional cancellation token, checked once per pair.

    Returns:
    IdealBasis: The unique reduced Groebner basis (monic, sorted by leading monomial)
    with is_groebner set. Polynomials live in the ring read in ``basis.order``.
    """
    gens = [g for g in basis.generators if g]
    if not gens:
        return IdealBasis((), basis.order, True)
    R = common_ring(gens)
    ordered = polynomial_ring(variable_names(R), basis.order)
    F = tuple(g.set_ring(ordered) for g in gens)
    if deadline is None:
        G = _cached_buchberger(F)
    else:
        G = _buchberger(F, deadline)
    return IdealBasis(G, basis.order, True)


def groebner_basis(gens: Sequence[Poly], order: Optional[MonomialOrder] = None,
                   deadline: Optional[Deadline] = None) -> List[Poly]:
    """Shorthand for ``buchberger(IdealBasis.of(gens, order)).generators`` as a list."""
    return list(buchberger(IdealBasis.of(gens, order), deadline).generators)


def normal_form(p: Poly, gb: IdealBasis) -> Poly:
    """
    Return the remainder of p modulo a Groebner basis.

    The remainder is zero exactly when p lies in the ideal. The result is
    returned in the ring of p.
    """
    if not gb.is_groebner:
        raise NotGroebnerError("normal_form needs a Groebner basis; call buchberger first.")
    if not gb.generators:
        return p
    R = gb.generators[0].ring
    if variable_names(R) != variable_names(p.ring):
        raise ContextMismatchError(
            f"Variable context mismatch: {variable_names(p.ring)} vs {variable_names(R)}")
    return p.set_ring(R).rem(list(gb.generators)).set_ring(p.ring)


def ideal_contains(gens: Sequence[Poly], p: Poly, order: Optional[MonomialOrder] = None) -> bool:
    gb = buchberger(IdealBasis.of(gens, order))
    return not normal_form(p, gb)


def elimination_ideal(gens: Sequence[Poly], drop: Sequence[str],
                      inner: str = "grevlex", deadline: Optional[Deadline] = None) -> List[Poly]:
    """
    Generators of the ideal intersected with the subring without ``drop``.

    Parameters:
    gens (list): Generators, all in one ring.
    drop (iterable of str): Variables to eliminate.
    inner (str): Order used inside each block ('grevlex' or 'lex').
    deadline (Deadline): Optional cancellation token.

    Returns:
    list: Polynomials in the ring on the remaining variables.
    """
    gens = [g for g in gens if g]
    if not gens:
        return []
    R = common_ring(gens)
    names = variable_names(R)
    requested = set(drop)
    drop = [v for v in names if v in requested]
    if not drop or requested - set(names):
        raise ValueError("Variables to eliminate must be a non-empty subset of the ring variables.")
    keep = [v for v in names if v not in drop]
    if not keep:
        raise ValueError("Cannot eliminate every variable of the ring.")
    order = MonomialOrder.block(drop, keep, inner=(inner, inner))
    gb = buchberger(IdealBasis.of(gens, order), deadline)
    positions = [names.index(v) for v in keep]
    target: PolyRing = polynomial_ring(keep, MonomialOrder(inner))
    kept = [g for g in gb.generators if all(is_monomial_in(m, positions) for m in g.monoms())]
    logger.debug("elimination of %s: %d of %d basis elements survive", drop, len(kept), len(gb))
    return [g.set_ring(target) for g in kept]


def ideal_equal(a: Sequence[Poly], b: Sequence[Poly], order: Optional[MonomialOrder] = None) -> bool:
    """True iff the two generating sets have the same reduced Groebner basis."""
    a = [g for g in a if g]
    b = [g for g in b if g]
    if not a or not b:
        return not a and not b
    Ra, Rb = common_ring(a), common_ring(b)
    if variable_names(Ra) != variable_names(Rb):
        raise ContextMismatchError(
            f"Variable context mismatch: {variable_names(Ra)} vs {variable_names(Rb)}")
    order = order or MonomialOrder.grevlex()
    return buchberger(IdealBasis.of(a, order)).generators == buchberger(IdealBasis.of(b, order)).generators
