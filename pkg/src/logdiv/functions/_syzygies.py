import logging
from typing import List, Optional, Sequence, Tuple

from ._errors import Deadline, check_deadline
from ._polynomials import MonomialOrder, Poly, common_ring, polynomial_ring, variable_names

logger = logging.getLogger(__name__)

Vector = Tuple[Poly, ...]


def _combine(vectors: Sequence[Vector], coeffs: Sequence[Poly], zero: Poly) -> Vector:
    width = len(vectors[0])
    out = [zero] * width
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        out = [o + c * e for o, e in zip(out, v)]
    return tuple(out)


def _divide(p: Poly, G: Sequence[Poly]) -> Tuple[List[Poly], Poly]:
    """Division of p by G with exactly one quotient per element of G, including p = 0."""
    R = p.ring
    if not p:
        return [R.zero] * len(G), R.zero
    quotients, r = p.div(list(G))
    return list(quotients) + [R.zero] * (len(G) - len(quotients)), r


def extended_groebner(F: Sequence[Poly], deadline: Optional[Deadline] = None) -> Tuple[List[Poly], List[Vector]]:
    """
    Buchberger run that records how each basis element is built from F.

    Returns (G, A) with G[k] = sum_m A[k][m] * F[m]. G is a Groebner basis
    (not reduced) in the ring of F.
    """
    R = F[0].ring
    s = len(F)
    unit = [tuple(R.one if m == k else R.zero for m in range(s)) for k in range(s)]
    G: List[Poly] = []
    A: List[Vector] = []
    for k, f in enumerate(F):
        lc = f.LC
        G.append(f.quo_ground(lc))
        A.append(tuple(c.quo_ground(lc) for c in unit[k]))
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    while pairs:
        check_deadline(deadline)
        i, j = min(pairs, key=lambda p: (R.order(R.monomial_lcm(G[p[0]].LM, G[p[1]].LM)), p))
        pairs.remove((i, j))
        lm_i, lm_j = G[i].LM, G[j].LM
        lcm = R.monomial_lcm(lm_i, lm_j)
        if R.monomial_mul(lm_i, lm_j) == lcm:
            continue
        m_i = R({R.monomial_div(lcm, lm_i): R.domain.one})
        m_j = R({R.monomial_div(lcm, lm_j): R.domain.one})
        spol = m_i * G[i] - m_j * G[j]
        quotients, r = _divide(spol, G)
        if not r:
            continue
        coeffs = [m_i if k == i else R.zero for k in range(len(G))]
        coeffs[j] = coeffs[j] - m_j
        coeffs = [c - q for c, q in zip(coeffs, quotients)]
        vector = _combine(A, coeffs, R.zero)
        lc = r.LC
        G.append(r.quo_ground(lc))
        A.append(tuple(c.quo_ground(lc) for c in vector))
        pairs |= {(k, len(G) - 1) for k in range(len(G) - 1)}
    return G, A


def _normalized(vector: Vector) -> Vector:
    """Scale a syzygy so its first nonzero entry is monic."""
    for entry in vector:
        if entry:
            lc = entry.LC
            return tuple(e.quo_ground(lc) for e in vector)
    return vector


def syzygies(gens: Sequence[Poly], deadline: Optional[Deadline] = None) -> List[Vector]:
    """
    Generators of the module of relations sum c_i * gens_i = 0.

    Parameters:
    gens (list): Nonzero polynomials sharing one ring.
    deadline (Deadline): Optional cancellation token.

    Returns:
    list: Tuples (c_0, ..., c_m) in the ring of ``gens``; each contracts to zero exactly.
    The tuples are the lifted S-pair relations of a tracked Groebner basis together with
    the relations expressing each input through that basis.
    """
    if not gens:
        return []
    if any(not g for g in gens):
        raise ValueError("Syzygies are computed for nonzero generators only.")
    source = common_ring(gens)
    R = polynomial_ring(variable_names(source), MonomialOrder.grevlex())
    F = [g.set_ring(R) for g in gens]
    G, A = extended_groebner(F, deadline)
    width = len(F)
    found: List[Vector] = []
    seen = set()

    def keep(vector: Vector):
        vector = _normalized(vector)
        if any(vector) and vector not in seen:
            seen.add(vector)
            found.append(vector)

    for j in range(len(G)):
        for i in range(j):
            check_deadline(deadline)
            lm_i, lm_j = G[i].LM, G[j].LM
            lcm = R.monomial_lcm(lm_i, lm_j)
            m_i = R({R.monomial_div(lcm, lm_i): R.domain.one})
            m_j = R({R.monomial_div(lcm, lm_j): R.domain.one})
            quotients, r = _divide(m_i * G[i] - m_j * G[j], G)
            assert not r, "tracked basis is not a Groebner basis"
            coeffs = [m_i if k == i else R.zero for k in range(len(G))]
            coeffs[j] = coeffs[j] - m_j
            coeffs = [c - q for c, q in zip(coeffs, quotients)]
            keep(_combine(A, coeffs, R.zero))
    for m, f in enumerate(F):
        quotients, r = _divide(f, G)
        assert not r, "input does not reduce to zero against its own basis"
        lifted = _combine(A, quotients, R.zero)
        keep(tuple((R.one if k == m else R.zero) - lifted[k] for k in range(width)))
    logger.debug("syzygies: %d basis elements, %d relations", len(G), len(found))
    return [tuple(c.set_ring(source) for c in v) for v in found]


def contract(vector: Sequence[Poly], gens: Sequence[Poly]) -> Poly:
    """Return sum vector_i * gens_i."""
    total = gens[0].ring.zero
    for c, g in zip(vector, gens):
        total += c.set_ring(g.ring) * g
    return total

