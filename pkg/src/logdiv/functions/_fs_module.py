from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from sympy.polys.rings import PolyRing

from ._log_derivations import S_VARIABLE
from ._polynomials import Poly, polynomial_ring, variable_names
from ._weyl_algebra import WeylOp

Matrix = Sequence[Sequence[Poly]]


def fs_ring(variables: Sequence[str]) -> PolyRing:
    """Ring Q[x, s] of numerators of elements of O[1/f, s] f^s."""
    return polynomial_ring(list(variables) + [S_VARIABLE])


@dataclass(frozen=True)
class FsElement:
    """(numerator / f^pole) * f^s with the numerator in Q[x, s]."""
    numerator: Poly
    pole: int = 0

    def __post_init__(self):
        if self.pole < 0:
            raise ValueError("Pole order must be non-negative.")

    @classmethod
    def power(cls, f: Poly, k: int = 0) -> "FsElement":
        """The element f^(s + k)."""
        R = fs_ring(variable_names(f.ring))
        if k >= 0:
            return cls(f.set_ring(R) ** k, 0)
        return cls(R.one, -k)

    def canonical(self, f: Poly) -> "FsElement":
        vector = FsVector((self.numerator,), self.pole).canonical(f)
        return FsElement(vector.numerators[0], vector.pole)

    def is_zero(self) -> bool:
        return not self.numerator


@dataclass(frozen=True)
class FsVector:
    """
    Element sum_a (numerators[a] / f^pole) e_a f^s of E[1/f, s] f^s.

    ``e_a`` is a basis of the rank-r module E; numerators live in Q[x, s].
    """
    numerators: Tuple[Poly, ...]
    pole: int = 0

    @classmethod
    def generator(cls, ring: PolyRing, rank: int, a: int) -> "FsVector":
        return cls(tuple(ring.one if b == a else ring.zero for b in range(rank)), 0)

    def canonical(self, f: Poly) -> "FsVector":
        """Divide out factors of f so that some numerator is not divisible by f."""
        R = self.numerators[0].ring
        f = f.set_ring(R)
        numerators = list(self.numerators)
        pole = self.pole
        if not any(numerators):
            return FsVector(tuple(numerators), 0)
        while pole > 0:
            quotients = []
            for g in numerators:
                q, r = g.div(f)
                if r:
                    break
                quotients.append(q)
            else:
                numerators = quotients
                pole -= 1
                continue
            break
        return FsVector(tuple(numerators), pole)

    def at_pole(self, pole: int, f: Poly) -> Tuple[Poly, ...]:
        """Numerators rewritten over f^pole (pole must not be smaller than self.pole)."""
        if pole < self.pole:
            raise ValueError("Cannot lower the pole order without dividing.")
        R = self.numerators[0].ring
        factor = f.set_ring(R) ** (pole - self.pole)
        return tuple(g * factor for g in self.numerators)

    def is_zero(self) -> bool:
        return not any(self.numerators)


class FsActor:
    """
    Action of D_n[s] on E[1/f, s] f^s.

    ``connection`` holds the matrices N_j of d_j acting on E as d_j + N_j / f
    (None for the trivial rank-one module).

    Parameters:
    f (Poly): Divisor equation in Q[x].
    connection (list): Optional list of n r-by-r matrices over Q[x].
    """

    def __init__(self, f: Poly, connection: Optional[Sequence[Matrix]] = None):
        self.variables = variable_names(f.ring)
        self.n = len(self.variables)
        self.ring = fs_ring(self.variables)
        self.f = f.set_ring(self.ring)
        self.partials = [self.f.diff(x) for x in self.ring.gens[:self.n]]
        self.s = self.ring.gens[self.n]
        if connection is None:
            self.rank = 1
            self.connection = None
        else:
            self.rank = len(connection[0])
            self.connection = [[[e.set_ring(self.ring) for e in row] for row in N] for N in connection]
        self._cache: Dict[Tuple[Tuple[int, ...], FsVector], FsVector] = {}

    def zero(self) -> FsVector:
        return FsVector(tuple(self.ring.zero for _ in range(self.rank)), 0)

    def generator(self, a: int = 0) -> FsVector:
        return FsVector.generator(self.ring, self.rank, a)

    def derivative(self, v: FsVector, j: int) -> FsVector:
        """d_j applied to v; the pole order goes up by one."""
        d = v.pole
        f, fj, s = self.f, self.partials[j], self.s
        x_j = self.ring.gens[j]
        out = []
        for g in v.numerators:
            out.append(g.diff(x_j) * f + (s - d) * g * fj)
        if self.connection is not None:
            N = self.connection[j]
            out = [out[a] + sum((N[a][b] * v.numerators[b] for b in range(self.rank)), self.ring.zero)
                   for a in range(self.rank)]
        return FsVector(tuple(out), d + 1)

    def _derivative_power(self, b: Tuple[int, ...], v: FsVector) -> FsVector:
        key = (b, v)
        if key in self._cache:
            return self._cache[key]
        if not any(b):
            result = v
        else:
            j = max(i for i, e in enumerate(b) if e)
            smaller = b[:j] + (b[j] - 1,) + b[j + 1:]
            result = self.derivative(self._derivative_power(smaller, v), j)
        self._cache[key] = result
        return result

    def apply(self, op: WeylOp, v: FsVector, canonical: bool = True) -> FsVector:
        """Apply a normally ordered operator: derivatives first, then x^a and s^c."""
        n = self.n
        if op.n != n:
            raise ValueError(f"Operator acts on {op.n} variables, module on {n}.")
        pieces = []
        for monom, coeff in op.items():
            a, b, c = monom[:n], monom[n:2 * n], monom[2 * n]
            base = self._derivative_power(tuple(b), v)
            mult = self.ring({tuple(a) + (c,): coeff})
            pieces.append(FsVector(tuple(g * mult for g in base.numerators), base.pole))
        if not pieces:
            return self.zero()
        pole = max(p.pole for p in pieces)
        total = [self.ring.zero] * self.rank
        for piece in pieces:
            for a, g in enumerate(piece.at_pole(pole, self.f)):
                total[a] += g
        result = FsVector(tuple(total), pole)
        return result.canonical(self.f) if canonical else result


def act_on_fs(p: WeylOp, e: FsElement, f: Poly) -> FsElement:
    """
    Apply an operator of D_n[s] to (numerator / f^pole) f^s.

    Uses d_j(g f^(s-d)) = (d_j(g) f + (s - d) g df/dx_j) f^(s-d-1). The result is canonical.
    """
    actor = FsActor(f)
    result = actor.apply(p, FsVector((e.numerator.set_ring(actor.ring),), e.pole))
    return FsElement(result.numerators[0], result.pole)


def leading_fs_coefficient(p: WeylOp, f: Poly) -> Poly:
    """
    Coefficient of s^d in the numerator of p(f^s) over f^d, d the total order of p.

    Returned as a polynomial in Q[x].
    """
    actor = FsActor(f)
    d = p.total_order()
    if d < 0:
        return f.ring.zero
    raw = actor.apply(p, actor.generator(), canonical=False)
    numerator = raw.at_pole(d, actor.f)[0]
    n = actor.n
    out = {m[:n]: c for m, c in numerator.terms() if m[n] == d}
    return f.ring.from_dict(out) if out else f.ring.zero


def fs_coordinates(v: FsVector, pole: int, f: Poly) -> Dict[Tuple[int, Tuple[int, ...]], object]:
    """Coordinates (basis index, monomial in x and s) of v written over f^pole."""
    out = {}
    for a, g in enumerate(v.at_pole(pole, f)):
        for monom, coeff in g.terms():
            out[(a, monom)] = coeff
    return out


def specialize_coordinates(v: FsVector, pole: int, f: Poly, k: int) -> Dict[Tuple[int, Tuple[int, ...]], object]:
    """Coordinates of v with s replaced by -k, written over f^pole."""
    out: Dict[Tuple[int, Tuple[int, ...]], object] = {}
    for a, g in enumerate(v.at_pole(pole, f)):
        n = g.ring.ngens - 1
        for monom, coeff in g.terms():
            key = (a, monom[:n])
            out[key] = out.get(key, 0) + coeff * (-k) ** monom[n]
    return {key: c for key, c in out.items() if c}

