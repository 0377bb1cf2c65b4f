from functools import lru_cache
from itertools import product
from math import comb, perm
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyRing

from ._polynomials import Monomial, Poly, rational_str, variable_names

# A monomial of D_n[s] is the flat exponent tuple (a_1..a_n, b_1..b_n, c)
# standing for x^a d^b s^c with every x to the left of every d.


class WeylOp:
    """
    Element of the Weyl algebra D_n[s] in normally ordered form.

    Values are immutable; arithmetic returns new operators.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object], n: int):
        self.n = n
        clean = {}
        for monom, coeff in terms.items():
            if len(monom) != 2 * n + 1:
                raise ValueError(f"Weyl monomials need {2 * n + 1} exponents, got {len(monom)}.")
            if any(e < 0 for e in monom):
                raise ValueError("Weyl exponents must be non-negative.")
            coeff = QQ.convert(coeff)
            if coeff:
                clean[tuple(monom)] = coeff
        self._terms: Dict[Monomial, object] = clean
        self._hash = None

    # construction

    @classmethod
    def zero(cls, n: int) -> "WeylOp":
        return cls({}, n)

    @classmethod
    def constant(cls, c, n: int) -> "WeylOp":
        return cls({(0,) * (2 * n + 1): c}, n)

    @classmethod
    def one(cls, n: int) -> "WeylOp":
        return cls.constant(1, n)

    @classmethod
    def monomial(cls, a: Sequence[int], b: Sequence[int], c: int = 0, coeff=1) -> "WeylOp":
        return cls({tuple(a) + tuple(b) + (c,): coeff}, len(a))

    @classmethod
    def x(cls, i: int, n: int) -> "WeylOp":
        return cls.monomial(_unit(i, n), (0,) * n)

    @classmethod
    def d(cls, i: int, n: int) -> "WeylOp":
        return cls.monomial((0,) * n, _unit(i, n))

    @classmethod
    def s(cls, n: int) -> "WeylOp":
        return cls.monomial((0,) * n, (0,) * n, 1)

    @classmethod
    def from_poly(cls, p: Poly, variables: Sequence[str]) -> "WeylOp":
        """Multiplication operator by a polynomial in the variables and, optionally, s."""
        n = len(variables)
        names = variable_names(p.ring)
        position = {name: i for i, name in enumerate(variables)}
        terms = {}
        for monom, coeff in p.terms():
            a = [0] * n
            c = 0
            for name, e in zip(names, monom):
                if not e:
                    continue
                if name == "s":
                    c = e
                elif name in position:
                    a[position[name]] = e
                else:
                    raise ValueError(f"Variable '{name}' is not a Weyl algebra variable.")
            key = tuple(a) + (0,) * n + (c,)
            terms[key] = terms.get(key, QQ.zero) + coeff
        return cls(terms, n)

    # access

    def terms(self) -> List[Tuple[Monomial, object]]:
        return sorted(self._terms.items(), reverse=True)

    def items(self) -> Iterator[Tuple[Monomial, object]]:
        return iter(self._terms.items())

    def monoms(self) -> List[Monomial]:
        return list(self._terms)

    def coeff(self, monom: Monomial):
        return self._terms.get(tuple(monom), QQ.zero)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, WeylOp):
            return self.n == other.n and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # arithmetic

    def _check(self, other: "WeylOp"):
        if other.n != self.n:
            raise ValueError(f"Weyl algebras differ: n = {self.n} vs n = {other.n}.")

    def __add__(self, other):
        if not isinstance(other, WeylOp):
            other = WeylOp.constant(other, self.n)
        self._check(other)
        terms = dict(self._terms)
        for monom, coeff in other._terms.items():
            terms[monom] = terms.get(monom, QQ.zero) + coeff
        return WeylOp(terms, self.n)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp({m: -c for m, c in self._terms.items()}, self.n)

    def __sub__(self, other):
        if not isinstance(other, WeylOp):
            other = WeylOp.constant(other, self.n)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, WeylOp):
            return weyl_mul(self, other)
        other = QQ.convert(other)
        return WeylOp({m: c * other for m, c in self._terms.items()}, self.n)

    def __rmul__(self, other):
        other = QQ.convert(other)
        return WeylOp({m: other * c for m, c in self._terms.items()}, self.n)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("Weyl operators have no negative powers.")
        result = WeylOp.one(self.n)
        for _ in range(k):
            result = result * self
        return result

    # filtrations and gradings

    def total_order(self) -> int:
        """Largest |b| + c over the terms (-1 for the zero operator)."""
        n = self.n
        return max((sum(m[n:]) for m in self._terms), default=-1)

    def order(self) -> int:
        """Largest derivative order |b| over the terms."""
        n = self.n
        return max((sum(m[n:2 * n]) for m in self._terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def x_degree(self) -> int:
        n = self.n
        return max((sum(m[:n]) for m in self._terms), default=-1)

    def weights(self, x_weights: Sequence[int]) -> set:
        """Set of weights of the terms, with x_j -> w_j, d_j -> -w_j and s -> 0."""
        n = self.n
        return {sum(w * (m[j] - m[n + j]) for j, w in enumerate(x_weights)) for m in self._terms}

    def is_homogeneous(self, x_weights: Sequence[int]) -> bool:
        return len(self.weights(x_weights)) <= 1

    def substitute_s(self, value) -> "WeylOp":
        """Specialize s to a rational value."""
        value = QQ.convert(value)
        terms = {}
        for monom, coeff in self._terms.items():
            key = monom[:-1] + (0,)
            terms[key] = terms.get(key, QQ.zero) + coeff * value ** monom[-1]
        return WeylOp(terms, self.n)

    def total_symbol(self, ring: PolyRing) -> Poly:
        """
        Total-order symbol in Q[x, s, xi] (ring variables in that order).

        Only terms with |b| + c equal to the total order contribute; d_j maps to xi_j.
        """
        n = self.n
        top = self.total_order()
        out = {}
        for monom, coeff in self._terms.items():
            if sum(monom[n:]) != top:
                continue
            key = monom[:n] + (monom[2 * n],) + monom[n:2 * n]
            out[key] = coeff
        return ring.from_dict(out) if out else ring.zero

    def format(self, variables: Sequence[str]) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for monom, coeff in self.terms():
            factors = []
            for name, e in zip(list(variables) + [f"d{v}" for v in variables] + ["s"], monom):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            text = rational_str(coeff)
            if body:
                text = body if text == "1" else ("-" + body if text == "-1" else f"{text}*{body}")
            pieces.append(text)
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self):
        return f"WeylOp({self.format([f'x{i + 1}' for i in range(self.n)])})"


def _unit(i: int, n: int) -> Tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(n))


@lru_cache(maxsize=65536)
def _monomial_product(left: Monomial, right: Monomial, n: int) -> Tuple[Tuple[Monomial, int], ...]:
    """
    Normally ordered product of two monomials.

    d^b x^a' = sum_k prod_i C(b_i, k_i) * a'_i! / (a'_i - k_i)! * x^(a' - k) d^(b - k).
    """
    a, b, c = left[:n], left[n:2 * n], left[2 * n]
    a2, b2, c2 = right[:n], right[n:2 * n], right[2 * n]
    ranges = [range(min(b[i], a2[i]) + 1) for i in range(n)]
    out = []
    for k in product(*ranges):
        coeff = 1
        for i in range(n):
            coeff *= comb(b[i], k[i]) * perm(a2[i], k[i])
        monom = (tuple(a[i] + a2[i] - k[i] for i in range(n))
                 + tuple(b[i] + b2[i] - k[i] for i in range(n))
                 + (c + c2,))
        out.append((monom, coeff))
    return tuple(out)


def weyl_mul(p: WeylOp, q: WeylOp) -> WeylOp:
    """Normally ordered product p*q in D_n[s]; s is central."""
    p._check(q)
    n = p.n
    terms: Dict[Monomial, object] = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            for monom, k in _monomial_product(m1, m2, n):
                terms[monom] = terms.get(monom, QQ.zero) + c1 * c2 * k
    return WeylOp(terms, n)


def weyl_sum(ops: Iterable[WeylOp], n: int) -> WeylOp:
    terms: Dict[Monomial, object] = {}
    for op in ops:
        for monom, coeff in op.items():
            terms[monom] = terms.get(monom, QQ.zero) + coeff
    return WeylOp(terms, n)


def derivation_operator(a: Sequence[Poly], variables: Sequence[str]) -> WeylOp:
    """The operator sum a_j * d_j for polynomial coefficients a_j."""
    n = len(variables)
    return weyl_sum((WeylOp.from_poly(a_j, variables) * WeylOp.d(j, n) for j, a_j in enumerate(a)), n)
