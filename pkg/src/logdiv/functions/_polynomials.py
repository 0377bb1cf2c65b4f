from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.orderings import MonomialOrder as _SympyOrder
from sympy.polys.orderings import grevlex, lex
from sympy.polys.rings import PolyElement, PolyRing

from ._errors import ContextMismatchError, OrderError

Poly = PolyElement
Monomial = Tuple[int, ...]

_INNER_ORDERS = {"lex": lex, "grevlex": grevlex}


class WeightedDegreeOrder(_SympyOrder):
    """Weighted degree first, ties broken by degree reverse lexicographic."""

    alias = "wdeg"
    is_global = True

    def __init__(self, weights: Sequence[int]):
        self.weights = tuple(weights)

    def __call__(self, monomial):
        return (sum(w * e for w, e in zip(self.weights, monomial)), grevlex(monomial))

    def __repr__(self):
        return f"WeightedDegreeOrder({self.weights})"

    def __eq__(self, other):
        return isinstance(other, WeightedDegreeOrder) and other.weights == self.weights

    def __hash__(self):
        return hash((self.__class__.__name__, self.weights))


class BlockEliminationOrder(_SympyOrder):
    """Compare the first block of positions, then the second, each with its own order."""

    alias = "block"
    is_global = True

    def __init__(self, first: Sequence[int], second: Sequence[int], inner: Tuple[str, str]):
        self.first = tuple(first)
        self.second = tuple(second)
        self.inner = tuple(inner)

    def __call__(self, monomial):
        head = _INNER_ORDERS[self.inner[0]](tuple(monomial[i] for i in self.first))
        tail = _INNER_ORDERS[self.inner[1]](tuple(monomial[i] for i in self.second))
        return (head, tail)

    def __repr__(self):
        return f"BlockEliminationOrder({self.first}, {self.second}, {self.inner})"

    def __eq__(self, other):
        return (isinstance(other, BlockEliminationOrder)
                and (other.first, other.second, other.inner) == (self.first, self.second, self.inner))

    def __hash__(self):
        return hash((self.__class__.__name__, self.first, self.second, self.inner))


@dataclass(frozen=True)
class MonomialOrder:
    """
    Monomial order description, independent of any particular ring.

    kind is one of 'lex', 'grevlex', 'weighted' or 'block'. Weighted orders
    need strictly positive integer weights (one per ring variable). Block
    orders name the variables of the first block; the second block defaults
    to every remaining variable of the ring.
    """
    kind: str = "grevlex"
    weights: Tuple[int, ...] = ()
    first_block: Tuple[str, ...] = ()
    second_block: Tuple[str, ...] = ()
    inner: Tuple[str, str] = ("grevlex", "grevlex")

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "weighted", "block"):
            raise OrderError(f"Unknown monomial order kind '{self.kind}'.")
        if self.kind == "weighted":
            if not self.weights or any(int(w) != w or w <= 0 for w in self.weights):
                raise OrderError("Weighted orders need strictly positive integer weights.")
        if self.kind == "block":
            if not self.first_block:
                raise OrderError("Block orders need a non-empty first block.")
            if set(self.first_block) & set(self.second_block):
                raise OrderError("Order blocks must be disjoint.")
            if any(name not in _INNER_ORDERS for name in self.inner):
                raise OrderError("Block inner orders must be 'lex' or 'grevlex'.")

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def grevlex(cls) -> "MonomialOrder":
        return cls("grevlex")

    @classmethod
    def weighted(cls, weights: Sequence[int]) -> "MonomialOrder":
        return cls("weighted", weights=tuple(weights))

    @classmethod
    def block(cls, first: Iterable[str], second: Iterable[str] = (),
              inner: Tuple[str, str] = ("grevlex", "grevlex")) -> "MonomialOrder":
        return cls("block", first_block=tuple(first), second_block=tuple(second), inner=tuple(inner))

    def to_sympy(self, names: Sequence[str]):
        """Build the sympy order callable for a ring whose variables are ``names``."""
        names = list(names)
        if self.kind == "lex":
            return lex
        if self.kind == "grevlex":
            return grevlex
        if self.kind == "weighted":
            if len(self.weights) != len(names):
                raise OrderError(f"Expected {len(names)} weights, got {len(self.weights)}.")
            return WeightedDegreeOrder(self.weights)
        missing = [v for v in self.first_block + self.second_block if v not in names]
        if missing:
            raise OrderError(f"Order blocks name unknown variables: {', '.join(missing)}")
        first = [names.index(v) for v in self.first_block]
        if self.second_block:
            second = [names.index(v) for v in self.second_block]
        else:
            second = [i for i, v in enumerate(names) if v not in self.first_block]
        if sorted(first + second) != list(range(len(names))):
            raise OrderError("Order blocks must cover every ring variable.")
        return BlockEliminationOrder(first, second, self.inner)

    def is_global(self, names: Sequence[str]) -> bool:
        """True when every variable is larger than 1 (the order is a well-order)."""
        key = self.to_sympy(names)
        one = key(tuple(0 for _ in names))
        return all(key(_unit(i, len(names))) > one for i in range(len(names)))


@dataclass(frozen=True)
class IdealBasis:
    """Generators of an ideal together with the order they are read in."""
    generators: Tuple[Poly, ...]
    order: MonomialOrder = field(default_factory=MonomialOrder.grevlex)
    is_groebner: bool = False

    @classmethod
    def of(cls, generators: Iterable[Poly], order: Optional[MonomialOrder] = None) -> "IdealBasis":
        return cls(tuple(generators), order or MonomialOrder.grevlex(), False)

    def __len__(self):
        return len(self.generators)


def _unit(i: int, n: int) -> Monomial:
    return tuple(1 if j == i else 0 for j in range(n))


def polynomial_ring(names: Sequence[str], order: Optional[MonomialOrder] = None) -> PolyRing:
    """Return the rational polynomial ring on ``names`` read in ``order``."""
    names = tuple(names)
    if not names:
        raise ValueError("A polynomial ring needs at least one variable.")
    if len(set(names)) != len(names):
        raise ValueError("Variable names must be unique.")
    order = order or MonomialOrder.grevlex()
    return PolyRing(names, QQ, order.to_sympy(names))


def variable_names(R: PolyRing) -> Tuple[str, ...]:
    return tuple(str(s) for s in R.symbols)


def common_ring(polys: Sequence[Poly]) -> PolyRing:
    """Return the shared ring of ``polys`` or raise ContextMismatchError."""
    if not polys:
        raise ValueError("Cannot determine a ring from an empty list.")
    R = polys[0].ring
    names = variable_names(R)
    for p in polys[1:]:
        if variable_names(p.ring) != names:
            raise ContextMismatchError(
                f"Variable context mismatch: {names} vs {variable_names(p.ring)}")
    return R


def total_degree(p: Poly) -> int:
    """Largest total degree of a term of p; -1 for the zero polynomial."""
    return max((sum(m) for m in p.itermonoms()), default=-1)


def is_monomial_in(monomial: Monomial, positions: Iterable[int]) -> bool:
    """True when ``monomial`` only involves the variables at ``positions``."""
    allowed = set(positions)
    return all(e == 0 or i in allowed for i, e in enumerate(monomial))


def constant_term(p: Poly):
    return p.get(p.ring.zero_monom, QQ.zero)


def rational(c) -> Fraction:
    """Convert a domain coefficient to a Fraction."""
    return Fraction(int(c.numerator), int(c.denominator))


def rational_str(c) -> str:
    q = rational(c)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def primitive_integer_vector(values: Sequence) -> List[int]:
    """Scale rationals to coprime integers, keeping their signs."""
    fractions = [Fraction(str(v)) for v in values]
    denominator = 1
    for q in fractions:
        denominator = denominator * q.denominator // gcd(denominator, q.denominator)
    integers = [int(q * denominator) for q in fractions]
    content = 0
    for v in integers:
        content = gcd(content, abs(v))
    return [v // content for v in integers] if content else integers


def clear_denominators(p: Poly) -> Poly:
    """Scale ``p`` to integer coefficients with content 1 and positive leading coefficient."""
    if not p:
        return p
    coeffs = [c for _, c in p.terms()]
    scaled = primitive_integer_vector(coeffs)
    factor = QQ(scaled[0]) / coeffs[0]
    return p.mul_ground(factor)


def format_monomial(monomial: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, monomial):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """
    Print ``p`` in the input grammar (``+ - * ^`` and ``a/b`` literals).

    The output parses back to ``p`` with ``parse_expression``.
    """
    if not p:
        return "0"
    names = variable_names(p.ring)
    pieces = []
    for monomial, coeff in p.terms():
        q = rational(coeff)
        sign = "-" if q < 0 else "+"
        q = abs(q)
        body = format_monomial(monomial, names)
        literal = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        if not body:
            text = literal
        elif q == 1:
            text = body
        else:
            text = f"{literal}*{body}"
        pieces.append((sign, text))
    first_sign, first_text = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_text
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out


def poly_to_json(p: Poly) -> Dict[str, object]:
    return {"text": format_poly(p), "variables": list(variable_names(p.ring))}
