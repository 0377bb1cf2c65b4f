import logging
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from ._errors import Deadline, NotReducedError
from ._parse_expression import parse_expression
from ._polynomials import (Poly, clear_denominators, constant_term, format_poly,
                           polynomial_ring, primitive_integer_vector, rational_str, total_degree,
                           variable_names)
from ._syzygies import syzygies

logger = logging.getLogger(__name__)

# Names used for auxiliary ring variables (Rees variable, s and symbol variables).
REES_VARIABLE = "t_"
S_VARIABLE = "s"
SYMBOL_PREFIX = "xi_"
DERIVATIVE_PREFIX = "d_"


def symbol_name(variable: str) -> str:
    return f"{SYMBOL_PREFIX}{variable}"


def derivative_name(variable: str) -> str:
    return f"{DERIVATIVE_PREFIX}{variable}"


def _check_variable_names(names: Sequence[str]) -> None:
    for name in names:
        if name in (REES_VARIABLE, S_VARIABLE) or name.startswith((SYMBOL_PREFIX, DERIVATIVE_PREFIX)):
            raise ValueError(f"Variable name '{name}' is reserved for auxiliary variables.")


@dataclass(frozen=True)
class DivisorInput:
    """
    Reduced equation f of a divisor, centered at the origin.

    Construction checks f(0) = 0 and that f has no repeated factor.
    """
    f: Poly
    variables: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.variables:
            object.__setattr__(self, "variables", variable_names(self.f.ring))
        if tuple(self.variables) != variable_names(self.f.ring):
            ring = polynomial_ring(self.variables)
            object.__setattr__(self, "f", self.f.set_ring(ring))
        object.__setattr__(self, "variables", tuple(self.variables))
        _check_variable_names(self.variables)
        if not self.f:
            raise ValueError("The divisor equation must be nonzero.")
        if constant_term(self.f):
            raise ValueError("The divisor must pass through the origin: f(0) must be 0.")
        repeated = repeated_factor(self.f)
        if repeated is not None:
            raise NotReducedError(format_poly(repeated))

    @classmethod
    def parse(cls, text: str, variables: Optional[Sequence[str]] = None) -> "DivisorInput":
        f = parse_expression(text, variables)
        return cls(f, tuple(variables) if variables else ())

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def ring(self):
        return self.f.ring

    def partials(self) -> List[Poly]:
        return [self.f.diff(x) for x in self.ring.gens]

    def __str__(self):
        return format_poly(self.f)


def as_divisor(d: Union[DivisorInput, Poly, str], variables: Optional[Sequence[str]] = None) -> DivisorInput:
    if isinstance(d, DivisorInput):
        return d
    if isinstance(d, str):
        return DivisorInput.parse(d, variables)
    return DivisorInput(d, tuple(variables) if variables else ())


def repeated_factor(f: Poly) -> Optional[Poly]:
    """Return the gcd of f with all its partials when it is not constant."""
    g = f
    for x in f.ring.gens:
        g = g.gcd(f.diff(x))
        if g.is_ground:
            return None
    if g.is_ground:
        return None
    return clear_denominators(g)


@dataclass(frozen=True)
class LogDerivation:
    """
    A logarithmic derivation sum a_i d/dx_i with delta(f) = alpha * f.

    The defining relation is checked when the object is built.
    """
    a: Tuple[Poly, ...]
    alpha: Poly
    f: Poly = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        if self.f is None:
            raise ValueError("LogDerivation needs the divisor equation f.")
        if len(self.a) != self.f.ring.ngens:
            raise ValueError("LogDerivation needs one coefficient per variable.")
        if self.apply(self.f) != self.alpha * self.f:
            raise ValueError("Coefficients do not define a logarithmic derivation of f.")

    def apply(self, g: Poly) -> Poly:
        """Apply the derivation to a polynomial of the same ring."""
        total = g.ring.zero
        for a_i, x in zip(self.a, g.ring.gens):
            total += a_i * g.diff(x)
        return total

    def __add__(self, other: "LogDerivation") -> "LogDerivation":
        return LogDerivation(tuple(p + q for p, q in zip(self.a, other.a)), self.alpha + other.alpha, self.f)

    def scale(self, c) -> "LogDerivation":
        return LogDerivation(tuple(p * c for p in self.a), self.alpha * c, self.f)

    def is_zero(self) -> bool:
        return not any(self.a)

    def degree(self) -> int:
        return max((total_degree(p) for p in self.a if p), default=0)

    def to_dict(self):
        names = variable_names(self.f.ring)
        return {"coefficients": {x: format_poly(p) for x, p in zip(names, self.a)},
                "alpha": format_poly(self.alpha)}

    def __str__(self):
        names = variable_names(self.f.ring)
        parts = [f"({format_poly(p)})*d/d{x}" for x, p in zip(names, self.a) if p]
        return " + ".join(parts) + f"  [alpha = {format_poly(self.alpha)}]"


def determinant(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Exact determinant of a square polynomial matrix."""
    R = rows[0][0].ring
    K = R.to_domain()
    M = DomainMatrix([[K.convert(e) for e in row] for row in rows], (len(rows), len(rows)), K)
    return R(M.det())


def adjugate(rows: Sequence[Sequence[Poly]]) -> List[List[Poly]]:
    """Adjugate matrix: adj(M) * M = det(M) * I."""
    n = len(rows)
    R = rows[0][0].ring
    if n == 1:
        return [[R.one]]
    adj = [[R.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            sign = 1 if (i + j) % 2 == 0 else -1
            adj[j][i] = determinant(minor) * sign
    return adj


@dataclass(frozen=True)
class SaitoBasis:
    """
    n logarithmic derivations whose coefficient matrix has determinant unit * f.

    The determinant certificate is checked on construction.
    """
    divisor: DivisorInput
    rows: Tuple[LogDerivation, ...]
    unit: object = None

    def __post_init__(self):
        if len(self.rows) != self.divisor.n:
            raise ValueError("A Saito basis has exactly n rows.")
        det = determinant(self.matrix)
        f = self.divisor.f
        if not det:
            raise ValueError("Saito matrix is singular.")
        unit = det.LC / f.LC
        if det != f.mul_ground(unit):
            raise ValueError("Determinant of the Saito matrix is not a constant multiple of f.")
        object.__setattr__(self, "unit", unit)

    @property
    def matrix(self) -> List[List[Poly]]:
        return [list(row.a) for row in self.rows]

    @property
    def alphas(self) -> Tuple[Poly, ...]:
        return tuple(row.alpha for row in self.rows)

    def to_dict(self):
        return {"rows": [row.to_dict() for row in self.rows], "unit": rational_str(self.unit)}


def jacobian_ideal(d: DivisorInput) -> List[Poly]:
    """Return (f, df/dx_1, ..., df/dx_n) in this order."""
    return [d.f] + d.partials()


def _from_syzygy(d: DivisorInput, vector) -> Optional[LogDerivation]:
    alpha = -vector[0]
    a = tuple(vector[1:])
    if not any(a):
        return None
    coeffs = [c for p in a for _, c in p.terms()]
    scaled = primitive_integer_vector(coeffs)
    factor = QQ(scaled[0]) / coeffs[0]
    first = next(p for p in a if p)
    if first.LC * factor < 0:
        factor = -factor
    return LogDerivation(tuple(p.mul_ground(factor) for p in a), alpha.mul_ground(factor), d.f)


def _generator_key(der: LogDerivation):
    nonzero = [i for i, p in enumerate(der.a) if p]
    return (der.degree(), sum(len(p) for p in der.a), nonzero, [format_poly(p) for p in der.a])


def log_derivations(d: DivisorInput, deadline: Optional[Deadline] = None) -> List[LogDerivation]:
    """
    Generators of Der(log f), read off the syzygies of the jacobian ideal.

    A syzygy (c_0, c_1, ..., c_n) of (f, f_1, ..., f_n) gives the derivation
    with a = (c_1, ..., c_n) and alpha = -c_0. Coefficients are scaled to
    coprime integers with a positive leading coefficient in the first nonzero a_i.

    Parameters:
    d (DivisorInput): The divisor.
    deadline (Deadline): Optional cancellation token.

    Returns:
    list: LogDerivation generators, sorted by degree.
    """
    out = []
    seen = set()
    for vector in syzygies(jacobian_ideal(d), deadline):
        der = _from_syzygy(d, vector)
        if der is None or (der.a, der.alpha) in seen:
            continue
        seen.add((der.a, der.alpha))
        out.append(der)
    out.sort(key=_generator_key)
    logger.debug("log_derivations(%s): %d generators", d, len(out))
    return out


def _try_rows(d: DivisorInput, rows: Sequence[LogDerivation]) -> Optional[SaitoBasis]:
    det = determinant([list(row.a) for row in rows])
    if not det or total_degree(det) != total_degree(d.f):
        return None
    if det != d.f.mul_ground(det.LC / d.f.LC):
        return None
    return SaitoBasis(d, tuple(rows))


def saito_basis(d: DivisorInput, ders: Sequence[LogDerivation], attempts: int = 200,
                seed: int = 0) -> Optional[SaitoBasis]:
    """
    Search for n derivations whose coefficient determinant is a unit multiple of f.

    Size-n subsets of ``ders`` are tried first (in order of increasing degree), then
    ``attempts`` random small-integer combinations drawn with ``random.Random(seed)``.

    Parameters:
    d (DivisorInput): The divisor.
    ders (list): Generators of Der(log f), e.g. from ``log_derivations``.
    attempts (int): Number of random combinations to try after the subsets.
    seed (int): Seed of the random combinations.

    Returns:
    SaitoBasis or None: None means the divisor was not recognized as free at the origin.
    """
    if attempts < 0:
        raise ValueError("attempts must be non-negative.")
    n = d.n
    candidates = [der for der in ders if not der.is_zero()]
    if len(candidates) < n:
        return None
    target = total_degree(d.f)
    degrees = [der.degree() for der in candidates]
    for chosen in combinations(range(len(candidates)), n):
        if sum(degrees[i] for i in chosen) < target:
            continue
        basis = _try_rows(d, [candidates[i] for i in chosen])
        if basis is not None:
            logger.debug("saito_basis(%s): found among generator subsets", d)
            return basis
    rng = random.Random(seed)
    for _ in range(attempts):
        rows = []
        for _ in range(n):
            row = None
            for der in candidates:
                c = rng.randint(-2, 2)
                if c:
                    row = der.scale(c) if row is None else row + der.scale(c)
            if row is None or row.is_zero():
                break
            rows.append(row)
        if len(rows) < n:
            continue
        basis = _try_rows(d, rows)
        if basis is not None:
            logger.debug("saito_basis(%s): found by random combination", d)
            return basis
    logger.warning("saito_basis(%s): no basis found after %d attempts; not recognized as free", d, attempts)
    return None
