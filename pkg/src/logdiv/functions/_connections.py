import json
from dataclasses import dataclass, replace
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from ._bfunction import BFunction
from ._errors import InconsistentBasisError
from ._log_derivations import SaitoBasis, adjugate
from ._parse_expression import parse_expression
from ._polynomials import Poly, format_poly

Matrix = Tuple[Tuple[Poly, ...], ...]

DRAFT = "draft"
CHECKED = "checked"


def _mat(rows: Sequence[Sequence[Poly]]) -> Matrix:
    return tuple(tuple(row) for row in rows)


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return _mat([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)])


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return _mat([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)])


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    r = len(A)
    zero = A[0][0].ring.zero
    return _mat([[sum((A[i][k] * B[k][j] for k in range(r)), zero) for j in range(r)] for i in range(r)])


def mat_scale(A: Matrix, c: Poly) -> Matrix:
    return _mat([[a * c for a in row] for row in A])


def identity(r: int, ring) -> Matrix:
    return _mat([[ring.one if i == j else ring.zero for j in range(r)] for i in range(r)])


@dataclass(frozen=True)
class StructureFunctions:
    """Coefficients c[i][j][k] with [delta_i, delta_j] = sum_k c[i][j][k] delta_k."""
    c: Tuple[Tuple[Tuple[Poly, ...], ...], ...]

    def is_zero(self) -> bool:
        return not any(ck for ci in self.c for cij in ci for ck in cij)


@dataclass(frozen=True)
class ILCData:
    """
    Integrable logarithmic connection over a Saito basis.

    ``matrices[i]`` is the r-by-r matrix A_i with nabla_{delta_i} = delta_i + A_i acting
    on coordinate columns. A connection starts in the 'draft' state and becomes
    'checked' through ``validate_ilc``.
    """
    basis: SaitoBasis
    matrices: Tuple[Matrix, ...]
    state: str = DRAFT

    def __post_init__(self):
        n = self.basis.divisor.n
        if len(self.matrices) != n:
            raise ValueError(f"Expected one matrix per basis element ({n}), got {len(self.matrices)}.")
        r = len(self.matrices[0])
        if r < 1:
            raise ValueError("Connection rank must be at least 1.")
        ring = self.basis.divisor.ring
        clean = []
        for A in self.matrices:
            if len(A) != r or any(len(row) != r for row in A):
                raise ValueError("Connection matrices must all be r-by-r.")
            clean.append(_mat([[ring(e) if not hasattr(e, "ring") else e.set_ring(ring) for e in row] for row in A]))
        object.__setattr__(self, "matrices", tuple(clean))
        if self.state not in (DRAFT, CHECKED):
            raise ValueError(f"Unknown connection state '{self.state}'.")

    @classmethod
    def trivial(cls, basis: SaitoBasis, rank: int = 1) -> "ILCData":
        """O^rank with the zero connection matrices; integrable for every basis."""
        ring = basis.divisor.ring
        zero = _mat([[ring.zero] * rank for _ in range(rank)])
        return cls(basis, tuple(zero for _ in basis.rows), CHECKED)

    @classmethod
    def line_bundle(cls, basis: SaitoBasis, m: int) -> "ILCData":
        """O(mD), generated by f^-m."""
        return twist(cls.trivial(basis), m)

    @property
    def rank(self) -> int:
        return len(self.matrices[0])

    @property
    def is_checked(self) -> bool:
        return self.state == CHECKED

    def to_dict(self) -> Dict[str, object]:
        return {"rank": self.rank, "state": self.state,
                "matrices": [[[format_poly(e) for e in row] for row in A] for A in self.matrices]}


def structure_functions(basis: SaitoBasis) -> StructureFunctions:
    """
    Coordinates of the brackets [delta_i, delta_j] in the Saito basis.

    Solved with the adjugate of the Saito matrix divided by u*f; every coordinate
    must be a polynomial and the identity is re-checked exactly.

    Raises:
    InconsistentBasisError: If a coordinate is not a polynomial.
    """
    d = basis.divisor
    n = d.n
    ring = d.ring
    S = basis.matrix
    adj = adjugate(S)
    f, u = d.f, basis.unit
    rows = basis.rows
    c = [[[ring.zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = [rows[i].apply(rows[j].a[m]) - rows[j].apply(rows[i].a[m]) for m in range(n)]
            coords = []
            for k in range(n):
                numerator = sum((v[m] * adj[m][k] for m in range(n)), ring.zero)
                q, r = numerator.div(f)
                if r:
                    raise InconsistentBasisError(
                        f"Bracket of basis elements {i} and {j} has no polynomial coordinates.")
                coords.append(q.quo_ground(u))
            for m in range(n):
                if sum((coords[k] * S[k][m] for k in range(n)), ring.zero) != v[m]:
                    raise InconsistentBasisError("Bracket coordinates fail the defining identity.")
            c[i][j] = coords
            c[j][i] = [-q for q in coords]
    return StructureFunctions(tuple(tuple(tuple(ck) for ck in ci) for ci in c))


def _apply_entrywise(basis: SaitoBasis, i: int, A: Matrix) -> Matrix:
    row = basis.rows[i]
    return _mat([[row.apply(e) for e in r] for r in A])


def check_integrability(e: ILCData, sf: StructureFunctions) -> bool:
    """
    True iff delta_i(A_j) - delta_j(A_i) + [A_i, A_j] = sum_k c_ij^k A_k for all i < j.
    """
    n = len(e.matrices)
    A = e.matrices
    ring = e.basis.divisor.ring
    for i in range(n):
        for j in range(i + 1, n):
            lhs = mat_sub(_apply_entrywise(e.basis, i, A[j]), _apply_entrywise(e.basis, j, A[i]))
            lhs = mat_add(lhs, mat_sub(mat_mul(A[i], A[j]), mat_mul(A[j], A[i])))
            rhs = _mat([[ring.zero] * e.rank for _ in range(e.rank)])
            for k in range(n):
                rhs = mat_add(rhs, mat_scale(A[k], sf.c[i][j][k]))
            if lhs != rhs:
                return False
    return True


def validate_ilc(e: ILCData, sf: Optional[StructureFunctions] = None) -> ILCData:
    """Return ``e`` in the checked state, or raise ValueError if it is not integrable."""
    if e.is_checked:
        return e
    sf = sf or structure_functions(e.basis)
    if not check_integrability(e, sf):
        raise ValueError("Connection matrices do not satisfy the integrability equation.")
    return replace(e, state=CHECKED)


def _require_checked(e: ILCData, operation: str):
    if not e.is_checked:
        raise ValueError(f"{operation} needs a checked connection; call validate_ilc first.")


def twist(e: ILCData, m: int) -> ILCData:
    """E(mD): matrices A_i - m * alpha_i * Id (basis sections f^-m e_j)."""
    _require_checked(e, "twist")
    ring = e.basis.divisor.ring
    I = identity(e.rank, ring)
    matrices = tuple(mat_sub(A, mat_scale(I, row.alpha * m)) for A, row in zip(e.matrices, e.basis.rows))
    return ILCData(e.basis, matrices, CHECKED)


def dual(e: ILCData) -> ILCData:
    """E*: matrices -A_i transposed."""
    _require_checked(e, "dual")
    matrices = tuple(_mat([[-A[j][i] for j in range(e.rank)] for i in range(e.rank)]) for A in e.matrices)
    return ILCData(e.basis, matrices, CHECKED)


def b_twist(b_f: BFunction, k: int) -> BFunction:
    """b_f(s - k), the b-function of O(kD) when b_f is the b-function of f."""
    return b_f.shifted(k)


def coordinate_connection(e: ILCData) -> List[Matrix]:
    """
    Matrices N_j with nabla_{d_j} = d_j + N_j / f.

    N_j = (1/u) sum_i adj(S)[j][i] A_i, from d_j = sum_i (S^-1)[j][i] delta_i and det S = u f.
    """
    basis = e.basis
    n = basis.divisor.n
    ring = basis.divisor.ring
    adj = adjugate(basis.matrix)
    out = []
    for j in range(n):
        N = _mat([[ring.zero] * e.rank for _ in range(e.rank)])
        for i in range(n):
            N = mat_add(N, mat_scale(e.matrices[i], adj[j][i]))
        out.append(_mat([[entry.quo_ground(basis.unit) for entry in row] for row in N]))
    return out


def load_ilc(data: Union[str, Mapping[str, object]], basis: SaitoBasis) -> ILCData:
    """
    Read a connection from ``{"rank": r, "matrices": [[[entry, ...], ...], ...]}``.

    Entries are polynomial strings in the divisor variables. The result is a draft.
    """
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, Mapping) or "rank" not in data or "matrices" not in data:
        raise ValueError("Connection input needs 'rank' and 'matrices'.")
    r = data["rank"]
    if not isinstance(r, int) or r < 1:
        raise ValueError("Connection rank must be a positive integer.")
    ring = basis.divisor.ring
    matrices = []
    for A in data["matrices"]:
        if len(A) != r or any(len(row) != r for row in A):
            raise ValueError(f"Every connection matrix must be {r}-by-{r}.")
        matrices.append(_mat([[parse_expression(str(entry), ring=ring) for entry in row] for row in A]))
    return ILCData(basis, tuple(matrices), DRAFT)
