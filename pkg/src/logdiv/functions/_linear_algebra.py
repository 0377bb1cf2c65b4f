from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from ._polynomials import rational

SparseRow = Dict[int, int]


def integer_row(row: Mapping[int, object]) -> SparseRow:
    """Primitive integer multiple of a sparse rational row (zero entries dropped)."""
    values = {c: rational(v) for c, v in row.items() if v}
    if not values:
        return {}
    scale = lcm(*(v.denominator for v in values.values()))
    ints = {c: int(v * scale) for c, v in values.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    return {c: v // g for c, v in ints.items()} if g > 1 else ints


def _width(rows: Sequence[Mapping[int, object]]) -> int:
    return max((c for row in rows for c, v in row.items() if v), default=-1) + 1


def domain_matrix(rows: Sequence[Mapping[int, object]], ncols: Optional[int] = None) -> DomainMatrix:
    """Sparse DomainMatrix over QQ with the given rows."""
    width = _width(rows) if ncols is None else ncols
    entries = {}
    for i, row in enumerate(rows):
        line = {}
        for c, v in row.items():
            q = rational(v)
            if q:
                line[c] = QQ(q.numerator, q.denominator)
        if line:
            entries[i] = line
    return DomainMatrix(entries, (len(rows), width), QQ)


def rank(rows: Sequence[Mapping[int, object]]) -> int:
    """Rank of a sparse rational matrix given by its rows."""
    if not rows or not _width(rows):
        return 0
    return domain_matrix(rows).rank()


def left_kernel(rows: Sequence[Mapping[int, object]]) -> List[Dict[int, Fraction]]:
    """
    Basis of {v : v * M = 0} for the matrix M with the given rows.

    Vectors are sparse dictionaries row index -> coefficient with coprime integer entries.
    """
    if not rows:
        return []
    if not _width(rows):
        return [{i: Fraction(1)} for i in range(len(rows))]
    basis = domain_matrix(rows).transpose().nullspace()
    out = []
    for vector in basis.to_list():
        row = integer_row({i: v for i, v in enumerate(vector) if v})
        out.append({k: Fraction(v) for k, v in row.items()})
    return out


def combine_rows(vector: Mapping[int, object], rows: Sequence[Mapping[int, object]]) -> Dict[int, Fraction]:
    """The row vector sum_i vector[i] * rows[i]."""
    out: Dict[int, Fraction] = {}
    for i, coeff in vector.items():
        c = rational(coeff)
        for col, v in rows[i].items():
            out[col] = out.get(col, Fraction(0)) + c * rational(v)
    return {col: v for col, v in out.items() if v}


@dataclass(frozen=True)
class SparseMatrix:
    """Rational matrix stored by rows, with the labels of its rows and columns."""
    rows: Tuple[Dict[int, object], ...]
    ncols: int
    row_labels: Tuple[object, ...] = ()
    col_labels: Tuple[object, ...] = ()

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), self.ncols

    def rank(self) -> int:
        return rank(self.rows)

    def left_kernel(self) -> List[Dict[int, Fraction]]:
        return left_kernel(self.rows)

    def dense(self) -> List[List[Fraction]]:
        return [[rational(row.get(c, 0)) for c in range(self.ncols)] for row in self.rows]

    def is_zero(self) -> bool:
        return not any(self.rows)


def matrix_product_is_zero(first: SparseMatrix, second: SparseMatrix) -> bool:
    """True iff first * second = 0 (first's columns index second's rows)."""
    if first.ncols != len(second.rows):
        raise ValueError(f"Shapes do not compose: {first.shape} and {second.shape}.")
    for row in first.rows:
        if combine_rows(row, second.rows):
            return False
    return True


def from_dense(rows: Sequence[Sequence[object]], ncols: Optional[int] = None) -> SparseMatrix:
    width = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    return SparseMatrix(tuple({c: v for c, v in enumerate(row) if v} for row in rows), width)
