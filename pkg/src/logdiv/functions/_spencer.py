import logging
import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from sympy.polys.orderings import grevlex

from ._connections import ILCData, StructureFunctions, coordinate_connection, structure_functions, validate_ilc
from ._errors import Deadline, SpencerError, check_deadline
from ._fs_module import FsActor, FsVector, fs_coordinates, specialize_coordinates
from ._homogeneity import is_quasi_homogeneous, weighted_degree
from ._koszul import is_koszul_free, theta_koszul_check
from ._linear_algebra import SparseMatrix, left_kernel, rank
from ._log_derivations import DivisorInput, SaitoBasis
from ._polynomials import Monomial, rational_str
from ._tables import DataFrameType, to_frame
from ._weyl_algebra import WeylOp, derivation_operator

logger = logging.getLogger(__name__)

THETA_PAIR = "theta"
LOGARITHMIC_PAIR = "logarithmic"
GRADED = "graded"
FILTRATION = "filtration"

EXACT_LABEL = "exact"
EVIDENCE_LABEL = "evidence"

HOMOLOGY_COLUMNS = ("weight", "degree", "dimension", "kernel", "image", "homology", "label")
SPECIALIZATION_COLUMNS = ("weight", "k", "phi_image", "kernel_k", "image_k", "equal", "segment_exact", "label")

# Generator of a component: (wedge index set I, basis index a of E) for e_I (x) e_a.
Generator = Tuple[Tuple[int, ...], int]
OperatorRow = Dict[int, WeylOp]
BoxElement = Tuple[int, Monomial]


@dataclass(frozen=True)
class SpencerSpec:
    """
    A Spencer complex request: Saito basis, coefficient connection, pair and truncation.

    ``mode`` defaults to 'graded' when f is quasi-homogeneous and 'filtration'
    otherwise. Graded truncations are exact statements about each weight
    component; filtration truncations are evidence only.

    Parameters:
    basis (SaitoBasis): Saito basis of the divisor.
    ilc (ILCData): Coefficient connection; the trivial rank-one connection by default.
    pair (str): 'theta' for (Theta_{f,s}, F^1 D) or 'logarithmic' for (Der(log f)[s], Der(O[s])).
    mode (str): 'graded' or 'filtration'.
    weight_bound (int): W; weight components -W..W are examined in graded mode.
    order_bound (int): N; total order (derivatives plus powers of s) bound.
    x_degree_bound (int): M; x-degree bound in top homological degree (filtration mode).
    weights (tuple): Positive weights of the variables; found automatically if omitted.
    """
    basis: SaitoBasis
    ilc: Optional[ILCData] = None
    pair: str = THETA_PAIR
    mode: Optional[str] = None
    weight_bound: int = 6
    order_bound: int = 3
    x_degree_bound: int = 2
    weights: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.pair not in (THETA_PAIR, LOGARITHMIC_PAIR):
            raise SpencerError(f"Unknown Spencer pair '{self.pair}'; use 'theta' or 'logarithmic'.")
        if self.weight_bound < 1 or self.order_bound < 1:
            raise SpencerError("Truncation bounds W and N must be at least 1.")
        if self.x_degree_bound < 0:
            raise SpencerError("The x-degree bound must be non-negative.")
        ilc = self.ilc if self.ilc is not None else ILCData.trivial(self.basis)
        if ilc.basis != self.basis:
            raise SpencerError("The connection is presented over a different Saito basis.")
        object.__setattr__(self, "ilc", validate_ilc(ilc))

        d = self.basis.divisor
        weights = self.weights
        if weights is not None:
            weights = tuple(int(w) for w in weights)
            if len(weights) != d.n or any(w <= 0 for w in weights):
                raise SpencerError(f"Expected {d.n} positive weights, got {weights}.")
            if weighted_degree(d.f, weights) is None:
                raise SpencerError(f"{d} is not weighted homogeneous for the weights {weights}.")
        mode = self.mode
        if mode is None:
            if weights is None:
                weights = is_quasi_homogeneous(d)
            mode = GRADED if weights is not None else FILTRATION
        elif mode == GRADED:
            if weights is None:
                weights = is_quasi_homogeneous(d)
            if weights is None:
                raise SpencerError(f"Weight-graded truncation needs a quasi-homogeneous divisor; {d} is not.")
        elif mode != FILTRATION:
            raise SpencerError(f"Unknown truncation mode '{mode}'; use 'graded' or 'filtration'.")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "mode", mode)

    @property
    def divisor(self) -> DivisorInput:
        return self.basis.divisor


def _sign_of_insertion(k: int, rest: Sequence[int]) -> int:
    """Sign of sorting k ^ rest into increasing order."""
    return -1 if sum(1 for i in rest if i < k) % 2 else 1


def spencer_generators(n: int, rank: int, r: int) -> List[Generator]:
    """Free generators e_I (x) e_a of homological degree -r, I in lexicographic order."""
    return [(I, a) for I in combinations(range(n), r) for a in range(rank)]


def _lambda_operators(spec: SpencerSpec) -> Tuple[List[WeylOp], List[List[List[WeylOp]]]]:
    """
    The operators lambda_i and the matrices of their action on the basis of E.

    Theta pair: lambda_i = delta_i - alpha_i s acting by A_i. Logarithmic pair:
    lambda_i = delta_i acting on E[s] f^s by A_i + alpha_i s.
    """
    d = spec.divisor
    n = d.n
    variables = d.variables
    s = WeylOp.s(n)
    ops, actions = [], []
    for row, A in zip(spec.basis.rows, spec.ilc.matrices):
        delta = derivation_operator(row.a, variables)
        alpha = WeylOp.from_poly(row.alpha, variables)
        action = [[WeylOp.from_poly(entry, variables) for entry in line] for line in A]
        if spec.pair == THETA_PAIR:
            ops.append(delta - alpha * s)
        else:
            ops.append(delta)
            for a in range(spec.ilc.rank):
                action[a][a] = action[a][a] + alpha * s
        actions.append(action)
    return ops, actions


def _differential_rows(spec: SpencerSpec, sf: StructureFunctions, r: int) -> List[OperatorRow]:
    """
    Rows of the operator matrix of the differential from degree -r to -(r - 1).

    e_I (x) e_a maps to
    sum_p (-1)^p lambda_{i_p} e_{I - i_p} (x) e_a
    - sum_p (-1)^p sum_b (A_{i_p})_{ba} e_{I - i_p} (x) e_b
    + sum_{p<q} (-1)^(p+q) sum_k c_{i_p i_q}^k (e_k ^ e_{I - i_p - i_q}) (x) e_a.
    """
    n = spec.divisor.n
    rank = spec.ilc.rank
    variables = spec.divisor.variables
    ops, actions = _lambda_operators(spec)
    targets = {g: i for i, g in enumerate(spencer_generators(n, rank, r - 1))}
    rows = []
    for I, a in spencer_generators(n, rank, r):
        row: OperatorRow = {}

        def add(key: Generator, op: WeylOp):
            index = targets[key]
            total = row.get(index, WeylOp.zero(n)) + op
            if total:
                row[index] = total
            else:
                row.pop(index, None)

        for p, i in enumerate(I):
            J = I[:p] + I[p + 1:]
            sign = -1 if p % 2 else 1
            add((J, a), ops[i] * sign)
            for b in range(rank):
                entry = actions[i][b][a]
                if entry:
                    add((J, b), entry * (-sign))
        for p, q in combinations(range(len(I)), 2):
            i, j = I[p], I[q]
            rest = I[:p] + I[p + 1:q] + I[q + 1:]
            sign = -1 if (p + q) % 2 else 1
            for k, c in enumerate(sf.c[i][j]):
                if not c or k in rest:
                    continue
                K = tuple(sorted(rest + (k,)))
                add((K, a), WeylOp.from_poly(c, variables) * (sign * _sign_of_insertion(k, rest)))
        rows.append(row)
    return rows


def _fs_sum(actor: FsActor, vectors: Sequence[FsVector]) -> FsVector:
    if not vectors:
        return actor.zero()
    pole = max(v.pole for v in vectors)
    total = [actor.ring.zero] * actor.rank
    for v in vectors:
        for a, g in enumerate(v.at_pole(pole, actor.f)):
            total[a] += g
    return FsVector(tuple(total), pole).canonical(actor.f)


def _weighted_solutions(weights: Sequence[int], target: int) -> Iterator[Tuple[int, ...]]:
    """Exponent vectors a >= 0 with sum_j weights[j] * a[j] = target."""
    if not weights:
        if target == 0:
            yield ()
        return
    w = weights[0]
    for e in range(target // w + 1):
        for tail in _weighted_solutions(weights[1:], target - w * e):
            yield (e,) + tail


def _bounded_exponents(k: int, bound: int) -> Iterator[Tuple[int, ...]]:
    """Exponent vectors of length k with entries summing to at most bound."""
    for e in product(range(bound + 1), repeat=k):
        if sum(e) <= bound:
            yield e


@dataclass(frozen=True, eq=False)
class TruncatedComplex:
    """
    A Spencer complex with its operator matrices and exact-rational truncations.

    ``operators[r]`` holds, for each generator of degree -r, the row of the
    differential to degree -(r - 1) as a dictionary target index -> operator.
    Components of degree -r are spanned by x^a d^b s^c e_I (x) e_a with
    |b| + c <= N - r; in graded mode they are indexed by weight, in filtration
    mode by the single label None with |a| <= M + K(n - r).
    """
    spec: SpencerSpec
    structure: StructureFunctions
    generators: Tuple[Tuple[Generator, ...], ...]
    generator_weights: Tuple[Tuple[int, ...], ...]
    operators: Tuple[Tuple[OperatorRow, ...], ...]
    x_shift: int
    actor: FsActor = field(repr=False, compare=False)
    _cache: Dict[tuple, object] = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.spec.divisor.n

    @property
    def mode(self) -> str:
        return self.spec.mode

    @property
    def label(self) -> str:
        return EXACT_LABEL if self.mode == GRADED else EVIDENCE_LABEL

    def weight_components(self) -> List[Optional[int]]:
        if self.mode == GRADED:
            W = self.spec.weight_bound
            return list(range(-W, W + 1))
        return [None]

    def box(self, r: int, w: Optional[int], with_s: bool = True) -> List[BoxElement]:
        """Ordered basis of the truncated component of degree -r and weight w."""
        key = ("box", r, w, with_s)
        if key in self._cache:
            return self._cache[key]
        n = self.n
        bound = self.spec.order_bound - r
        out: List[BoxElement] = []
        if bound >= 0:
            orders = [(b, c) for b in _bounded_exponents(n, bound)
                      for c in (range(bound - sum(b) + 1) if with_s else (0,))]
            for g, wg in enumerate(self.generator_weights[r]):
                for b, c in orders:
                    if self.mode == GRADED:
                        target = w - wg + sum(wj * bj for wj, bj in zip(self.spec.weights, b))
                        if target < 0:
                            continue
                        xs = _weighted_solutions(self.spec.weights, target)
                    else:
                        xs = _bounded_exponents(n, self.spec.x_degree_bound + self.x_shift * (n - r))
                    out.extend((g, a + b + (c,)) for a in xs)
        out.sort(key=lambda e: (e[0], grevlex(e[1])))
        self._cache[key] = out
        return out

    def _differential(self, r: int, w: Optional[int], k: Optional[int] = None) -> List[Dict[int, object]]:
        n = self.n
        with_s = k is None
        target = {e: i for i, e in enumerate(self.box(r - 1, w, with_s))}
        rows = []
        for g, m in self.box(r, w, with_s):
            op = WeylOp({m: 1}, n)
            row: Dict[int, object] = {}
            for h, P in self.operators[r][g].items():
                image = op * P
                if k is not None:
                    image = image.substitute_s(-k)
                for m2, c in image.items():
                    col = target.get((h, m2))
                    if col is None:
                        raise RuntimeError(f"Differential leaves the truncation at degree {-r}, weight {w}.")
                    row[col] = row.get(col, 0) + c
            rows.append({col: c for col, c in row.items() if c})
        return rows

    def matrix(self, r: int, w: Optional[int] = None) -> SparseMatrix:
        """Matrix of the differential from degree -r to -(r - 1) on the component of weight w."""
        if not 1 <= r <= self.n:
            raise SpencerError(f"Differentials exist for 1 <= r <= {self.n}, got r = {r}.")
        key = ("matrix", r, w)
        if key not in self._cache:
            rows = self._differential(r, w)
            self._cache[key] = SparseMatrix(tuple(rows), len(self.box(r - 1, w)),
                                            tuple(self.box(r, w)), tuple(self.box(r - 1, w)))
        return self._cache[key]

    def augmentation(self, w: Optional[int] = None, k: Optional[int] = None) -> SparseMatrix:
        """
        Matrix of P (x) e_a -> P(e_a f^s) on the degree-0 component, in coordinates over f^N.

        With ``k`` given, s is specialized to -k on D (x) E and P acts on e_a f^-k.
        """
        key = ("augmentation", w, k)
        if key in self._cache:
            return self._cache[key]
        n = self.n
        N = self.spec.order_bound
        with_s = k is None
        columns: Dict[tuple, int] = {}
        rows = []
        for g, m in self.box(0, w, with_s):
            _, a = self.generators[0][g]
            v = self.actor.apply(WeylOp({m: 1}, n), self.actor.generator(a), canonical=False)
            coordinates = fs_coordinates(v, N, self.actor.f) if with_s else specialize_coordinates(v, N, self.actor.f, k)
            row = {}
            for label, c in coordinates.items():
                row[columns.setdefault(label, len(columns))] = c
            rows.append(row)
        labels = tuple(sorted(columns, key=columns.get))
        result = SparseMatrix(tuple(rows), len(columns), tuple(self.box(0, w, with_s)), labels)
        self._cache[key] = result
        return result

    def rank_of(self, r: int, w: Optional[int]) -> int:
        """Rank of the map leaving degree -r (the augmentation for r = 0); 0 above the top degree."""
        if r > self.n:
            return 0
        key = ("rank", r, w)
        if key not in self._cache:
            m = self.augmentation(w) if r == 0 else self.matrix(r, w)
            self._cache[key] = m.rank()
        return self._cache[key]


def build_spencer(spec: SpencerSpec, deadline: Optional[Deadline] = None) -> TruncatedComplex:
    """
    Build the Spencer complex of a pair with coefficients in a connection.

    The differentials are assembled as operator matrices, checked to compose to
    zero, and checked against the augmentation before the complex is returned.
    Truncated matrices are produced lazily per component.

    Parameters:
    spec (SpencerSpec): The request.
    deadline (Deadline): Optional cancellation token.

    Returns:
    TruncatedComplex: The complex.

    Raises:
    InconsistentBasisError: If the structure functions of the basis are not polynomial.
    SpencerError: If graded mode is requested but the operators are not weighted homogeneous.
    """
    d = spec.divisor
    n = d.n
    rank_e = spec.ilc.rank
    sf = structure_functions(spec.basis)
    generators = tuple(tuple(spencer_generators(n, rank_e, r)) for r in range(n + 1))
    operators: List[Tuple[OperatorRow, ...]] = [()]
    for r in range(1, n + 1):
        check_deadline(deadline)
        operators.append(tuple(_differential_rows(spec, sf, r)))

    for r in range(2, n + 1):
        check_deadline(deadline)
        for g, row in enumerate(operators[r]):
            total: Dict[int, WeylOp] = {}
            for h, P in row.items():
                for t, Q in operators[r - 1][h].items():
                    total[t] = total.get(t, WeylOp.zero(n)) + P * Q
            if any(total.values()):
                raise RuntimeError(f"Spencer differentials do not compose to zero at degree {-r}.")

    connection = coordinate_connection(spec.ilc)
    actor = FsActor(d.f, connection)
    for row in operators[1]:
        images = [actor.apply(P, actor.generator(generators[0][h][1]), canonical=False) for h, P in row.items()]
        if not _fs_sum(actor, images).is_zero():
            raise RuntimeError("The augmentation does not vanish on the image of the differential.")

    ops, _ = _lambda_operators(spec)
    x_shift = 0
    if spec.mode == GRADED:
        lambda_weights = []
        for i, op in enumerate(ops):
            found = op.weights(spec.weights)
            if len(found) != 1:
                raise SpencerError(f"Basis element {i} is not weighted homogeneous for the weights {spec.weights}.")
            lambda_weights.append(found.pop())
        generator_weights = tuple(tuple(sum(lambda_weights[i] for i in I) for I, _ in gens) for gens in generators)
        for r in range(1, n + 1):
            for g, row in enumerate(operators[r]):
                for h, P in row.items():
                    expected = generator_weights[r][g] - generator_weights[r - 1][h]
                    if P.weights(spec.weights) != {expected}:
                        raise SpencerError("Connection matrices are not compatible with the weight grading.")
    else:
        generator_weights = tuple(tuple(0 for _ in gens) for gens in generators)
        x_shift = max((P.x_degree() for rows in operators for row in rows for P in row.values()), default=0)
        logger.warning("build_spencer(%s): filtration-mode truncation; homology is evidence only", d)
    logger.debug("build_spencer(%s): pair=%s mode=%s rank=%d", d, spec.pair, spec.mode, rank_e)
    return TruncatedComplex(spec, sf, generators, generator_weights, tuple(operators), x_shift, actor)


def _degree_list(tc: TruncatedComplex, degrees) -> List[int]:
    if degrees is None:
        return list(range(-tc.n, 1))
    out = sorted(set(int(q) for q in degrees))
    for q in out:
        if not -tc.n <= q <= 0:
            raise SpencerError(f"Homological degrees run from {-tc.n} to 0, got {q}.")
    return out


def homology_records(tc: TruncatedComplex, degrees=None, allow_evidence: bool = False,
                     deadline: Optional[Deadline] = None) -> List[Dict[str, object]]:
    """Rows of the homology table; see ``check_exactness``."""
    if tc.mode != GRADED and not allow_evidence:
        raise SpencerError("Filtration-mode truncations cannot certify exactness; pass allow_evidence=True.")
    records = []
    for w in tc.weight_components():
        for q in _degree_list(tc, degrees):
            check_deadline(deadline)
            r = -q
            dimension = len(tc.box(r, w))
            kernel = dimension - tc.rank_of(r, w)
            image = tc.rank_of(r + 1, w)
            records.append({"weight": w, "degree": q, "dimension": dimension, "kernel": kernel,
                            "image": image, "homology": kernel - image, "label": tc.label})
    if tc.mode != GRADED:
        logger.warning("check_exactness: filtration-mode results are evidence, not certificates")
    return records


def check_exactness(tc: TruncatedComplex, degrees=None, backend: str = "polars", allow_evidence: bool = False,
                    deadline: Optional[Deadline] = None) -> DataFrameType:
    """
    Homology dimensions of the truncated complex per weight component and degree.

    In degree -r the homology is dim ker(eps^-r) - rank(eps^-(r+1)); in degree 0
    the kernel is that of the augmentation P (x) e -> P(e f^s). Each graded
    component is a finite complex, so every entry is an exact statement about it.

    Parameters:
    tc (TruncatedComplex): A built complex.
    degrees (iterable): Homological degrees between -n and 0 (default: all).
    backend (str): 'polars' (default) or 'pandas'.
    allow_evidence (bool): Accept a filtration-mode complex; rows are labeled 'evidence'.
    deadline (Deadline): Optional cancellation token.

    Returns:
    pl.DataFrame | pd.DataFrame: Columns weight, degree, dimension, kernel, image, homology, label.

    Raises:
    SpencerError: For filtration-mode complexes unless ``allow_evidence`` is set.
    """
    records = homology_records(tc, degrees, allow_evidence, deadline)
    return to_frame(records, backend, HOMOLOGY_COLUMNS)


def is_exact(tc: TruncatedComplex, degrees=None, allow_evidence: bool = False) -> bool:
    return all(r["homology"] == 0 for r in homology_records(tc, degrees, allow_evidence))


def graded_koszul_check(spec: SpencerSpec, deadline: Optional[Deadline] = None) -> bool:
    """
    True iff the symbols of the pair's generators form a regular sequence.

    Theta pair: the symbols sum_j a_ij xi_j - alpha_i s in Q[x, s, xi]. Logarithmic
    pair: the symbols sum_j a_ij xi_j, i.e. the divisor is Koszul free.
    """
    if spec.pair == THETA_PAIR:
        return theta_koszul_check(spec.divisor, spec.basis, deadline)
    return is_koszul_free(spec.divisor, spec.basis, deadline)


@dataclass(frozen=True)
class SpecializationReport:
    """
    Comparison at s = -k of the specialized kernel with the kernel of P -> P(e f^-k).

    ``promised`` is True when k is at or above the threshold, where equality is
    expected in every component; ``violations`` lists the components where it failed.
    """
    k: int
    threshold: Optional[Union[int, float]]
    promised: bool
    records: Tuple[Dict[str, object], ...]
    violations: Tuple[Optional[int], ...]
    label: str

    @property
    def all_equal(self) -> bool:
        return all(r["equal"] for r in self.records)

    @property
    def all_segments_exact(self) -> bool:
        return all(r["segment_exact"] for r in self.records)

    def table(self, backend: str = "polars") -> DataFrameType:
        return to_frame(list(self.records), backend, SPECIALIZATION_COLUMNS)

    def to_dict(self) -> Dict[str, object]:
        threshold = None if self.threshold is None or self.threshold == -math.inf else self.threshold
        return {"k": self.k, "threshold": threshold, "promised": self.promised, "label": self.label,
                "all_equal": self.all_equal, "all_segments_exact": self.all_segments_exact,
                "violations": list(self.violations), "components": list(self.records)}


def _specialized_component(tc: TruncatedComplex, w: Optional[int], k: int) -> Dict[str, object]:
    rho = tc.augmentation(w)
    kernel = left_kernel(rho.rows)
    d_box = {e: i for i, e in enumerate(tc.box(0, w, with_s=False))}
    phi_rows = []
    for vector in kernel:
        row: Dict[int, object] = {}
        for index, coeff in vector.items():
            g, m = rho.row_labels[index]
            col = d_box[(g, m[:-1] + (0,))]
            row[col] = row.get(col, 0) + coeff * (-k) ** m[-1]
        phi_rows.append(row)
    phi_image = rank(phi_rows)
    rho_k = tc.augmentation(w, k)
    kernel_k = len(rho_k.rows) - rho_k.rank()
    image_k = rank(tc._differential(1, w, k))
    return {"weight": w, "k": k, "phi_image": phi_image, "kernel_k": kernel_k, "image_k": image_k,
            "equal": phi_image == kernel_k, "segment_exact": image_k == kernel_k, "label": tc.label}


def specialize_and_check(tc: TruncatedComplex, k: int, threshold: Optional[Union[int, float]] = None,
                         deadline: Optional[Deadline] = None) -> SpecializationReport:
    """
    Specialize s to -k and compare kernels per component.

    For every component, computes the image under s -> -k of the kernel of the
    augmentation on D[s] (x) E, the kernel of P (x) e -> P(e f^-k) on D (x) E,
    and the image of the specialized differential from degree -1.

    Parameters:
    tc (TruncatedComplex): A built complex.
    k (int): The integer with s = -k.
    threshold (int | float): k0 from ``lct_threshold`` of the b-function of E;
        -inf means every k >= 0 qualifies. None promises nothing.
    deadline (Deadline): Optional cancellation token.

    Returns:
    SpecializationReport: Per-component counts and the list of violations.
    """
    if not isinstance(k, int):
        raise TypeError("k must be an integer.")
    promised = threshold is not None and k >= max(threshold, 0)
    records = []
    for w in tc.weight_components():
        check_deadline(deadline)
        records.append(_specialized_component(tc, w, k))
    violations = tuple(r["weight"] for r in records if promised and not r["equal"])
    if violations:
        logger.warning("specialize_and_check(k=%d): kernels differ in components %s above the threshold",
                       k, list(violations))
    return SpecializationReport(k, threshold, promised, tuple(records), violations, tc.label)


def _format_matrix(m: SparseMatrix) -> List[str]:
    return [" ".join(rational_str(c) if c else "0" for c in line) for line in m.dense()]


def export_complex(tc: TruncatedComplex, components: Optional[Sequence[Optional[int]]] = None) -> str:
    """
    Plain-text dump of the truncated matrices.

    Header lines give the pair, mode, weights, rank and truncation bounds; each
    block starts with 'matrix weight=<w> degree=<q> rows=<R> cols=<C>' followed
    by R lines of C space-separated rationals in row-major order. Degree 0 blocks
    ('augmentation ...') hold the augmentation in coordinates over f^N.
    """
    spec = tc.spec
    weights = " ".join(str(w) for w in spec.weights) if spec.weights else "none"
    lines = [
        "logdiv-spencer 1",
        f"divisor {spec.divisor}",
        f"variables {' '.join(spec.divisor.variables)}",
        f"pair {spec.pair}",
        f"mode {spec.mode}",
        f"weights {weights}",
        f"rank {spec.ilc.rank}",
        f"bounds W={spec.weight_bound} N={spec.order_bound} M={spec.x_degree_bound}",
    ]
    for w in (components if components is not None else tc.weight_components()):
        for r in range(tc.n, -1, -1):
            m = tc.augmentation(w) if r == 0 else tc.matrix(r, w)
            kind = "augmentation" if r == 0 else "matrix"
            rows, cols = m.shape
            lines.append(f"{kind} weight={'none' if w is None else w} degree={-r} rows={rows} cols={cols}")
            lines.extend(_format_matrix(m))
    return "\n".join(lines) + "\n"
