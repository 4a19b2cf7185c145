# curvature/model.py

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from algebra.graded import AlgebraElement, Generator, GradedSpace, Monomial
from algebra.symmetric import check_window_finiteness, multiplication_operator, symmetric_basis
from curvature.paired import ManifoldData, PairedSpace, Regrading
from linalg.complex import ChainComplex, homology_dims
from linalg.sparse import SparseMatrix, rank
from utils.config import get_settings
from utils.exceptions import DegreeBookkeepingError, GuardRailError, InputValidationError
from utils.logger import get_logger

logger = get_logger(__name__)

CONVENTIONS = [
    "W generator v^ (x) h has natural degree -|v| + |h| (homology negatively graded)",
    "cohomological degree = alpha * natural + beta, alpha odd, beta even, so parity is kept",
    "alpha * (pair degree sum) + 2 * beta = 1 puts the curvature element in degree +1",
    "curvature element = sum over i<j of K_ij w_i w_j with K = q^-1 (x) Poincare pairing",
    "cohomological degree d corresponds to homological degree -d",
]


def _odd_alphas(limit: int):
    yield 1
    a = 1
    while a <= limit:
        yield -a
        a += 2
        yield a


def _is_exact(degrees: List[int], parities: List[bool]) -> bool:
    evens = [d for d, odd in zip(degrees, parities) if not odd]
    if any(d == 0 for d in evens):
        return False
    return len({d > 0 for d in evens}) <= 1


def build_W(V: PairedSpace, M: ManifoldData) -> PairedSpace:
    """
    W = V^ (x) H_*(M) regraded so that the pairing q^-1 (x) Poincare defines a
    curvature element of cohomological degree +1.
    """
    H = M.homology
    q_inverse = V.inverse()
    P = H.pairing
    v_gens, h_gens = V.space.generators, H.space.generators
    names, natural = [], []
    for v in v_gens:
        for h in h_gens:
            names.append(f"{v.name}@{h.name}")
            natural.append(-v.degree + h.degree)
    size = len(names)
    nh = len(h_gens)
    K = [[Fraction(0)] * size for _ in range(size)]
    for a in range(len(v_gens)):
        for b in range(len(v_gens)):
            if not q_inverse[a][b]:
                continue
            for i in range(nh):
                for j in range(nh):
                    if P[i][j]:
                        K[a * nh + i][b * nh + j] = q_inverse[a][b] * P[i][j]

    pairs = [(x, y) for x in range(size) for y in range(size) if K[x][y]]
    for x, y in pairs:
        if (natural[x] - natural[y]) % 2 == 0:
            raise DegreeBookkeepingError(
                "Paired generators have the same parity, so the curvature element would be even",
                details=f"{names[x]} and {names[y]} in natural degrees {natural[x]}, {natural[y]}",
            )
    if V.degree != -(M.n + 1):
        raise DegreeBookkeepingError(
            f"q must have degree -(n+1) = {-(M.n + 1)}",
            details=f"got {V.degree}",
        )
    sums = {natural[x] + natural[y] for x, y in pairs}
    if len(sums) != 1:
        raise DegreeBookkeepingError("Paired generators do not share one degree sum", details=str(sorted(sums)))
    sigma = sums.pop()

    parities = [d % 2 == 1 for d in natural]
    chosen: Optional[Tuple[int, int, bool]] = None
    for alpha in _odd_alphas(4 * abs(sigma) + 4):
        if (1 - alpha * sigma) % 4 != 0:
            continue
        beta = (1 - alpha * sigma) // 2
        degrees = [alpha * d + beta for d in natural]
        exact = _is_exact(degrees, parities)
        if chosen is None:
            chosen = (alpha, beta, exact)
        if exact:
            chosen = (alpha, beta, True)
            break
    alpha, beta, exact = chosen
    degrees = [alpha * d + beta for d in natural]
    logger.info(f"Regrading alpha={alpha} beta={beta} (pair sum {sigma}, exact={exact})")

    space = GradedSpace(tuple(Generator(name, d) for name, d in zip(names, degrees)))
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for x in range(size):
        for y in range(x + 1, size):
            if K[x][y]:
                matrix[x][y] = K[x][y]
                matrix[y][x] = K[x][y] * (-1) ** ((degrees[x] * degrees[y]) % 2)
    regrading = Regrading(alpha, beta, sigma, tuple(natural), exact)
    return PairedSpace(space, matrix, -1, 1, regrading)


def curvature_element(W: PairedSpace) -> AlgebraElement:
    """omega = sum over i<j of <w_i, w_j> w_i w_j."""
    n = len(W.space)
    terms = {}
    for i in range(n):
        for j in range(i + 1, n):
            if W.pairing[i][j]:
                exponents = [0] * n
                exponents[i] += 1
                exponents[j] += 1
                terms[Monomial(tuple(exponents))] = W.pairing[i][j]
    return AlgebraElement(W.space, terms)


def predicted_location(W: PairedSpace) -> int:
    """Sum of the odd generators' degrees."""
    return sum(g.degree for g in W.space.generators if g.odd)


def exact_window(W: PairedSpace) -> Tuple[int, int]:
    """Interior [L - span, L + span] around the predicted location, padded by one degree."""
    location = predicted_location(W)
    span = sum(abs(g.degree) for g in W.space.generators) + 2
    return (location - span - 1, location + span + 1)


def _curvature_basis(W: PairedSpace, cutoff: Optional[int], max_basis: Optional[int]) -> Dict[int, List[Monomial]]:
    if cutoff is None:
        check_window_finiteness(W.space)
        basis = symmetric_basis(W.space, window=exact_window(W))
    else:
        basis = symmetric_basis(W.space, cutoff=cutoff)
    size = sum(len(v) for v in basis.values())
    if max_basis is not None and size > max_basis:
        raise GuardRailError(f"Curvature complex has {size} monomials, limit is {max_basis}")
    return basis


def curvature_complex(W: PairedSpace, cutoff: Optional[int] = None, max_basis: Optional[int] = None) -> ChainComplex:
    """
    Multiplication by omega on the free graded-commutative algebra on W:
    per-degree exact on a window when the even generators allow it,
    otherwise truncated to words of length <= cutoff.
    """
    basis = _curvature_basis(W, cutoff, max_basis)
    return multiplication_operator(
        curvature_element(W), basis, truncate=cutoff is not None, complete_below=False, complete_above=False
    )


def homology_by_length(complex_: ChainComplex, basis: Dict[int, List[Monomial]]) -> Dict[Tuple[int, int], int]:
    """
    Cohomology split by (degree, word length). omega is quadratic, so the
    differential sends length l to length l + 2 and the complex splits
    into one summand per (degree, length) pair.
    """
    blocks: Dict[Tuple[int, int], List[int]] = {}
    for d in sorted(basis):
        for j, m in enumerate(basis[d]):
            blocks.setdefault((d, m.length), []).append(j)

    def block_rank(d: int, length: int) -> int:
        columns = blocks.get((d, length))
        if not columns:
            return 0
        D = complex_.differential(d)
        return rank(SparseMatrix.from_columns(D.rows, [D.column(j) for j in columns]))

    return {
        (d, length): len(columns) - block_rank(d, length) - block_rank(d - 1, length - 2)
        for (d, length), columns in sorted(blocks.items())
    }


def reliable_cohomology(W: PairedSpace, cutoff: int, max_basis: Optional[int] = None) -> Dict[int, int]:
    """
    Nonzero cohomology dims of the cutoff complex counted only on words of
    length <= cutoff - 2. Longer words lose their image under truncation.
    """
    basis = _curvature_basis(W, cutoff, max_basis)
    complex_ = multiplication_operator(
        curvature_element(W), basis, truncate=True, complete_below=False, complete_above=False
    )
    dims: Dict[int, int] = {}
    for (d, length), h in homology_by_length(complex_, basis).items():
        if h and length <= cutoff - 2:
            dims[d] = dims.get(d, 0) + h
    return dict(sorted(dims.items()))


@dataclass
class CurvatureReport:
    regime: str  # exact | cutoff
    status: str  # exact | stabilized | inconclusive
    dims: Dict[int, int]
    total: int
    location: Optional[int]
    predicted_location: int
    alpha: int
    beta: int
    generators: List[Tuple[str, int]]
    window: Optional[Tuple[int, int]] = None
    cutoffs: Optional[Tuple[int, int]] = None
    reliable_length: Optional[int] = None  # longest word length counted in the cutoff regime
    conventions: List[str] = field(default_factory=lambda: list(CONVENTIONS))

    @property
    def homological_location(self) -> Optional[int]:
        return None if self.location is None else -self.location

    @property
    def one_dimensional(self) -> bool:
        return self.status in ("exact", "stabilized") and self.total == 1


def verify_one_dimensional(
    V: PairedSpace,
    M: ManifoldData,
    cutoff: Optional[int] = None,
    max_basis: Optional[int] = None,
) -> CurvatureReport:
    """Total cohomology of the curvature complex, its location and how exact the count is."""
    W = build_W(V, M)
    regrading = W.regrading
    generators = [(g.name, g.degree) for g in W.space.generators]
    predicted = predicted_location(W)

    if regrading.exact and cutoff is None:
        complex_ = curvature_complex(W, max_basis=max_basis)
        dims = homology_dims(complex_).exact()
        window = exact_window(W)
        regime, status, cutoffs = "exact", "exact", None
        reliable_length = None
    else:
        K = cutoff if cutoff is not None else get_settings().curvature_cutoff
        if K < 2:
            raise InputValidationError("Curvature cutoff must be at least 2", details=f"got {K}")
        first = reliable_cohomology(W, K, max_basis)
        second = reliable_cohomology(W, K + 2, max_basis)
        dims = second
        regime, window, cutoffs = "cutoff", None, (K, K + 2)
        reliable_length = K
        status = "stabilized" if first == second else "inconclusive"
        if status == "inconclusive":
            logger.warning(f"Curvature cohomology did not stabilize between cutoffs {K} and {K + 2}")

    nonzero = {d: v for d, v in sorted(dims.items()) if v}
    total = sum(nonzero.values())
    location = next(iter(nonzero)) if total == 1 else None
    logger.info(f"Curvature cohomology total {total} at {location} ({status})")
    return CurvatureReport(
        regime=regime,
        status=status,
        dims=nonzero,
        total=total,
        location=location,
        predicted_location=predicted,
        alpha=regrading.alpha,
        beta=regrading.beta,
        generators=generators,
        window=window,
        cutoffs=cutoffs,
        reliable_length=reliable_length,
    )
