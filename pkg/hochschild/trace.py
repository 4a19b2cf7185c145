# hochschild/trace.py

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from hochschild.associative import AssociativeAlgebra
from hochschild.complexes import TensorSpace, TensorVector, hochschild_complex, _accumulate, _check_variant
from linalg.complex import induced_map_on_homology
from linalg.sparse import SparseMatrix
from linfty.ce import CEComplex
from linfty.structure import from_associative
from utils.exceptions import CertificateError, InputValidationError
from utils.logger import get_logger
from utils.permutations import permutation_sign
from utils.rationals import format_rational

logger = get_logger(__name__)


def antisymmetrize(vectors: Sequence[Mapping[int, Fraction]]) -> TensorVector:
    """sum over permutations of sgn(sigma) a_sigma(1) | ... | a_sigma(k), expanded multilinearly."""
    out: TensorVector = {}
    k = len(vectors)
    for sigma in permutations(range(k)):
        sign = permutation_sign(sigma)
        partial: TensorVector = {(): Fraction(sign)}
        for position in sigma:
            grown: TensorVector = {}
            for prefix, c in partial.items():
                for i, a in vectors[position].items():
                    _accumulate(grown, prefix + (i,), c * Fraction(a))
            partial = grown
        for key, c in partial.items():
            _accumulate(out, key, c)
    return out


@dataclass(frozen=True)
class TraceWitness:
    element: str
    boundary_image: Dict[str, str]
    ce_image: Dict[str, str]


@dataclass(frozen=True)
class DegreeVerdict:
    k: int
    status: str  # proportional | vacuous | failed
    ratio: Optional[Fraction] = None
    witness: Optional[TraceWitness] = None


@dataclass
class TraceCertificate:
    algebra: str
    variant: str
    max_degree: int
    verdicts: List[DegreeVerdict] = field(default_factory=list)
    normalization: Dict[int, Fraction] = field(default_factory=dict)

    @property
    def success(self) -> bool:
        return all(v.status != "failed" for v in self.verdicts)

    @property
    def failing_degree(self) -> Optional[int]:
        return next((v.k for v in self.verdicts if v.status == "failed"), None)

    def render(self) -> str:
        lines = [f"trace certificate: algebra={self.algebra} variant={self.variant} max_degree={self.max_degree}"]
        for v in self.verdicts:
            if v.status == "proportional":
                lines.append(f"k={v.k}: proportional, ratio {format_rational(v.ratio)}")
            elif v.status == "vacuous":
                lines.append(f"k={v.k}: vacuous (both maps vanish)")
            else:
                lines.append(f"k={v.k}: FAILED at {v.witness.element}")
                lines.append(f"  b(eps): {_render_vector(v.witness.boundary_image)}")
                lines.append(f"  eps(d): {_render_vector(v.witness.ce_image)}")
        if self.success:
            norms = ", ".join(f"c_{k}={format_rational(c)}" for k, c in sorted(self.normalization.items()))
            lines.append(f"normalization: {norms}")
        else:
            lines.append(f"status: failed at degree {self.failing_degree}")
        return "\n".join(lines)


def _render_vector(vector: Mapping[str, str]) -> str:
    return " + ".join(f"{c}*[{label}]" for label, c in vector.items()) or "0"


class TraceMaps:
    """
    The antisymmetrization maps eps_k from the Chevalley-Eilenberg chains of
    the commutator Lie algebra into degree k-1 of a Hochschild-type complex.
    """

    def __init__(self, A: AssociativeAlgebra, max_degree: int, variant: str, max_basis: Optional[int] = None):
        _check_variant(variant)
        self.algebra = A
        self.variant = variant
        self.max_degree = max_degree
        self.ce = CEComplex(from_associative(A), max_degree, max_basis=max_basis)
        self.target, self.spaces = hochschild_complex(A, max_degree, variant, max_basis)

    def wedge_basis(self, k: int):
        return self.ce.basis.get(-k, [])

    def wedge_label(self, k: int, j: int) -> str:
        word = self.wedge_basis(k)[j]
        return "^".join(self.algebra.names[i] for i in word.odd_indices(self.ce.letters))

    def epsilon(self, k: int) -> SparseMatrix:
        """eps_k: Lambda^k A -> degree k-1 chains."""
        space: TensorSpace = self.spaces[k - 1]
        columns = []
        for word in self.wedge_basis(k):
            vectors = [{i: Fraction(1)} for i in word.odd_indices(self.ce.letters)]
            columns.append(space.project(antisymmetrize(vectors)))
        return SparseMatrix.from_columns(len(space), columns)

    def ce_differential(self, k: int) -> SparseMatrix:
        """d_CE: Lambda^k A -> Lambda^(k-1) A."""
        return self.ce.complex.differential(-k)

    def boundary(self, m: int) -> SparseMatrix:
        """b: degree m -> degree m-1 of the target."""
        return self.target.differential(-m)


def _first_nonzero(m: SparseMatrix) -> Optional[Tuple[int, int]]:
    if m.is_zero():
        return None
    return min(m.entries, key=lambda key: (key[1], key[0]))


def _compare(maps: TraceMaps, k: int) -> DegreeVerdict:
    P = maps.boundary(k - 1) @ maps.epsilon(k)
    Q = maps.epsilon(k - 1) @ maps.ce_differential(k)
    if P.is_zero() and Q.is_zero():
        return DegreeVerdict(k, "vacuous")
    ratio = None
    pivot = _first_nonzero(Q)
    if pivot is not None:
        ratio = P.entries.get(pivot, Fraction(0)) / Q.entries[pivot]
    if ratio and (P - Q.scale(ratio)).is_zero():
        return DegreeVerdict(k, "proportional", ratio)

    if ratio:
        j = min(col for (_, col) in (P - Q.scale(ratio)).entries)
    else:
        j = min(col for (_, col) in (P.entries if not P.is_zero() else Q.entries))
    labels = maps.spaces[k - 2].labels()
    witness = TraceWitness(
        element=maps.wedge_label(k, j),
        boundary_image={labels[i]: format_rational(v) for i, v in sorted(P.column(j).items())},
        ce_image={labels[i]: format_rational(v) for i, v in sorted(Q.column(j).items())},
    )
    logger.info(f"Trace certificate fails in degree {k} at {witness.element}")
    return DegreeVerdict(k, "failed", witness=witness)


def certify_chain_map(
    A: AssociativeAlgebra,
    max_degree: int,
    variant: str = "standard",
    name: str = "A",
    max_basis: Optional[int] = None,
) -> TraceCertificate:
    """
    For 2 <= k <= max_degree decides whether b o eps_k and eps_(k-1) o d_CE
    are proportional; on total success c_k = c_(k-1) / r_k with c_1 = 1.
    """
    if max_degree < 2:
        raise InputValidationError(f"Certification needs max degree at least 2, got {max_degree}")
    maps = TraceMaps(A, max_degree, variant, max_basis)
    certificate = TraceCertificate(name, variant, max_degree)
    c = Fraction(1)
    normalization = {1: c}
    for k in range(2, max_degree + 1):
        verdict = _compare(maps, k)
        certificate.verdicts.append(verdict)
        if verdict.status == "proportional":
            c = c / verdict.ratio
        normalization[k] = c
    if certificate.success:
        certificate.normalization = normalization
    return certificate


@dataclass(frozen=True)
class InducedComponent:
    k: int
    source_dim: int
    target_dim: int
    rank: int
    matrix: SparseMatrix


def induced_homology_map(
    A: AssociativeAlgebra,
    max_degree: int,
    variant: str,
    certificate: TraceCertificate,
    max_basis: Optional[int] = None,
) -> List[InducedComponent]:
    """Rank of H_k(CE) -> HH_(k-1) induced by c_k eps_k for 1 <= k < max_degree."""
    if not certificate.success:
        raise CertificateError(certificate.failing_degree, details="induced map needs a successful certificate")
    if certificate.max_degree < max_degree or certificate.variant != variant:
        raise CertificateError(
            max_degree,
            details=f"certificate covers {certificate.variant} up to degree {certificate.max_degree}",
        )
    maps = TraceMaps(A, max_degree, variant, max_basis)
    components = []
    for k in range(1, max_degree):
        T = maps.epsilon(k).scale(certificate.normalization[k])
        induced = induced_map_on_homology(
            T,
            maps.ce_differential(k),
            maps.ce_differential(k + 1),
            maps.boundary(k - 1),
            maps.boundary(k),
        )
        components.append(InducedComponent(k, induced.source_dim, induced.target_dim, induced.rank, induced.matrix))
    return components
