# hochschild/complexes.py

from fractions import Fraction
from itertools import product
from typing import Dict, List, Mapping, Optional, Tuple

from hochschild.associative import AssociativeAlgebra
from linalg.complex import ChainComplex, HomologyDims, homology_dims
from linalg.sparse import SparseMatrix
from utils.exceptions import GuardRailError, InputValidationError
from utils.logger import get_logger

logger = get_logger(__name__)

VARIANTS = ("standard", "cyclic-quotient")

Tensor = Tuple[int, ...]
TensorVector = Dict[Tensor, Fraction]


def _accumulate(target: TensorVector, key: Tensor, value: Fraction):
    total = target.get(key, Fraction(0)) + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


def _check_variant(variant: str):
    if variant not in VARIANTS:
        raise InputValidationError(f"Unknown Hochschild variant '{variant}'", details=f"expected one of {VARIANTS}")


def hochschild_boundary(A: AssociativeAlgebra, tensor: Tensor) -> TensorVector:
    """
    b(a_0 | ... | a_m) = sum_{i<m} (-1)^i (.. | a_i a_{i+1} | ..) + (-1)^m (a_m a_0 | a_1 | .. | a_{m-1}).
    """
    m = len(tensor) - 1
    out: TensorVector = {}
    if m == 0:
        return out
    for i in range(m):
        sign = -1 if i % 2 else 1
        for k, c in A.product_of(tensor[i], tensor[i + 1]).items():
            _accumulate(out, tensor[:i] + (k,) + tensor[i + 2:], sign * c)
    sign = -1 if m % 2 else 1
    for k, c in A.product_of(tensor[m], tensor[0]).items():
        _accumulate(out, (k,) + tensor[1:m], sign * c)
    return out


class TensorSpace:
    """Degree-m chains: A^(m+1) in the standard variant, its quotient by (1 - t) in the cyclic one."""

    def __init__(self, A: AssociativeAlgebra, m: int, variant: str):
        _check_variant(variant)
        self.algebra = A
        self.m = m
        self.variant = variant
        tensors = list(product(range(A.dim), repeat=m + 1))
        if variant == "standard":
            self.basis: List[Tensor] = tensors
            self._classes = None
        else:
            self.basis, self._classes = self._orbits(tensors)
        self._index = {u: i for i, u in enumerate(self.basis)}

    def _orbits(self, tensors: List[Tensor]):
        """
        Rotation orbits; [r^j u] = (-1)^(m j) [u] with u the minimal rotation.
        Orbits whose stabilizer forces a sign -1 vanish in the quotient.
        """
        m = self.m
        classes: Dict[Tensor, Optional[Tuple[Tensor, int]]] = {}
        reps = []
        for u in tensors:
            if u in classes:
                continue
            rotations = [u[len(u) - j:] + u[:len(u) - j] for j in range(m + 1)]
            rep = min(rotations)
            j0 = rotations.index(rep)
            zero = any(
                rotations[j] == rep and (m * (j - j0)) % 2 == 1 for j in range(m + 1)
            )
            for j, w in enumerate(rotations):
                if w in classes:
                    continue
                if zero:
                    classes[w] = None
                else:
                    # w = r^(j - j0) rep
                    sign = -1 if (m * (j - j0)) % 2 else 1
                    classes[w] = (rep, sign)
            if not zero:
                reps.append(rep)
        return sorted(reps), classes

    def __len__(self) -> int:
        return len(self.basis)

    def index_of(self, tensor: Tensor) -> int:
        return self._index[tensor]

    def labels(self) -> List[str]:
        names = self.algebra.names
        return ["|".join(names[x] for x in u) for u in self.basis]

    def project(self, vector: Mapping[Tensor, Fraction]) -> Dict[int, Fraction]:
        """Coordinates of a combination of tensors in this space's basis."""
        out: Dict[int, Fraction] = {}
        for u, c in vector.items():
            if self._classes is None:
                key, sign = u, 1
            else:
                found = self._classes.get(u)
                if found is None:
                    continue
                key, sign = found
            i = self._index[key]
            value = out.get(i, Fraction(0)) + sign * c
            if value:
                out[i] = value
            else:
                out.pop(i, None)
        return out


def _check_size(A: AssociativeAlgebra, m_max: int, max_basis: Optional[int]):
    if max_basis is not None and A.dim ** (m_max + 1) > max_basis:
        raise GuardRailError(
            f"Hochschild chains in degree {m_max} have dimension {A.dim ** (m_max + 1)}, limit is {max_basis}"
        )


def hochschild_complex(A: AssociativeAlgebra, m_max: int, variant: str = "standard", max_basis: Optional[int] = None):
    """
    Degrees 0..m_max stored cohomologically at -m; the bottom degree is
    flagged since b out of degree m_max + 1 is not stored.
    """
    _check_variant(variant)
    if m_max < 1:
        raise InputValidationError(f"Hochschild cutoff must be at least 1, got {m_max}")
    _check_size(A, m_max, max_basis)
    spaces = {m: TensorSpace(A, m, variant) for m in range(m_max + 1)}
    differentials = {}
    for m in range(1, m_max + 1):
        source, target = spaces[m], spaces[m - 1]
        entries = {}
        for j, u in enumerate(source.basis):
            for i, c in target.project(hochschild_boundary(A, u)).items():
                entries[(i, j)] = c
        differentials[-m] = SparseMatrix(len(target), len(source), entries)
    complex_ = ChainComplex(
        {-m: spaces[m].labels() for m in spaces},
        differentials,
        complete_below=False,
    )
    logger.info(f"Hochschild complex ({variant}) of {A!r} up to degree {m_max}")
    return complex_, spaces


def cyclic_operator(A: AssociativeAlgebra, m: int) -> SparseMatrix:
    """t(a_0 | ... | a_m) = (-1)^m (a_m | a_0 | ... | a_{m-1}) on A^(m+1)."""
    space = TensorSpace(A, m, "standard")
    sign = -1 if m % 2 else 1
    entries = {}
    for j, u in enumerate(space.basis):
        rotated = (u[-1],) + u[:-1]
        entries[(space.index_of(rotated), j)] = sign
    return SparseMatrix(len(space), len(space), entries)


def hochschild_homology(A: AssociativeAlgebra, m_max: int, variant: str = "standard", max_basis: Optional[int] = None) -> HomologyDims:
    """HH_m for m <= m_max keyed by homological degree; m_max is flagged."""
    complex_, _ = hochschild_complex(A, m_max, variant, max_basis)
    return homology_dims(complex_).negated()
