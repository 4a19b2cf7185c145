# hochschild/associative.py

from fractions import Fraction
from itertools import product
from typing import Dict, Mapping, Optional, Sequence, Tuple

from linalg.sparse import invert
from utils.exceptions import AssociativityError, InputValidationError
from utils.logger import get_logger

logger = get_logger(__name__)

Vector = Dict[int, Fraction]


def _accumulate(target: Vector, vector: Mapping[int, Fraction], factor=1):
    for k, v in vector.items():
        value = target.get(k, Fraction(0)) + factor * v
        if value:
            target[k] = value
        else:
            target.pop(k, None)


class AssociativeAlgebra:
    """
    Finite-dimensional unital algebra given by structure constants
    e_i * e_j = sum_k c(i, j, k) e_k. Associativity and the unit laws are
    checked on construction.
    """

    def __init__(
        self,
        names: Sequence[str],
        unit: Mapping[int, Fraction],
        structure: Mapping[Tuple[int, int], Mapping[int, Fraction]],
    ):
        self.names = tuple(str(name) for name in names)
        if len(set(self.names)) != len(self.names):
            raise InputValidationError("Basis names must be unique", details=str(self.names))
        self.dim = len(self.names)
        for key in structure:
            if not all(0 <= x < self.dim for x in key):
                raise InputValidationError("Structure constant index out of range", details=str(key))
        self.unit: Vector = {i: Fraction(v) for i, v in unit.items() if v}
        self._table: Dict[Tuple[int, int], Vector] = {}
        for (i, j), image in structure.items():
            value = {k: Fraction(v) for k, v in image.items() if v}
            if any(not 0 <= k < self.dim for k in value):
                raise InputValidationError("Structure constant index out of range", details=str((i, j)))
            if value:
                self._table[(i, j)] = value
        self._check_unit()
        self._check_associative()

    def product_of(self, i: int, j: int) -> Vector:
        return dict(self._table.get((i, j), {}))

    def multiply(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                _accumulate(out, self._table.get((i, j), {}), a * b)
        return out

    def commutator(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Vector:
        out = self.multiply(x, y)
        _accumulate(out, self.multiply(y, x), -1)
        return out

    def is_commutative(self) -> bool:
        return all(self.product_of(i, j) == self.product_of(j, i) for i in range(self.dim) for j in range(i + 1, self.dim))

    def _check_unit(self):
        if not self.unit and self.dim:
            raise AssociativityError("Algebra has no unit", witness=())
        for j in range(self.dim):
            e = {j: Fraction(1)}
            if self.multiply(self.unit, e) != e or self.multiply(e, self.unit) != e:
                raise AssociativityError("Unit law fails", witness=(self.names[j],))

    def _check_associative(self):
        for i, j, k in product(range(self.dim), repeat=3):
            left = self.multiply(self.product_of(i, j), {k: Fraction(1)})
            right = self.multiply({i: Fraction(1)}, self.product_of(j, k))
            if left != right:
                witness = (self.names[i], self.names[j], self.names[k])
                logger.warning(f"Associativity fails on {witness}")
                raise AssociativityError(witness=witness)

    def change_basis(self, matrix: Sequence[Sequence], names: Optional[Sequence[str]] = None) -> "AssociativeAlgebra":
        """
        The same algebra in the basis f_j = sum_i matrix[i][j] e_i.
        """
        try:
            inverse = invert(matrix)
        except ValueError as e:
            raise InputValidationError("Change of basis must be invertible", original_exception=e)
        n = self.dim
        columns = [{i: Fraction(matrix[i][j]) for i in range(n) if matrix[i][j]} for j in range(n)]

        def to_new(vector: Mapping[int, Fraction]) -> Vector:
            out: Vector = {}
            for i, v in vector.items():
                for a in range(n):
                    if inverse[a][i]:
                        _accumulate(out, {a: inverse[a][i] * v})
            return out

        structure = {}
        for a, b in product(range(n), repeat=2):
            image = to_new(self.multiply(columns[a], columns[b]))
            if image:
                structure[(a, b)] = image
        return AssociativeAlgebra(names or [f"f{j + 1}" for j in range(n)], to_new(self.unit), structure)

    @classmethod
    def ground_field(cls) -> "AssociativeAlgebra":
        return cls(["1"], {0: 1}, {(0, 0): {0: 1}})

    @classmethod
    def truncated_polynomial(cls, k: int) -> "AssociativeAlgebra":
        """Q[x]/(x^k) in the basis 1, x, ..., x^(k-1)."""
        if k < 1:
            raise InputValidationError(f"Truncation order must be at least 1, got {k}")
        names = ["1"] + [("x" if p == 1 else f"x^{p}") for p in range(1, k)]
        structure = {(i, j): {i + j: 1} for i in range(k) for j in range(k) if i + j < k}
        return cls(names, {0: 1}, structure)

    @classmethod
    def from_matrices(cls, n: int) -> "AssociativeAlgebra":
        """The full matrix algebra M_n(Q) in the basis of elementary matrices E_ij."""
        cells = [(i, j) for i in range(n) for j in range(n)]
        index = {cell: p for p, cell in enumerate(cells)}
        structure = {}
        for (i, j), (k, l) in product(cells, repeat=2):
            if j == k:
                structure[(index[(i, j)], index[(k, l)])] = {index[(i, l)]: 1}
        unit = {index[(i, i)]: 1 for i in range(n)}
        return cls([f"E{i + 1}{j + 1}" for i, j in cells], unit, structure)

    @classmethod
    def upper_triangular(cls, n: int) -> "AssociativeAlgebra":
        cells = [(i, j) for i in range(n) for j in range(i, n)]
        index = {cell: p for p, cell in enumerate(cells)}
        structure = {}
        for (i, j), (k, l) in product(cells, repeat=2):
            if j == k:
                structure[(index[(i, j)], index[(k, l)])] = {index[(i, l)]: 1}
        unit = {index[(i, i)]: 1 for i in range(n)}
        return cls([f"E{i + 1}{j + 1}" for i, j in cells], unit, structure)

    def __repr__(self) -> str:
        return f"AssociativeAlgebra(dim={self.dim}, basis={list(self.names)})"
