# curvature/paired.py

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from algebra.graded import GradedSpace
from linalg.sparse import invert
from utils.exceptions import PairingError


@dataclass(frozen=True)
class Regrading:
    """How natural degrees were turned into cohomological ones: c = alpha * natural + beta."""
    alpha: int
    beta: int
    pair_sum: int
    natural_degrees: Tuple[int, ...]
    exact: bool


@dataclass(frozen=True)
class PairedSpace:
    """
    Graded space with a perfect bilinear pairing of the given degree:
    <x, y> = 0 unless |x| + |y| + degree = 0, and
    <x, y> = symmetry * (-1)^{|x||y|} <y, x>.

    symmetry +1 is graded symmetry; -1 declares the opposite sign.
    """
    space: GradedSpace
    pairing: Tuple[Tuple[Fraction, ...], ...]
    degree: int
    symmetry: int = 1
    regrading: Optional[Regrading] = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.space)
        matrix = tuple(tuple(Fraction(x) for x in row) for row in self.pairing)
        object.__setattr__(self, "pairing", matrix)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise PairingError("Pairing matrix must be square of the space's dimension", details=f"dimension {n}")
        if self.symmetry not in (1, -1):
            raise PairingError(f"Symmetry sign must be +1 or -1, got {self.symmetry}")
        degrees = self.space.degrees()
        names = [g.name for g in self.space.generators]
        for i in range(n):
            for j in range(n):
                value = matrix[i][j]
                if value and degrees[i] + degrees[j] + self.degree != 0:
                    raise PairingError(
                        f"Pairing of degree {self.degree} cannot pair {names[i]} with {names[j]}",
                        details=f"degrees {degrees[i]} and {degrees[j]}",
                    )
                sign = self.symmetry * (-1) ** ((degrees[i] * degrees[j]) % 2)
                if value != sign * matrix[j][i]:
                    raise PairingError("Pairing is not graded symmetric", details=f"entries ({names[i]}, {names[j]})")
        try:
            invert(matrix)
        except ValueError as e:
            raise PairingError("Pairing is not perfect", details=str(e))

    def inverse(self) -> List[List[Fraction]]:
        return invert(self.pairing)

    @property
    def names(self) -> List[str]:
        return [g.name for g in self.space.generators]


@dataclass(frozen=True)
class ManifoldData:
    """
    Homology of a closed manifold, negatively graded, with its Poincare pairing
    (degree n: pairs degree -i with degree -(n-i)).
    """
    n: int
    homology: PairedSpace
    parallelizable: bool = True

    @classmethod
    def build(cls, n: int, generators: Sequence[Tuple[str, int]], pairing, parallelizable: bool = True) -> "ManifoldData":
        if n < 1:
            raise PairingError(f"Manifold dimension must be at least 1, got {n}")
        space = GradedSpace.of(generators)
        for g in space.generators:
            if not -n <= g.degree <= 0:
                raise PairingError(f"Homology generator {g.name} has degree {g.degree} outside [-{n}, 0]")
        betti = Counter(-g.degree for g in space.generators)
        for i in range(n + 1):
            if betti.get(i, 0) != betti.get(n - i, 0):
                raise PairingError("Betti numbers violate b_i = b_(n-i)", details=f"b_{i}={betti.get(i, 0)}, b_{n - i}={betti.get(n - i, 0)}")
        return cls(n, PairedSpace(space, pairing, n), parallelizable)

    @classmethod
    def sphere(cls, n: int) -> "ManifoldData":
        return cls.build(n, [("h0", 0), (f"h{n}", -n)], [[0, 1], [1, 0]])

    @property
    def betti(self) -> dict:
        counts = Counter(-g.degree for g in self.homology.space.generators)
        return {i: counts.get(i, 0) for i in range(self.n + 1)}
