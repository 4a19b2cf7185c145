# linalg/complex.py

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence

from linalg.sparse import Echelon, SparseMatrix, Vector, nullspace, rank, solve
from utils.exceptions import SquareZeroError
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class SquareZeroWitness:
    """A basis vector whose image under two consecutive differentials is nonzero."""
    degree: int
    basis_index: int
    label: str
    image: Mapping[int, Fraction]

    def __str__(self) -> str:
        terms = ", ".join(f"{i}: {v}" for i, v in sorted(self.image.items()))
        return f"degree {self.degree}, basis vector {self.basis_index} ({self.label}) maps to {{{terms}}}"


@dataclass(frozen=True)
class HomologyDims:
    """Homology dimensions keyed by cohomological degree."""
    dims: Mapping[int, int]
    truncated: FrozenSet[int] = field(default_factory=frozenset)

    def __getitem__(self, degree: int) -> int:
        return self.dims.get(degree, 0)

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def nonzero(self) -> Dict[int, int]:
        return {d: v for d, v in sorted(self.dims.items()) if v}

    def exact(self) -> Dict[int, int]:
        return {d: v for d, v in sorted(self.dims.items()) if d not in self.truncated}

    def negated(self) -> "HomologyDims":
        """Re-indexes by homological degree."""
        return HomologyDims({-d: v for d, v in self.dims.items()}, frozenset(-d for d in self.truncated))


class ChainComplex:
    """
    Finite family of based rational vector spaces with differentials of degree +1.

    differential(d) maps degree d to degree d+1, so its matrix has
    dim(d+1) rows and dim(d) columns.
    """

    def __init__(
        self,
        spaces: Mapping[int, Sequence[str]],
        differentials: Optional[Mapping[int, SparseMatrix]] = None,
        *,
        complete_below: bool = True,
        complete_above: bool = True,
        verify: bool = True,
    ):
        degrees = sorted(spaces)
        if degrees and degrees != list(range(degrees[0], degrees[-1] + 1)):
            raise ValueError(f"Degrees must be contiguous, got {degrees}")
        self._spaces = MappingProxyType({d: tuple(spaces[d]) for d in degrees})
        self.complete_below = complete_below
        self.complete_above = complete_above

        maps = {}
        for d in degrees[:-1]:
            m = (differentials or {}).get(d)
            if m is None:
                m = SparseMatrix.zeros(self.dim(d + 1), self.dim(d))
            if m.shape != (self.dim(d + 1), self.dim(d)):
                raise ValueError(
                    f"Differential in degree {d} has shape {m.shape}, expected {(self.dim(d + 1), self.dim(d))}"
                )
            maps[d] = m
        for d in differentials or {}:
            if d not in maps:
                raise ValueError(f"Differential given in degree {d} outside the stored range")
        self._differentials = MappingProxyType(maps)

        if verify:
            witness = verify_square_zero(self)
            if witness is not None:
                raise SquareZeroError(witness)

    @property
    def degrees(self) -> range:
        if not self._spaces:
            return range(0)
        keys = list(self._spaces)
        return range(keys[0], keys[-1] + 1)

    def dim(self, degree: int) -> int:
        return len(self._spaces.get(degree, ()))

    def basis(self, degree: int) -> tuple:
        return self._spaces.get(degree, ())

    def differential(self, degree: int) -> SparseMatrix:
        m = self._differentials.get(degree)
        if m is None:
            return SparseMatrix.zeros(self.dim(degree + 1), self.dim(degree))
        return m

    @property
    def truncated_degrees(self) -> FrozenSet[int]:
        if not self._spaces:
            return frozenset()
        flagged = set()
        if not self.complete_below:
            flagged.add(self.degrees[0])
        if not self.complete_above:
            flagged.add(self.degrees[-1])
        return frozenset(flagged)

    def shifted(self, by: int) -> "ChainComplex":
        """The same complex with every degree moved by `by`."""
        return ChainComplex(
            {d + by: self.basis(d) for d in self.degrees},
            {d + by: m for d, m in self._differentials.items()},
            complete_below=self.complete_below,
            complete_above=self.complete_above,
            verify=False,
        )

    def permuted(self, degree: int, permutation: Sequence[int]) -> "ChainComplex":
        """Moves basis vector i of `degree` to position permutation[i]."""
        n = self.dim(degree)
        if sorted(permutation) != list(range(n)):
            raise ValueError(f"Not a permutation of {n} elements: {permutation}")
        labels = [None] * n
        for i, label in enumerate(self.basis(degree)):
            labels[permutation[i]] = label
        spaces = {d: (labels if d == degree else self.basis(d)) for d in self.degrees}
        maps = dict(self._differentials)
        if degree in maps:
            maps[degree] = maps[degree].permute(col_perm=permutation)
        if degree - 1 in maps:
            maps[degree - 1] = maps[degree - 1].permute(row_perm=permutation)
        return ChainComplex(
            spaces, maps,
            complete_below=self.complete_below,
            complete_above=self.complete_above,
            verify=False,
        )

    def __repr__(self) -> str:
        dims = {d: self.dim(d) for d in self.degrees}
        return f"ChainComplex(dims={dims})"


def verify_square_zero(c: ChainComplex) -> Optional[SquareZeroWitness]:
    """Returns None when every composite differential vanishes, else the first witness."""
    for d in c.degrees:
        if d + 2 > c.degrees[-1]:
            break
        square = c.differential(d + 1) @ c.differential(d)
        if square.is_zero():
            continue
        j = min(col for (_, col) in square.entries)
        witness = SquareZeroWitness(d, j, c.basis(d)[j], square.column(j))
        logger.warning(f"Differential does not square to zero: {witness}")
        return witness
    return None


def differential_ranks(c: ChainComplex) -> Dict[int, int]:
    return {d: rank(c.differential(d)) for d in c.degrees}


def homology_from_ranks(c: ChainComplex, ranks: Mapping[int, int]) -> HomologyDims:
    dims = {}
    for d in c.degrees:
        dims[d] = c.dim(d) - ranks.get(d, 0) - ranks.get(d - 1, 0)
    return HomologyDims(dims, c.truncated_degrees)


def homology_dims(c: ChainComplex) -> HomologyDims:
    """dim ker(differential(d)) - rank(differential(d-1)) for every stored degree."""
    witness = verify_square_zero(c)
    if witness is not None:
        raise SquareZeroError(witness)
    return homology_from_ranks(c, differential_ranks(c))


@dataclass(frozen=True)
class InducedMap:
    matrix: SparseMatrix
    rank: int
    source_dim: int
    target_dim: int


def homology_representatives(outgoing: SparseMatrix, incoming: SparseMatrix) -> List[Vector]:
    """Cycles of `outgoing` completing the boundaries of `incoming` to a basis of ker."""
    echelon = Echelon()
    for column in incoming.columns():
        echelon.add(column)
    reps = []
    for z in nullspace(outgoing):
        if echelon.add(z):
            reps.append(z)
    return reps


def induced_map_on_homology(
    f: SparseMatrix,
    source_out: SparseMatrix,
    source_in: SparseMatrix,
    target_out: SparseMatrix,
    target_in: SparseMatrix,
) -> InducedMap:
    """
    Matrix and rank of the map induced on homology by a chain map component f.

    source_out/source_in are the differentials leaving/entering the source
    space, target_out/target_in the same for the target space.
    """
    source_reps = homology_representatives(source_out, source_in)
    target_reps = homology_representatives(target_out, target_in)
    boundaries = target_in.columns()
    columns = []
    for z in source_reps:
        image = f.apply(z)
        coords = solve(boundaries + target_reps, image, f.rows)
        if coords is None:
            raise ValueError("Image of a cycle is not a cycle; the map is not a chain map")
        tail = coords[len(boundaries):]
        columns.append({i: v for i, v in enumerate(tail) if v})
    matrix = SparseMatrix.from_columns(len(target_reps), columns)
    return InducedMap(matrix, rank(matrix), len(source_reps), len(target_reps))
