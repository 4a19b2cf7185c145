# schemas/files.py

import hashlib
from pathlib import Path
from typing import Annotated, Dict, List, Tuple, Type, TypeVar, Union

from pydantic import AfterValidator, BaseModel, ConfigDict, Field, StrictInt, StrictStr, ValidationError

from algebra.graded import GradedSpace
from curvature.paired import ManifoldData, PairedSpace
from hochschild.associative import AssociativeAlgebra
from linfty.structure import LInftyStructure, from_dgla
from utils.exceptions import InputValidationError
from utils.logger import get_logger
from utils.rationals import parse_rational

logger = get_logger(__name__)


def _check_rational(value):
    parse_rational(value)
    return value


# Kept as written so files re-serialize byte for byte; parsed on conversion.
Rational = Annotated[Union[StrictInt, StrictStr], AfterValidator(_check_rational)]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


# --- Associative algebras ---

class AlgebraFile(StrictModel):
    name: str = "A"
    basis: List[str] = Field(min_length=1)
    unit: List[Rational]
    structure: List[Tuple[StrictInt, StrictInt, StrictInt, Rational]]

    def to_algebra(self) -> AssociativeAlgebra:
        n = len(self.basis)
        if len(self.unit) != n:
            raise InputValidationError("Unit must have one coordinate per basis element", details=f"{len(self.unit)} vs {n}")
        structure: Dict[Tuple[int, int], Dict[int, object]] = {}
        for i, j, k, value in self.structure:
            if not all(0 <= x < n for x in (i, j, k)):
                raise InputValidationError("Structure constant index out of range", details=str((i, j, k)))
            image = structure.setdefault((i, j), {})
            if k in image:
                raise InputValidationError("Structure constant given twice", details=str((i, j, k)))
            image[k] = parse_rational(value)
        unit = {i: parse_rational(v) for i, v in enumerate(self.unit)}
        return AssociativeAlgebra(self.basis, unit, structure)


# --- Graded spaces with pairings ---

class DegreeBlock(StrictModel):
    degree: StrictInt
    multiplicity: StrictInt = Field(default=1, ge=1)


def _expand(prefix: str, blocks: List[DegreeBlock]) -> List[Tuple[str, int]]:
    generators = []
    for block in blocks:
        for copy in range(block.multiplicity):
            # homology is negatively graded and named by |degree|
            base = f"{prefix}{abs(block.degree) if prefix == 'h' else block.degree}"
            generators.append((base if block.multiplicity == 1 else f"{base}_{copy + 1}", block.degree))
    return generators


def _matrix(rows: List[List[Rational]], n: int, what: str):
    if len(rows) != n or any(len(row) != n for row in rows):
        raise InputValidationError(f"{what} must be a {n}x{n} matrix")
    return [[parse_rational(x) for x in row] for row in rows]


class ManifoldFile(StrictModel):
    n: StrictInt = Field(ge=1)
    homology: List[DegreeBlock] = Field(min_length=1)
    pairing: List[List[Rational]]
    parallelizable: bool = True

    def to_manifold(self) -> ManifoldData:
        generators = _expand("h", self.homology)
        pairing = _matrix(self.pairing, len(generators), "Poincare pairing")
        return ManifoldData.build(self.n, generators, pairing, self.parallelizable)


class PairedSpaceFile(StrictModel):
    generators: List[DegreeBlock] = Field(min_length=1)
    degree: StrictInt
    q: List[List[Rational]]
    symmetry: StrictInt = 1

    def to_paired_space(self) -> PairedSpace:
        generators = _expand("v", self.generators)
        q = _matrix(self.q, len(generators), "q")
        return PairedSpace(GradedSpace.of(generators), q, self.degree, self.symmetry)


# --- L-infinity / Lie structures ---

class GeneratorEntry(StrictModel):
    name: str
    degree: StrictInt


class DifferentialEntry(StrictModel):
    source: str
    target: Dict[str, Rational]


class BracketEntry(StrictModel):
    inputs: List[str] = Field(min_length=2)
    output: Dict[str, Rational]


class LInftyFile(StrictModel):
    generators: List[GeneratorEntry] = Field(min_length=1)
    differential: List[DifferentialEntry] = Field(default_factory=list)
    brackets: List[BracketEntry] = Field(default_factory=list)

    def to_structure(self) -> LInftyStructure:
        space = GradedSpace.of((g.name, g.degree) for g in self.generators)
        d = {
            space.index(entry.source): {space.index(k): parse_rational(v) for k, v in entry.target.items()}
            for entry in self.differential
        }
        tables: Dict[int, Dict[Tuple[int, ...], Dict[int, object]]] = {}
        for entry in self.brackets:
            inputs = tuple(space.index(name) for name in entry.inputs)
            tables.setdefault(len(inputs), {})[inputs] = {space.index(k): parse_rational(v) for k, v in entry.output.items()}
        if set(tables) <= {2}:
            return from_dgla(space, d, tables.get(2, {}))
        return LInftyStructure(space, d, tables)


# --- loading ---

Model = TypeVar("Model", bound=BaseModel)


def file_digest(path: Union[str, Path]) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def load_model(model: Type[Model], path: Union[str, Path]) -> Model:
    """Reads and validates a JSON input file, raising InputValidationError with the pydantic report."""
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputValidationError(f"Cannot read input file {path}", original_exception=e)
    try:
        return model.model_validate_json(raw)
    except ValidationError as e:
        logger.error(f"Invalid input file {path}: {e.error_count()} error(s)")
        raise InputValidationError(f"Invalid input file {path}", details=str(e))
    except ValueError as e:
        raise InputValidationError(f"Invalid input file {path}", original_exception=e)
