# linfty/structure.py

from fractions import Fraction
from itertools import product
from typing import Dict, Mapping, Optional, Sequence, Tuple

from algebra.graded import GradedSpace
from utils.exceptions import JacobiError
from utils.logger import get_logger

logger = get_logger(__name__)

Vector = Dict[int, Fraction]


def _clean(vector: Mapping[int, Fraction]) -> Vector:
    return {k: Fraction(v) for k, v in vector.items() if v}


def _add_into(target: Vector, vector: Mapping[int, Fraction], factor=1):
    for k, v in vector.items():
        value = target.get(k, Fraction(0)) + factor * v
        if value:
            target[k] = value
        else:
            target.pop(k, None)


class LInftyStructure:
    """
    Finite cohomologically graded space with a differential d of degree +1
    and graded-antisymmetric brackets l_i of degree 2 - i.

    Brackets are stored on nondecreasing index tuples only; other orderings
    follow from l(.., x, y, ..) = -(-1)^{|x||y|} l(.., y, x, ..).
    """

    def __init__(
        self,
        space: GradedSpace,
        differential: Optional[Mapping[int, Mapping[int, Fraction]]] = None,
        brackets: Optional[Mapping[int, Mapping[Sequence[int], Mapping[int, Fraction]]]] = None,
    ):
        self.space = space
        self.differential: Dict[int, Vector] = {}
        for i, image in (differential or {}).items():
            image = _clean(image)
            for k in image:
                if space[k].degree != space[i].degree + 1:
                    raise JacobiError("Differential must have degree +1", witness=(space[i].name,))
            if image:
                self.differential[i] = image

        self.brackets: Dict[int, Dict[Tuple[int, ...], Vector]] = {}
        for arity, table in (brackets or {}).items():
            if arity < 2:
                raise JacobiError(f"Bracket arity must be at least 2, got {arity}")
            stored: Dict[Tuple[int, ...], Vector] = {}
            seen: Dict[Tuple[int, ...], Tuple[Tuple[int, ...], Vector]] = {}
            for inputs, image in table.items():
                inputs = tuple(inputs)
                if len(inputs) != arity:
                    raise JacobiError(f"l_{arity} needs {arity} inputs", witness=self.names(inputs))
                sign, key = self.sort_inputs(inputs)
                value = {k: sign * v for k, v in _clean(image).items()}
                expected = sum(space[x].degree for x in inputs) + 2 - arity
                for k in value:
                    if space[k].degree != expected:
                        raise JacobiError(f"l_{arity} must have degree {2 - arity}", witness=self.names(inputs))
                if sign == 0 and value:
                    raise JacobiError("Bracket is not graded antisymmetric", witness=self.names(inputs))
                if key in seen and seen[key][1] != value:
                    raise JacobiError("Bracket is not graded antisymmetric", witness=self.names(inputs))
                seen[key] = (inputs, value)
                if value:
                    stored[key] = value
            if stored:
                self.brackets[arity] = stored

        d_squared = self._first_nonzero_d_squared()
        if d_squared is not None:
            raise JacobiError("Differential does not square to zero", witness=(self.space[d_squared].name,))

    def names(self, indices: Sequence[int]) -> Tuple[str, ...]:
        return tuple(self.space[i].name for i in indices)

    @property
    def max_arity(self) -> int:
        """Largest i with l_i nonzero (1 when only d is present)."""
        return max(self.brackets, default=1)

    def sort_inputs(self, inputs: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
        """Sign and sorted key; sign 0 when graded antisymmetry forces the value to vanish."""
        letters = list(inputs)
        sign = 1
        for i in range(len(letters)):
            for j in range(len(letters) - 1 - i):
                a, b = letters[j], letters[j + 1]
                if a > b:
                    letters[j], letters[j + 1] = b, a
                    if (self.space[a].degree * self.space[b].degree) % 2 == 0:
                        sign = -sign
        for a, b in zip(letters, letters[1:]):
            if a == b and self.space[a].degree % 2 == 0:
                return 0, tuple(letters)
        return sign, tuple(letters)

    def d(self, i: int) -> Vector:
        return dict(self.differential.get(i, {}))

    def bracket(self, inputs: Sequence[int]) -> Vector:
        """l_i on any ordering of basis inputs."""
        sign, key = self.sort_inputs(inputs)
        if sign == 0:
            return {}
        value = self.brackets.get(len(key), {}).get(key, {})
        return {k: sign * v for k, v in value.items()}

    def apply_d(self, vector: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for i, c in vector.items():
            _add_into(out, self.differential.get(i, {}), c)
        return out

    def apply_bracket(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                _add_into(out, self.bracket((i, j)), a * b)
        return out

    def _first_nonzero_d_squared(self) -> Optional[int]:
        for i in range(len(self.space)):
            if self.apply_d(self.d(i)):
                return i
        return None

    @property
    def is_abelian(self) -> bool:
        return not self.brackets


def from_dgla(
    space: GradedSpace,
    d: Optional[Mapping[int, Mapping[int, Fraction]]],
    bracket: Mapping[Tuple[int, int], Mapping[int, Fraction]],
) -> LInftyStructure:
    """
    A DG Lie algebra as an L-infinity structure with l_2 = bracket.

    Checks graded antisymmetry, the graded Jacobi identity
    (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0
    and the Leibniz rule d[x,y] = [dx,y] + (-1)^{|x|}[x,dy].
    """
    g = LInftyStructure(space, d, {2: bracket} if bracket else None)
    deg = [gen.degree for gen in space.generators]
    n = len(space)

    def unit(i: int) -> Vector:
        return {i: Fraction(1)}

    for x, y, z in product(range(n), repeat=3):
        total: Vector = {}
        for a, b, c, exponent in (
            (x, y, z, deg[x] * deg[z]),
            (y, z, x, deg[y] * deg[x]),
            (z, x, y, deg[z] * deg[y]),
        ):
            inner = g.bracket((b, c))
            _add_into(total, g.apply_bracket(unit(a), inner), (-1) ** (exponent % 2))
        if total:
            logger.warning(f"Jacobi identity fails on {g.names((x, y, z))}")
            raise JacobiError("Graded Jacobi identity fails", witness=g.names((x, y, z)))

    for x, y in product(range(n), repeat=2):
        left = g.apply_d(g.bracket((x, y)))
        right: Vector = {}
        _add_into(right, g.apply_bracket(g.d(x), unit(y)))
        _add_into(right, g.apply_bracket(unit(x), g.d(y)), (-1) ** (deg[x] % 2))
        _add_into(left, right, -1)
        if left:
            raise JacobiError("Leibniz rule fails", witness=g.names((x, y)))
    return g


def from_associative(algebra) -> LInftyStructure:
    """The commutator Lie algebra of an associative algebra, concentrated in degree 0."""
    space = GradedSpace.of((name, 0) for name in algebra.names)
    table: Dict[Tuple[int, int], Vector] = {}
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            value: Vector = {}
            _add_into(value, algebra.product_of(i, j))
            _add_into(value, algebra.product_of(j, i), -1)
            if value:
                table[(i, j)] = value
    return LInftyStructure(space, None, {2: table} if table else None)
