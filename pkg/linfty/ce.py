# linfty/ce.py

from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Optional, Tuple

from algebra.graded import AlgebraElement, Generator, GradedSpace, Monomial
from algebra.symmetric import Basis, symmetric_basis
from linalg.complex import ChainComplex, HomologyDims, SquareZeroWitness, homology_dims, verify_square_zero
from linalg.sparse import SparseMatrix
from linfty.structure import LInftyStructure
from utils.exceptions import GuardRailError, InputValidationError
from utils.logger import get_logger

logger = get_logger(__name__)


def shifted_space(g: LInftyStructure) -> GradedSpace:
    """The letters s x of degree |x| - 1 on which the CE complex is free."""
    return GradedSpace(tuple(Generator(f"s{x.name}", x.degree - 1) for x in g.space.generators))


def _decalage_sign(g: LInftyStructure, inputs: Tuple[int, ...]) -> int:
    i = len(inputs)
    exponent = sum((i - j) * g.space[x].degree for j, x in enumerate(inputs, start=1))
    return -1 if exponent % 2 else 1


class CEComplex:
    """
    The Chevalley-Eilenberg complex of an L-infinity structure on words of
    length <= cutoff in the free graded-commutative algebra on the letters s x.

    d_tot(a_1 ... a_m) sums over nonempty position subsets I the Koszul sign
    of moving a_I to the front, times m_|I|(a_I) * a_J. A Lie algebra in
    degree 0 puts words of length k in degree -k.
    """

    def __init__(self, g: LInftyStructure, cutoff: int, *, verify: bool = True, max_basis: Optional[int] = None):
        if cutoff < 1:
            raise InputValidationError(f"Word-length cutoff must be at least 1, got {cutoff}")
        self.structure = g
        self.cutoff = cutoff
        self.letters = shifted_space(g)
        self.basis: Basis = symmetric_basis(self.letters, cutoff=cutoff)
        size = sum(len(v) for v in self.basis.values())
        if max_basis is not None and size > max_basis:
            raise GuardRailError(f"CE basis has {size} words, limit is {max_basis}")

        differentials = {}
        for d in sorted(self.basis):
            if d + 1 not in self.basis:
                continue
            index = {m: i for i, m in enumerate(self.basis[d + 1])}
            entries = {}
            for j, m in enumerate(self.basis[d]):
                for target, c in self.image(m).terms.items():
                    entries[(index[target], j)] = c
            differentials[d] = SparseMatrix(len(self.basis[d + 1]), len(self.basis[d]), entries)
        spaces = {d: [m.label(self.letters) for m in words] for d, words in self.basis.items()}
        self.complex = ChainComplex(spaces, differentials, verify=verify)
        logger.debug(f"CE complex with {size} words up to length {cutoff}")

    def _operation(self, inputs: Tuple[int, ...]) -> Dict[int, Fraction]:
        """m_k on sorted shifted letters, as a combination of shifted letters."""
        g = self.structure
        if len(inputs) == 1:
            return g.d(inputs[0])
        sign = _decalage_sign(g, inputs)
        return {k: sign * v for k, v in g.bracket(inputs).items()}

    def image(self, word: Monomial, arity: Optional[int] = None) -> AlgebraElement:
        """d_tot of a basis word; with `arity` only the part through m_arity."""
        letters = [i for i, e in enumerate(word.exponents) for _ in range(e)]
        degrees = [self.letters[i].degree for i in letters]
        sizes = [arity] if arity is not None else range(1, min(len(letters), self.structure.max_arity) + 1)
        terms: Dict[Monomial, Fraction] = {}
        for size in sizes:
            if size > len(letters):
                continue
            for chosen in combinations(range(len(letters)), size):
                chosen_set = set(chosen)
                rest = [p for p in range(len(letters)) if p not in chosen_set]
                crossings = sum(degrees[q] * degrees[p] for p in chosen for q in rest if q < p)
                koszul = -1 if crossings % 2 else 1
                output = self._operation(tuple(letters[p] for p in chosen))
                for k, c in output.items():
                    sign, m = Monomial.from_word(self.letters, [k] + [letters[q] for q in rest])
                    if m is None:
                        continue
                    terms[m] = terms.get(m, Fraction(0)) + koszul * sign * c
        return AlgebraElement(self.letters, terms)

    @property
    def truncated_degrees(self) -> FrozenSet[int]:
        """Degrees holding words of length >= cutoff - max_arity + 1, unless every word exists."""
        g = self.structure
        if all(x.odd for x in self.letters.generators) and self.cutoff >= len(self.letters):
            return frozenset()
        threshold = self.cutoff - g.max_arity + 1
        return frozenset(d for d, words in self.basis.items() if any(m.length >= threshold for m in words))

    def homology(self) -> HomologyDims:
        dims = homology_dims(self.complex)
        return HomologyDims(dims.dims, self.truncated_degrees)


def ce_complex(g: LInftyStructure, cutoff: int, max_basis: Optional[int] = None) -> CEComplex:
    return CEComplex(g, cutoff, max_basis=max_basis)


def check_linfty(g: LInftyStructure, cutoff: int) -> Optional[SquareZeroWitness]:
    """None when d_tot squares to zero on words of length <= cutoff, else a witness word."""
    ce = CEComplex(g, cutoff, verify=False)
    return verify_square_zero(ce.complex)
